#include <gtest/gtest.h>

#include "folia/decomp.hpp"
#include "folia/io.hpp"

using namespace folia;

TEST(Io, DecompositionRoundTrip) {
  RootSystem rs = RootSystem::parse("D5");
  IrrDecomposition d = decompose_character(wedge_power(freudenthal_character(rs, Weight::fundamental(5, 4)), 4));
  Json j = decomposition_json(rs, d);
  EXPECT_EQ(j["rs"], "D5");
  EXPECT_EQ(j["terms"].size(), 2u);
  EXPECT_EQ(decomposition_from_json(Json::parse(j.dump())), d);
}

TEST(Io, MultivectorRoundTrip) {
  MultiVector w = build_hw_vector("w24", 6);
  Json j = multivector_json(w);
  EXPECT_EQ(multivector_from_json(Json::parse(j.dump()), 6), w);
  Json manual = Json::parse(R"([{"outer": [[1,2,3],[1,2,4]], "coeff": "1/2"}, {"outer": [[1,2,4],[1,2,3]], "coeff": 1}])");
  MultiVector x = multivector_from_json(manual, 4);
  EXPECT_EQ(x.coefficient({{1, 2, 3}, {1, 2, 4}}), Rational(-1, 2));
  EXPECT_THROW(multivector_from_json(Json::array(), 4), std::invalid_argument);
}

TEST(Io, FormRoundTripAndBareList) {
  PolyForm w = contact_power_form(3);
  Json j = form_json(w);
  EXPECT_EQ(j["p"], 1);
  EXPECT_EQ(form_from_json(Json::parse(j.dump())), w);
  EXPECT_EQ(form_from_json(j["terms"]), w);
  PolyForm f = form_from_json(read_json_file(FOLIA_DATA_DIR "/pencil_p2.json"));
  EXPECT_EQ(f.n(), 2);
  EXPECT_EQ(f.poly_degree(), 3);
  EXPECT_THROW(form_from_json(Json::parse(R"([{"mono":[1,0],"dx":[0],"coeff":"x"}])")), std::invalid_argument);
}

TEST(Io, RationalsAndErrors) {
  EXPECT_EQ(rational_from_json(Json(3)), 3);
  EXPECT_EQ(rational_from_json(Json("-4/6")), Rational(-2, 3));
  EXPECT_THROW(rational_from_json(Json(1.5)), std::invalid_argument);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), std::runtime_error);
}
