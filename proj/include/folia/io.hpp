#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "folia/charring.hpp"
#include "folia/extalg.hpp"
#include "folia/irrdecomp.hpp"
#include "folia/pforms.hpp"
#include "folia/rootdata.hpp"
#include "folia/scalar.hpp"

namespace folia {

/// Insertion-ordered JSON; every document we emit is built in a fixed order.
using Json = nlohmann::ordered_json;

inline Json weight_json(const Weight& w) {
  Json a = Json::array();
  for (int i = 0; i < w.rank(); ++i) a.push_back(w[i]);
  return a;
}

inline Weight weight_from_json(const Json& j) {
  std::vector<int> c;
  for (const auto& x : j) c.push_back(x.get<int>());
  return Weight(c);
}

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw std::invalid_argument("coefficient must be an integer or a string");
}

inline Json decomposition_json(const RootSystem& rs, const IrrDecomposition& dec) {
  Json terms = Json::array();
  for (const auto& [w, m] : dec.terms) {
    Json t;
    t["weight"] = weight_json(w);
    t["mult"] = m;
    t["label"] = weight_label(w);
    terms.push_back(std::move(t));
  }
  Json out;
  out["rs"] = rs.name();
  out["terms"] = std::move(terms);
  return out;
}

inline IrrDecomposition decomposition_from_json(const Json& j) {
  IrrDecomposition d;
  for (const auto& t : j.at("terms")) d.add(weight_from_json(t.at("weight")), t.at("mult").get<std::int64_t>());
  return d;
}

/// Same layout as a decomposition; the terms are the weights of the character.
inline Json character_json(const FormalCharacter& ch) {
  Json terms = Json::array();
  for (const auto& [w, m] : ch.sorted()) {
    Json t;
    t["weight"] = weight_json(w);
    t["mult"] = m;
    terms.push_back(std::move(t));
  }
  Json out;
  out["rs"] = ch.rs.name();
  out["terms"] = std::move(terms);
  return out;
}

inline Json multivector_json(const MultiVector& x) {
  Json a = Json::array();
  for (const auto& [k, c] : x.sorted()) {
    Json t;
    t["outer"] = x.slots(k);
    t["coeff"] = c.get_str();
    a.push_back(std::move(t));
  }
  return a;
}

/// Reads [{"outer": [[1,2,3],[1,2,4]], "coeff": "1"}, ...] on C^n.
inline MultiVector multivector_from_json(const Json& j, int n) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("multivector must be a nonempty term list");
  const auto& first = j.front().at("outer");
  int k = static_cast<int>(first.size());
  int m = k ? static_cast<int>(first.front().size()) : 1;
  MultiVector x(n, m, k);
  for (const auto& t : j) {
    x.add_term(t.at("outer").get<std::vector<std::vector<int>>>(), rational_from_json(t.at("coeff")));
  }
  return x;
}

inline Json form_json(const PolyForm& w) {
  Json a = Json::array();
  for (const auto& [k, c] : w.terms()) {
    Json t;
    std::vector<int> mono, dx;
    for (int i = 0; i <= w.n(); ++i) {
      mono.push_back(k.exps[static_cast<std::size_t>(i)]);
      if (k.dx >> i & 1u) dx.push_back(i);
    }
    t["mono"] = mono;
    t["dx"] = dx;
    t["coeff"] = c.get_str();
    a.push_back(std::move(t));
  }
  Json out;
  out["n"] = w.n();
  out["p"] = w.p();
  out["degree"] = w.poly_degree();
  out["terms"] = std::move(a);
  return out;
}

/// Accepts either a bare term list or {"n", "p", "degree", "terms"}; the
/// shape is inferred from the first term when absent.
inline PolyForm form_from_json(const Json& j) {
  const Json& terms = j.is_array() ? j : j.at("terms");
  if (!terms.is_array() || terms.empty()) throw std::invalid_argument("form must have at least one term");
  const Json& t0 = terms.front();
  int n = static_cast<int>(t0.at("mono").size()) - 1;
  int p = static_cast<int>(t0.at("dx").size());
  int deg = 0;
  for (const auto& e : t0.at("mono")) deg += e.get<int>();
  if (j.is_object()) {
    n = j.value("n", n);
    p = j.value("p", p);
    deg = j.value("degree", deg);
  }
  PolyForm w(n, p, deg);
  for (const auto& t : terms) {
    w.add(t.at("mono").get<std::vector<int>>(), t.at("dx").get<std::vector<int>>(), rational_from_json(t.at("coeff")));
  }
  return w;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

}  // namespace folia
