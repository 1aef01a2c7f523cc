// folia: command-line driver for the verification engine.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "folia/decomp.hpp"
#include "folia/extalg.hpp"
#include "folia/io.hpp"
#include "folia/pencil.hpp"
#include "folia/pforms.hpp"
#include "folia/properties.hpp"
#include "folia/verify.hpp"

namespace {

using folia::Json;

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  bool timing = false;
  std::string tier;
  int threads = 0;
  std::uint64_t seed = 1;
  std::string registry = FOLIA_REGISTRY_PATH;
  std::string output;
};

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw std::runtime_error("cannot write " + g.output);
  out << text;
}

void emit_json(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated integer list, got '" + s + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::vector<folia::Rational> parse_rational_list(const std::string& s) {
  std::vector<folia::Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(folia::rational_from_string(item));
    } catch (const std::exception&) {
      throw UsageError("bad rational '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty value list");
  return out;
}

std::string sweep_text(const Json& c) {
  if (!c.contains("sweep")) return "-";
  std::string out;
  for (const auto& [k, vals] : c.at("sweep").items()) {
    auto v = vals.get<std::vector<std::int64_t>>();
    std::string part = k + "=";
    bool contiguous = v.size() > 2;
    for (std::size_t i = 1; i < v.size(); ++i) contiguous = contiguous && v[i] == v[i - 1] + 1;
    if (contiguous) {
      part += std::to_string(v.front()) + ".." + std::to_string(v.back());
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) part += (i ? "," : "") + std::to_string(v[i]);
    }
    out += (out.empty() ? "" : " ") + part;
  }
  return out;
}

const char* kPropertiesId = "properties";

bool properties_in_tier(const std::string& tier) { return tier == "fast" || tier == "all"; }

// ---- list -----------------------------------------------------------------

int cmd_list(const Globals& g, const std::string& filter) {
  auto reg = folia::Registry::load(g.registry);
  std::string tier = g.tier.empty() ? "all" : g.tier;
  auto cases = reg.filter(filter, tier);
  bool props = properties_in_tier(tier) && std::string(kPropertiesId).find(filter) != std::string::npos;
  if (g.json) {
    Json arr = Json::array();
    for (const auto* c : cases) {
      Json e;
      e["id"] = c->at("id");
      e["anchor"] = c->at("anchor");
      e["group"] = c->value("group", "");
      e["tier"] = c->at("tier");
      e["params"] = c->contains("sweep") ? c->at("sweep") : Json::object();
      arr.push_back(std::move(e));
    }
    if (props) arr.push_back({{"id", kPropertiesId}, {"anchor", "property suite"}, {"group", "properties"},
                              {"tier", "fast"}, {"params", Json::object()}});
    emit_json(g, arr);
    return kPass;
  }
  std::size_t wid = props ? std::string(kPropertiesId).size() : 2, wan = props ? 14 : 6;
  for (const auto* c : cases) {
    wid = std::max(wid, c->at("id").get<std::string>().size());
    wan = std::max(wan, c->at("anchor").get<std::string>().size());
  }
  std::ostringstream os;
  auto row = [&](const std::string& id, const std::string& anchor, const std::string& tier_s, const std::string& params) {
    os << id << std::string(wid + 2 - id.size(), ' ') << anchor << std::string(wan + 2 - anchor.size(), ' ') << tier_s
       << std::string(6 - std::min<std::size_t>(tier_s.size(), 5), ' ') << params << "\n";
  };
  row("id", "anchor", "tier", "params");
  for (const auto* c : cases) row(c->at("id"), c->at("anchor"), c->at("tier"), sweep_text(*c));
  if (props) row(kPropertiesId, "property suite", "fast", "seed");
  emit(g, os.str());
  return kPass;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& target, const std::vector<std::string>& params) {
  auto reg = folia::Registry::load(g.registry);
  folia::RunOptions opt;
  opt.seed = g.seed;
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter must be key=value, got '" + p + "'");
    try {
      opt.overrides[p.substr(0, eq)] = std::stoll(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("parameter value must be an integer, got '" + p + "'");
    }
  }

  std::vector<const Json*> cases;
  bool props = false;
  std::string tier = g.tier.empty() ? "fast" : g.tier;
  if (tier != "fast" && tier != "slow" && tier != "all") throw UsageError("tier must be fast, slow or all");
  if (target == kPropertiesId) {
    props = true;
  } else if (const Json* c = reg.find(target)) {
    for (const auto& [k, v] : opt.overrides) {
      if (!c->contains("sweep") || !c->at("sweep").contains(k)) {
        throw UsageError("case " + target + " has no parameter '" + k + "'");
      }
    }
    cases.push_back(c);
  } else if (target == "all") {
    cases = reg.filter("", tier);
    props = properties_in_tier(tier);
  } else {
    for (const auto* c : reg.filter("", tier)) {
      if (c->value("group", "") == target) cases.push_back(c);
    }
    if (cases.empty()) throw UsageError("unknown case id or group '" + target + "'");
  }

  int threads = g.threads > 0 ? g.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<folia::Report> reports = folia::verify_cases(cases, opt, threads);
  if (props) {
    folia::PropertyOptions po;
    po.seed = g.seed;
    reports.push_back(folia::run_properties(po));
    std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  }
  bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass(); });
  if (g.json) {
    emit_json(g, folia::reports_json(reports, g.timing));
  } else {
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& r : reports) {
      os << r.text(g.timing);
      passed += r.pass();
    }
    os << passed << " of " << reports.size() << " cases passed\n";
    emit(g, os.str());
  }
  return ok ? kPass : kMismatch;
}

// ---- decompose ------------------------------------------------------------

struct DecomposeArgs {
  std::string rs, weight;
  std::vector<std::string> functors;
  int node = 0;
  int forms = 1;
  int twist = 2;
};

int cmd_decompose(const Globals& g, const DecomposeArgs& a) {
  folia::RootSystem rs = [&] {
    try {
      return folia::RootSystem::parse(a.rs);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  Json out;
  std::ostringstream os;
  if (!a.weight.empty()) {
    auto lam = folia::parse_weight_expr(a.weight, rs.rank());
    if (!lam) throw UsageError("weight '" + a.weight + "' is empty or out of range for " + rs.name());
    if (!folia::is_dominant(*lam)) throw UsageError("weight '" + a.weight + "' is not dominant");
    folia::Module mod = folia::build_module(rs, *lam, a.functors);
    folia::IrrDecomposition dec = folia::decompose_character(mod.ch);
    std::int64_t dim = folia::dimension(rs, dec);
    out = folia::decomposition_json(rs, dec);
    out["module"] = mod.label;
    out["dimension"] = dim;
    out["summands"] = dec.size();
    os << mod.label << " on " << rs.name() << " = " << dec.str() << "\n";
    os << "dimension " << dim << ", " << dec.size() << " distinct summands\n";
  }
  if (a.node > 0) {
    folia::require_node(rs, a.node - 1);
    folia::Weight mu = folia::cotangent_weight(rs, a.node - 1);
    folia::IrrDecomposition h0 = folia::levi_bundle_sections(rs, a.node - 1, mu, a.forms, a.twist);
    std::string what = "H^0(Omega^" + std::to_string(a.forms) + "(" + std::to_string(a.twist) + "))";
    Json s = folia::decomposition_json(rs, h0);
    s["node"] = a.node;
    s["forms"] = a.forms;
    s["twist"] = a.twist;
    s["label"] = what;
    out["sections"] = std::move(s);
    os << what << " on " << rs.name() << "/P" << a.node << " = " << h0.str() << "\n";
  }
  if (g.json) emit_json(g, out);
  else emit(g, os.str());
  return kPass;
}

// ---- forms ----------------------------------------------------------------

folia::PolyForm load_form(const std::string& path) {
  try {
    return folia::form_from_json(folia::read_json_file(path));
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot read form: ") + e.what());
  }
}

int cmd_forms_integrable(const Globals& g, const std::string& input) {
  folia::PolyForm w = load_form(input);
  if (w.p() < 1) throw UsageError("integrability needs a form of degree p >= 1");
  bool radial = folia::contract_radial(w).is_zero();
  bool integrable = folia::is_integrable(w);
  bool lds = folia::is_lds(w);
  if (g.json) {
    Json j;
    j["form"] = folia::form_json(w);
    j["radial"] = radial;
    j["integrable"] = integrable;
    j["lds"] = lds;
    emit_json(g, j);
  } else {
    std::ostringstream os;
    os << "form: " << w.str() << "\n";
    os << "radial contraction vanishes: " << (radial ? "yes" : "no") << "\n";
    os << "integrable: " << (integrable ? "yes" : "no") << "\n";
    os << "locally decomposable: " << (lds ? "yes" : "no") << "\n";
    emit(g, os.str());
  }
  return integrable ? kPass : kMismatch;
}

int cmd_forms_psi(const Globals& g, const std::string& input) {
  folia::PolyForm w = load_form(input);
  folia::PolyForm psi = [&] {
    try {
      return folia::psi_wedge_d(w);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (g.json) {
    Json j;
    j["form"] = folia::form_json(w);
    j["psi"] = folia::form_json(psi);
    j["integrable"] = psi.is_zero();
    emit_json(g, j);
  } else {
    emit(g, "omega ^ d omega = " + (psi.is_zero() ? std::string("0") : psi.str()) + "\n");
  }
  return kPass;
}

// ---- pencil ---------------------------------------------------------------

int cmd_pencil_verify(const Globals& g, const std::string& partition, const std::string& values) {
  std::vector<int> part = parse_int_list(partition);
  std::vector<folia::Rational> vals = parse_rational_list(values);
  if (vals.size() != part.size()) throw UsageError("need one value per block of the partition");
  for (int p : part) {
    if (p < 1) throw UsageError("partition parts must be positive");
  }
  if (!std::is_sorted(part.rbegin(), part.rend())) throw UsageError("partition parts must be non-increasing");
  folia::Lemma56Report rep = folia::verify_lemma56(part, vals);
  if (g.json) {
    Json j;
    j["partition"] = rep.partition;
    Json v = Json::array();
    for (const auto& x : rep.values) v.push_back(x.get_str());
    j["values"] = v;
    j["n"] = rep.n;
    j["verdict"] = rep.divides ? "divides" : "obstructed";
    j["divides"] = rep.divides;
    j["solvable"] = rep.solvable;
    j["predicted"] = rep.predicted;
    j["consistent"] = rep.ok;
    if (rep.a) {
      j["a"] = rep.a->get_str();
      j["y"] = folia::ext_str(rep.y);
    }
    if (!rep.witness.empty()) {
      j["witness"] = folia::ext_str(rep.witness);
      j["witness_value"] = rep.witness_value.get_str();
    }
    j["elementary_divisors"] = rep.elementary_divisors;
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    emit_json(g, j);
  } else {
    std::ostringstream os;
    os << "n = " << rep.n << ": w " << (rep.divides ? "divides" : "does not divide") << " v^v";
    os << " (direct solvability: " << (rep.solvable ? "yes" : "no") << ")\n";
    if (rep.a) os << "a = " << rep.a->get_str() << ", y = " << folia::ext_str(rep.y) << "\n";
    if (!rep.witness.empty()) os << "witness phi = " << folia::ext_str(rep.witness) << ", phi^v^v = " << rep.witness_value.get_str() << "\n";
    os << "structure lemma predicts " << (rep.predicted ? "division" : "obstruction") << ": "
       << (rep.ok ? "consistent" : "INCONSISTENT") << "\n";
    if (!rep.detail.empty()) os << rep.detail << "\n";
    emit(g, os.str());
  }
  return rep.ok ? kPass : kMismatch;
}

// ---- extalg ---------------------------------------------------------------

struct ExtalgArgs {
  std::string tag, with, input, big, first, second;
  int n = 0;
};

folia::MultiVector ext_operand(const ExtalgArgs& a) {
  try {
    if (!a.input.empty()) {
      if (a.n < 1) throw UsageError("--n is required with --input");
      return folia::multivector_from_json(folia::read_json_file(a.input), a.n);
    }
    if (a.tag.empty()) throw UsageError("give --tag or --input");
    const auto& t = folia::hw_tag(a.tag);
    int n = a.n > 0 ? a.n : t.min_n;
    folia::MultiVector x = folia::build_hw_vector(a.tag, n);
    if (!a.with.empty()) x = folia::wedge(x, folia::build_hw_vector(a.with, n));
    return x;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

int cmd_extalg_show(const Globals& g, const ExtalgArgs& a) {
  folia::MultiVector x = ext_operand(a);
  Json j;
  j["n"] = x.n();
  j["inner_degree"] = x.inner_degree();
  j["outer_degree"] = x.outer_degree();
  j["terms"] = x.size();
  bool weight_vector = true;
  std::vector<int> wt;
  try {
    wt = folia::sl_weight(x);
  } catch (const std::invalid_argument&) {
    weight_vector = false;
  }
  if (weight_vector) j["weight"] = wt;
  j["highest_weight"] = !x.is_zero() && folia::is_highest_weight(x);
  if (x.outer_degree() == 2) j["skew_rank"] = folia::skew_rank(x);
  j["vector"] = folia::multivector_json(x);
  if (g.json) {
    emit_json(g, j);
    return kPass;
  }
  std::ostringstream os;
  os << x.size() << " terms in wedge^" << x.outer_degree() << "(wedge^" << x.inner_degree() << " C^" << x.n() << ")\n";
  if (weight_vector) {
    os << "weight:";
    for (int c : wt) os << " " << c;
    os << "\n";
  }
  os << "highest weight vector: " << (j["highest_weight"].get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("skew_rank")) os << "skew rank: " << j["skew_rank"].get<std::size_t>() << "\n";
  emit(g, os.str());
  return kPass;
}

int cmd_extalg_xi(const Globals& g, const ExtalgArgs& a) {
  folia::MultiVector x = ext_operand(a);
  if (x.outer_degree() != 4) throw UsageError("xi o Psi needs an element of wedge^4 W (use --tag A --with B for a product)");
  if (2 * x.inner_degree() > x.n()) throw UsageError("target degree exceeds n");
  folia::MixedTensor t = folia::xi(folia::psi_dual(x));
  Json j;
  j["terms"] = t.size();
  std::optional<folia::Rational> coeff;
  if (!a.big.empty() || !a.first.empty() || !a.second.empty()) {
    if (a.big.empty() || a.first.empty() || a.second.empty()) throw UsageError("--big, --first and --second go together");
    try {
      coeff = t.coefficient(parse_int_list(a.big), parse_int_list(a.first), parse_int_list(a.second));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    j["coefficient"] = coeff->get_str();
  }
  if (g.json) {
    emit_json(g, j);
  } else {
    std::ostringstream os;
    os << "xi(Psi(x)) has " << t.size() << " terms\n";
    if (coeff) os << "coefficient at e_" << a.big << " (x) e_" << a.first << " ^ e_" << a.second << ": " << coeff->get_str() << "\n";
    emit(g, os.str());
  }
  return kPass;
}

int cmd_extalg_properties(const Globals& g) {
  folia::PropertyOptions po;
  po.seed = g.seed;
  folia::Report r = folia::run_properties(po);
  if (g.json) emit_json(g, r.to_json(g.timing));
  else {
    std::ostringstream os;
    os << r.text(g.timing);
    for (const auto& c : r.runs.front().checks) os << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
    emit(g, os.str());
  }
  return r.pass() ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for decompositions, exterior-algebra coefficients, forms and pencils"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON instead of text");
  app.add_option("--tier", g.tier, "Tier filter: fast, slow or all")->check(CLI::IsMember({"fast", "slow", "all"}));
  app.add_option("--threads", g.threads, "Worker threads (default: hardware concurrency)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized cases (recorded in the report)");
  app.add_flag("--timing", g.timing, "Include wall-clock seconds in reports");
  app.add_option("--registry", g.registry, "Case registry file");
  app.add_option("-o,--output", g.output, "Write the report to a file");

  std::function<int()> action;

  auto* list = app.add_subcommand("list", "List registered cases");
  std::string filter;
  list->add_option("filter", filter, "Substring of id, anchor or group");
  list->callback([&] { action = [&] { return cmd_list(g, filter); }; });

  auto* verify = app.add_subcommand("verify", "Run a case, a group or all cases");
  std::string target;
  std::vector<std::string> params;
  std::int64_t n_override = -1;
  verify->add_option("target", target, "Case id, group name, 'properties' or 'all'")->required();
  verify->add_option("--n", n_override, "Pin the sweep parameter n");
  verify->add_option("--param", params, "Pin any sweep parameter, key=value (repeatable)");
  verify->callback([&] {
    if (n_override >= 0) params.push_back("n=" + std::to_string(n_override));
    action = [&] { return cmd_verify(g, target, params); };
  });

  auto* decompose = app.add_subcommand("decompose", "Decompose a functor of an irreducible module");
  DecomposeArgs da;
  decompose->add_option("--rs", da.rs, "Root system, e.g. A12, D5, A3xA3")->required();
  decompose->add_option("--weight", da.weight, "Highest weight, e.g. l3 or 2l1+l5");
  decompose->add_option("--functor", da.functors, "Steps applied in order: wedgeK or sym2")->delimiter(',');
  decompose->add_option("--node", da.node, "Also compute H^0(Omega^m(t)) on G/P for this 1-based node");
  decompose->add_option("--m", da.forms, "Form degree m for --node (0..4)")->check(CLI::Range(0, 4));
  decompose->add_option("--twist", da.twist, "Twist t for --node");
  decompose->callback([&] {
    if (da.weight.empty() && da.node == 0) throw CLI::ValidationError("decompose", "give --weight, --node or both");
    action = [&] { return cmd_decompose(g, da); };
  });

  auto* forms = app.add_subcommand("forms", "Twisted differential forms on projective space");
  forms->require_subcommand(1);
  std::string form_input;
  auto* integrable = forms->add_subcommand("integrable", "Test omega ^ d omega = 0 (exit 1 if not integrable)");
  integrable->add_option("--input", form_input, "JSON form file")->required()->check(CLI::ExistingFile);
  integrable->callback([&] { action = [&] { return cmd_forms_integrable(g, form_input); }; });
  auto* psi = forms->add_subcommand("psi", "Print omega ^ d omega");
  psi->add_option("--input", form_input, "JSON form file")->required()->check(CLI::ExistingFile);
  psi->callback([&] { action = [&] { return cmd_forms_psi(g, form_input); }; });

  auto* pencil = app.add_subcommand("pencil", "Skew-symmetric pencils");
  pencil->require_subcommand(1);
  std::string partition, values;
  auto* pverify = pencil->add_subcommand("verify", "Divisibility of v^v by w for a canonical pencil");
  pverify->add_option("--partition", partition, "Block sizes, e.g. 2,1,1")->required();
  pverify->add_option("--values", values, "One eigenvalue per block, e.g. 3,3,3")->required();
  pverify->callback([&] { action = [&] { return cmd_pencil_verify(g, partition, values); }; });

  auto* extalg = app.add_subcommand("extalg", "Exterior algebra of wedge^3 C^n");
  extalg->require_subcommand(1);
  ExtalgArgs ea;
  auto operand = [&](CLI::App* sub) {
    sub->add_option("--tag", ea.tag, "Highest-weight vector: w6, w24, w48, w228, w237, w147");
    sub->add_option("--with", ea.with, "Wedge the tagged vector with this one");
    sub->add_option("--input", ea.input, "JSON multivector file instead of a tag")->check(CLI::ExistingFile);
    sub->add_option("--n", ea.n, "Ambient dimension (default: smallest for the tag)");
  };
  auto* show = extalg->add_subcommand("show", "Weight, highest-weight test and skew rank");
  operand(show);
  show->callback([&] { action = [&] { return cmd_extalg_show(g, ea); }; });
  auto* xi = extalg->add_subcommand("xi", "Coefficients of xi o Psi on an element of wedge^4 W");
  operand(xi);
  xi->add_option("--big", ea.big, "Indices of the wedge^6 factor, e.g. 1,2,3,4,5,6");
  xi->add_option("--first", ea.first, "First wedge^3 index triple");
  xi->add_option("--second", ea.second, "Second wedge^3 index triple");
  xi->callback([&] { action = [&] { return cmd_extalg_xi(g, ea); }; });
  auto* props = extalg->add_subcommand("properties", "Randomized identity suite");
  props->callback([&] { action = [&] { return cmd_extalg_properties(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
