// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--report FILE] [--threads N]

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "folia/properties.hpp"
#include "folia/verify.hpp"

using namespace folia;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> ids;
  double per_case_limit;
  double total_limit;
  std::function<void(const std::map<std::string, Report>&, Outcome&)> extra;
};

std::string seconds_text(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(s < 10 ? 2 : 0);
  os << s << " s";
  return os.str();
}

const Check* check_of(const Report& r, const std::string& name) { return r.find_check(name); }

std::string data_of(const Report& r, const std::string& key) {
  for (const auto& run : r.runs) {
    if (run.data.contains(key)) {
      const Json& v = run.data.at(key);
      return v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return "?";
}

Outcome evaluate(const Criterion& c, const std::map<std::string, Report>& reports) {
  Outcome out;
  double total = 0;
  for (const auto& id : c.ids) {
    auto it = reports.find(id);
    if (it == reports.end()) {
      out.require(false, id + " missing from registry");
      continue;
    }
    const Report& r = it->second;
    total += r.seconds;
    if (!r.pass()) {
      auto f = r.failures();
      out.require(false, id + ": " + (f.empty() ? std::string("failed") : f.front()) +
                             (f.size() > 1 ? " (+" + std::to_string(f.size() - 1) + " more)" : ""));
    }
    if (c.per_case_limit > 0) {
      out.require(r.seconds < c.per_case_limit, id + " took " + seconds_text(r.seconds));
    }
  }
  if (c.total_limit > 0) out.require(total < c.total_limit, "total " + seconds_text(total));
  if (c.extra) c.extra(reports, out);
  out.notes.insert(out.notes.begin(), std::to_string(c.ids.size()) + " cases, " + seconds_text(total));
  return out;
}

void appendix_notes(const std::map<std::string, Report>& reports, Outcome& out) {
  const auto& a5 = reports.at("lemma-a5");
  out.notes.push_back("w48 realized " + data_of(a5, "coefficient"));
  for (const char* id : {"lemma-a6", "lemma-a7", "lemma-a8"}) {
    out.notes.push_back(std::string(id) + " |" + data_of(reports.at(id), "absolute") + "|");
  }
}

void subsum_check(const std::map<std::string, Report>& reports, Outcome& out) {
  const auto& r = reports.at("lemma-a3");
  for (const char* name : {"subsum A", "subsum B", "subsum C", "subsum A-B+C"}) {
    const Check* c = check_of(r, name);
    out.require(c && c->pass, std::string(name) + (c ? ": " + c->detail : " missing"));
  }
  out.notes.push_back("A=" + data_of(r, "A") + " B=" + data_of(r, "B") + " C=" + data_of(r, "C"));
}

void skew_rank_check(const std::map<std::string, Report>& reports, Outcome& out) {
  const Check* c = check_of(reports.at("w6-powers"), "skew_rank");
  out.require(c && c->pass, "skew_rank(w6)");
  out.notes.push_back("skew_rank(w6) = " + data_of(reports.at("w6-powers"), "skew_rank"));
}

}  // namespace

int main(int argc, char** argv) {
  std::string report_path;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--report" && i + 1 < argc) report_path = argv[++i];
    else if (a == "--threads" && i + 1 < argc) threads = std::max(1, std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--report FILE] [--threads N]\n";
      return 2;
    }
  }

  Registry reg = Registry::load();
  std::vector<Report> all = verify_cases(reg.filter("", "all"), RunOptions{}, threads);
  all.push_back(run_properties());
  std::map<std::string, Report> reports;
  for (const auto& r : all) reports.emplace(r.id, r);

  const std::vector<Criterion> criteria{
      {1, "appendix coefficients",
       {"lemma-a3", "lemma-a4", "lemma-a5", "lemma-a6", "lemma-a7", "lemma-a8"}, 60, 0, appendix_notes},
      {2, "w6 ^ w6 sub-sums", {"lemma-a3"}, 60, 0, subsum_check},
      {3, "fast decompositions",
       {"eq-4.1", "thm-4.2-wedge2", "thm-4.2-wedge4", "lemma-4.1-m1", "lemma-4.1-m3"}, 30, 0, nullptr},
      {4, "slow decompositions at n = 13", {"eq-4.2", "eq-4.3", "eq-4.4"}, 0, 1800, nullptr},
      {5, "cominuscule table",
       {"cominuscule-a", "cominuscule-b", "cominuscule-c", "cominuscule-d1", "cominuscule-dr", "cominuscule-e6",
        "cominuscule-e7"},
       0, 0, nullptr},
      {6, "spinor and E6", {"spinor-d5-wedge2", "spinor-d5-wedge4", "e6-wedge2", "e6-wedge4"}, 0, 300, nullptr},
      {7, "Freudenthal magic square",
       {"legendrian-trivial-c3", "legendrian-trivial-a5", "legendrian-trivial-d6", "legendrian-trivial-e7",
        "legendrian-wedge4-c3", "legendrian-wedge4-a5", "legendrian-wedge4-d6", "legendrian-wedge4-e7", "w6-powers"},
       0, 0, skew_rank_check},
      {8, "lines, Lagrangian strictness and products",
       {"symplectic-lines", "lagrangian-strict", "og-lines-wedge4", "og-lines-strict", "og-lines-strict-b5",
        "prod-PP-wedge2", "prod-PP-wedge4"},
       0, 0, nullptr},
      {9, "forms", {"lemma-2.2", "pencil-integrable", "h0-omega1", "h0-omega3"}, 10, 0, nullptr},
      {10, "pencils", {"lemma-5.6", "pencil-divisibility"}, 0, 120, nullptr},
      {11, "property suites", {"properties"}, 0, 0,
       [&](const std::map<std::string, Report>& rs, Outcome& out) {
         std::size_t trips = 0, bad = 0;
         for (const auto& [id, r] : rs) {
           for (const auto& run : r.runs) {
             for (const auto& c : run.checks) {
               if (c.name != "round_trip") continue;
               ++trips;
               if (!c.pass) {
                 ++bad;
                 out.require(false, id + " round trip");
               }
             }
           }
         }
         out.require(trips > 0, "no round trips recorded");
         out.notes.push_back(std::to_string(trips - bad) + "/" + std::to_string(trips) + " round trips");
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o = evaluate(c, reports);
    std::string line = std::string(o.pass ? "PASS" : "FAIL") + "  criterion " + (c.number < 10 ? " " : "") +
                       std::to_string(c.number) + "  " + c.title + "  [";
    for (std::size_t i = 0; i < o.notes.size(); ++i) line += (i ? "; " : "") + o.notes[i];
    line += "]";
    for (const auto& p : o.problems) line += "  | " + p;
    std::cout << line << "\n";
    failed += !o.pass;
  }
  std::cout << std::flush;

  if (!report_path.empty()) {
    std::ofstream f(report_path);
    f << reports_json(all, true).dump(2) << "\n";
  }
  return failed ? 1 : 0;
}
