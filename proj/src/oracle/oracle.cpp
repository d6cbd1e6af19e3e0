#include "slitworks/oracle/oracle.hpp"

#include <fnmatch.h>

#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <sstream>

#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"

namespace slitworks::oracle {

Inputs::Inputs(const std::vector<Quantity>& q) {
  for (const auto& x : q) values_[x.name] = x.value;
}

double Inputs::operator()(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw UsageError("missing problem input '" + name + "'");
  return it->second;
}

const ProblemCase& findProblem(const std::string& id) {
  for (const auto& p : listProblems())
    if (p.id == id) return p;
  throw UsageError("unknown problem id '" + id + "'");
}

CaseResult evaluate(const ProblemCase& problem) {
  CaseResult r{problem.id, problem.title, problem.status, {}, true};
  if (problem.status == CaseStatus::Qualitative) return r;

  const auto computed = computeFor(problem.id)(Inputs(problem.inputs));
  for (const auto& e : problem.expected) {
    const auto it = computed.find(e.name);
    if (it == computed.end()) throw Error("problem " + problem.id + " did not produce '" + e.name + "'");
    ValueResult v{e, it->second, 0, false};
    v.error = e.absolute ? std::abs(v.computed - e.value) : std::abs(v.computed - e.value) / std::abs(e.value);
    v.pass = std::isfinite(v.error) && v.error <= e.tolerance;
    if (e.asserted && !v.pass) r.pass = false;
    r.values.push_back(v);
  }
  return r;
}

CaseResult evaluate(const std::string& id) { return evaluate(findProblem(id)); }

std::vector<CaseResult> evaluateAll(const std::string& filter) {
  std::vector<CaseResult> out;
  for (const auto& p : listProblems())
    if (fnmatch(filter.c_str(), p.id.c_str(), 0) == 0) out.push_back(evaluate(p));
  return out;
}

std::string reportJson(const std::vector<CaseResult>& results) {
  using nlohmann::json;
  json cases = json::array();
  int assertable = 0, passed = 0;
  for (const auto& r : results) {
    json values = json::array();
    for (const auto& v : r.values) {
      values.push_back({{"name", v.expected.name},
                        {"unit", v.expected.unit},
                        {"computed", v.computed},
                        {"expected", v.expected.value},
                        {"tolerance", v.expected.tolerance},
                        {"tolerance_kind", v.expected.absolute ? "absolute" : "relative"},
                        {"error", v.error},
                        {"asserted", v.expected.asserted},
                        {"pass", v.pass},
                        {"quote", v.expected.quote},
                        {"note", v.expected.note}});
    }
    const bool qual = r.status == CaseStatus::Qualitative;
    if (!qual) {
      ++assertable;
      if (r.pass) ++passed;
    }
    cases.push_back({{"id", r.id},
                     {"title", r.title},
                     {"status", qual ? "qualitative" : "assertable"},
                     {"pass", r.pass},
                     {"values", values}});
  }
  json doc{{"schema", "slitworks-oracle/1"},
           {"constants", constants::version},
           {"summary", {{"cases", results.size()}, {"assertable", assertable}, {"passed", passed},
                        {"failed", assertable - passed}}},
           {"cases", cases}};
  return doc.dump(2);
}

std::string reportTable(const std::vector<CaseResult>& results) {
  std::ostringstream os;
  char line[256];
  for (const auto& r : results) {
    if (r.status == CaseStatus::Qualitative) {
      std::snprintf(line, sizeof line, "%-7s %-4s %s (qualitative)\n", r.id.c_str(), "--", r.title.c_str());
      os << line;
      continue;
    }
    std::snprintf(line, sizeof line, "%-7s %-4s %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.title.c_str());
    os << line;
    for (const auto& v : r.values) {
      const char* tag = !v.expected.asserted ? "note" : (v.pass ? "ok" : "FAIL");
      std::snprintf(line, sizeof line, "          %-22s computed %-12.5g expected %-12.5g err %.2e tol %.2g %s\n",
                    v.expected.name.c_str(), v.computed, v.expected.value, v.error, v.expected.tolerance, tag);
      os << line;
    }
  }
  return os.str();
}

}  // namespace slitworks::oracle
