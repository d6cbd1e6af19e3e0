#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace slitworks::oracle {

struct Quantity {
  std::string name;
  double value;
  std::string unit;
};

struct ExpectedValue {
  std::string name;
  double value;
  std::string unit;
  double tolerance;        ///< relative, or absolute when `absolute`
  std::string quote;       ///< anchor text of the printed answer
  bool asserted = true;    ///< false: recorded as known-inconsistent
  bool absolute = false;
  std::string note;
};

enum class CaseStatus { Assertable, Qualitative };

struct ProblemCase {
  std::string id;
  std::string title;
  CaseStatus status = CaseStatus::Assertable;
  std::vector<Quantity> inputs;
  std::vector<ExpectedValue> expected;
  std::string note;
};

struct ValueResult {
  ExpectedValue expected;
  double computed = 0;
  double error = 0;  ///< relative (or absolute) deviation
  bool pass = false;
};

struct CaseResult {
  std::string id;
  std::string title;
  CaseStatus status = CaseStatus::Assertable;
  std::vector<ValueResult> values;
  bool pass = true;  ///< all asserted values within tolerance; qualitative cases pass trivially
};

class Inputs {
 public:
  explicit Inputs(const std::vector<Quantity>& q);
  double operator()(const std::string& name) const;

 private:
  std::map<std::string, double> values_;
};

using ComputeFn = std::function<std::map<std::string, double>(const Inputs&)>;

const std::vector<ProblemCase>& listProblems();
const ProblemCase& findProblem(const std::string& id);

/// Registered compute function for a case id; throws UsageError when none exists.
const ComputeFn& computeFor(const std::string& id);

CaseResult evaluate(const ProblemCase& problem);
CaseResult evaluate(const std::string& id);

/// Evaluates every case whose id matches the shell-style glob `filter`.
std::vector<CaseResult> evaluateAll(const std::string& filter = "*");

/// Machine-readable report, stable key set.
std::string reportJson(const std::vector<CaseResult>& results);

/// Fixed-width pass/fail table.
std::string reportTable(const std::vector<CaseResult>& results);

// Helper formulas used by the advanced problems.
int vibrationalModeCount(int atoms);
double boltzmannOccupation(double energy, double T);
double rotationalConstant(double momentOfInertia);
double mostProbableRotationalQuantumNumber(double B, double T);
double rotationalAngularFrequency(double momentOfInertia, double T);
double transitTime(double thickness, double v);
double evaporatedMolecules(double surfaceDensity, double area, double moleculeMass);

}  // namespace slitworks::oracle
