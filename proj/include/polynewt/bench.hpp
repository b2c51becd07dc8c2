#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polynewt/newton.hpp"
#include "polynewt/problems.hpp"

namespace polynewt {

// One scheme's solve outcome within a run.
struct SchemeRun {
  Scheme scheme = Scheme::Standard;
  SolveResult result;
};

// Everything a `run` invocation reports, in one place; the table, JSON,
// and CSV formatters all read from this single source.
struct RunReport {
  std::string problem;
  std::map<std::string, double> params;
  SolverConfig config;
  std::vector<int> term_degrees;  // degrees present in the system (for counter tables)
  std::vector<SchemeRun> runs;    // standard first when both schemes ran
  // Max over the common iterate prefix of ||u_std^k - u_ff^k||_inf /
  // (1 + ||u_std^k||_inf); present whenever both schemes ran.
  std::optional<double> agreement;
  bool all_converged = false;
};

// Runs the requested scheme(s) from the problem's suggested starting
// point under a shared config (config.scheme is overridden per run).
RunReport run_schemes(const ProblemSpec& spec, const SolverConfig& config, bool standard,
                      bool function_free);

// Max relative iterate gap over the common prefix of two traces.
double iterate_agreement(const IterationTrace& a, const IterationTrace& b);

std::string format_table(const RunReport& report);
std::string format_csv(const RunReport& report);  // columns: scheme,k,residual_inf,step_inf
nlohmann::json report_to_json(const RunReport& report);

// Structural verification: Euler-identity and finite-difference Jacobian
// defects at seeded random sample points in [-1,1]^n.
struct VerifyReport {
  std::string problem;
  int samples = 0;
  double max_euler_defect = 0.0;
  double max_fd_defect = 0.0;
  double euler_threshold = 1e-13;
  double fd_threshold = 1e-6;
  bool pass = false;
};

VerifyReport verify_problem(const ProblemSpec& spec, int samples, unsigned long long seed);
std::string format_verify(const VerifyReport& report);

// Built-in problem registry for the CLI.  Factories accept raw key=value
// parameter strings (so e.g. degrees=2,3 can be expressed) plus the seed
// from --seed, apply per-problem defaults, and reject unknown keys with
// BadParam.
struct BuiltinProblem {
  std::string name;
  std::string param_synopsis;
  std::string description;
  std::function<ProblemSpec(const std::map<std::string, std::string>&, unsigned long long)>
      make;
};

// Sorted by name; at least five entries.
const std::vector<BuiltinProblem>& builtin_problems();

// Looks up a registry entry and builds the problem.  Throws UnknownProblem
// (message lists the valid names) or whatever the generator throws.
ProblemSpec make_builtin_problem(const std::string& name,
                                 const std::map<std::string, std::string>& params,
                                 unsigned long long seed);

}  // namespace polynewt
