#include "polynewt/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "polynewt/errors.hpp"

namespace polynewt {

using nlohmann::json;

namespace {

// Shortest representation that parses back to the same double.
std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

bool converged(SolveStatus status) {
  return status == SolveStatus::ConvergedResidual || status == SolveStatus::ConvergedStep;
}

// --- parameter parsing for the registry -------------------------------

using ParamMap = std::map<std::string, std::string>;

void reject_unknown(const ParamMap& params, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known) {
      std::string msg = "unknown parameter '" + key + "'; valid parameters:";
      for (const char* a : allowed) msg += std::string(" ") + a;
      throw BadParam(msg);
    }
  }
}

double get_double(const ParamMap& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw BadParam("parameter '" + key + "' must be a number, got '" + it->second + "'");
  }
}

int get_int(const ParamMap& params, const std::string& key, int fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw BadParam("parameter '" + key + "' must be an integer, got '" + it->second + "'");
  }
}

unsigned long long get_seed(const ParamMap& params, unsigned long long fallback) {
  const auto it = params.find("seed");
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw BadParam("parameter 'seed' must be a nonnegative integer, got '" + it->second + "'");
  }
}

std::vector<int> get_degrees(const ParamMap& params, const std::string& fallback) {
  std::string text = fallback;
  if (const auto it = params.find("degrees"); it != params.end()) text = it->second;
  std::vector<int> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.push_back(d);
    } catch (const std::exception&) {
      throw BadParam("parameter 'degrees' must be a comma-separated list of integers, got '" +
                     text + "'");
    }
  }
  if (out.empty())
    throw BadParam("parameter 'degrees' must name at least one degree, got '" + text + "'");
  return out;
}

}  // namespace

RunReport run_schemes(const ProblemSpec& spec, const SolverConfig& config, bool standard,
                      bool function_free) {
  RunReport report;
  report.problem = spec.name;
  report.params = spec.params;
  report.config = config;
  for (const auto& term : spec.system.terms) report.term_degrees.push_back(term.degree);

  if (standard) {
    SolverConfig c = config;
    c.scheme = Scheme::Standard;
    report.runs.push_back({Scheme::Standard, solve(spec.system, spec.suggested_u0, c)});
  }
  if (function_free) {
    SolverConfig c = config;
    c.scheme = Scheme::FunctionFree;
    report.runs.push_back({Scheme::FunctionFree, solve(spec.system, spec.suggested_u0, c)});
  }
  if (report.runs.size() == 2)
    report.agreement = iterate_agreement(report.runs[0].result.trace,
                                         report.runs[1].result.trace);
  report.all_converged = !report.runs.empty();
  for (const auto& run : report.runs)
    if (!converged(run.result.trace.status)) report.all_converged = false;
  return report;
}

double iterate_agreement(const IterationTrace& a, const IterationTrace& b) {
  const std::size_t common = std::min(a.records.size(), b.records.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < common; ++k) {
    const Vector& ua = a.records[k].u;
    const Vector& ub = b.records[k].u;
    double gap = 0.0;
    for (std::size_t i = 0; i < ua.size(); ++i)
      gap = std::max(gap, std::abs(ua[i] - ub[i]));
    worst = std::max(worst, gap / (1.0 + inf_norm(ua)));
  }
  return worst;
}

std::string format_table(const RunReport& report) {
  std::ostringstream out;
  out << "problem: " << report.problem;
  if (!report.params.empty()) {
    out << "  (";
    bool first = true;
    for (const auto& [key, value] : report.params) {
      if (!first) out << ", ";
      out << key << "=" << shortest(value);
      first = false;
    }
    out << ")";
  }
  out << "\n";
  out << "config: residual_tol=" << shortest(report.config.residual_tol)
      << " step_tol=" << shortest(report.config.step_tol)
      << " max_iters=" << report.config.max_iters
      << " jacobian_refresh=" << report.config.jacobian_refresh << "\n";

  for (const auto& run : report.runs) {
    const IterationTrace& trace = run.result.trace;
    out << "\nscheme: " << scheme_name(run.scheme) << "\n";
    out << "  status: " << to_string(trace.status)
        << "   iterations: " << (trace.records.empty() ? 0 : trace.records.size() - 1)
        << "   final residual: "
        << (trace.records.empty() ? "n/a" : sci(trace.records.back().residual_inf)) << "\n";
    out << "  k     residual_inf     step_inf\n";
    for (const auto& rec : trace.records) {
      char line[96];
      std::snprintf(line, sizeof(line), "  %-5d %-16s %s\n", rec.k,
                    sci(rec.residual_inf).c_str(), sci(rec.step_inf).c_str());
      out << line;
    }
    out << "  counters:";
    for (int d : report.term_degrees)
      out << " evals[deg " << d << "]=" << trace.counters.homogeneous(d);
    out << " jacobian_assemblies=" << trace.counters.jacobian_assemblies
        << " linear_solves=" << trace.counters.linear_solves
        << " residual_reconstructions=" << trace.counters.residual_reconstructions << "\n";
    out << "  timings (s): assembly=" << sci(trace.assembly_seconds)
        << " factorization=" << sci(trace.factor_seconds)
        << " solve=" << sci(trace.solve_seconds) << " total=" << sci(trace.total_seconds)
        << "\n";
  }

  if (report.agreement)
    out << "\nscheme agreement (max relative iterate gap): " << sci(*report.agreement) << "\n";
  return out.str();
}

std::string format_csv(const RunReport& report) {
  std::ostringstream out;
  out << "scheme,k,residual_inf,step_inf\n";
  for (const auto& run : report.runs)
    for (const auto& rec : run.result.trace.records)
      out << scheme_name(run.scheme) << "," << rec.k << "," << shortest(rec.residual_inf)
          << "," << shortest(rec.step_inf) << "\n";
  return out.str();
}

json report_to_json(const RunReport& report) {
  json j;
  j["problem"] = report.problem;
  j["params"] = report.params;
  j["config"] = {{"residual_tol", report.config.residual_tol},
                 {"step_tol", report.config.step_tol},
                 {"max_iters", report.config.max_iters},
                 {"jacobian_refresh", report.config.jacobian_refresh}};
  json schemes = json::array();
  for (const auto& run : report.runs) {
    const IterationTrace& trace = run.result.trace;
    json counters;
    json evals = json::object();
    for (int d : report.term_degrees)
      evals[std::to_string(d)] = trace.counters.homogeneous(d);
    for (const auto& [degree, count] : trace.counters.homogeneous_evals)
      evals[std::to_string(degree)] = count;
    counters["homogeneous_evals"] = std::move(evals);
    counters["jacobian_assemblies"] = trace.counters.jacobian_assemblies;
    counters["linear_solves"] = trace.counters.linear_solves;
    counters["residual_reconstructions"] = trace.counters.residual_reconstructions;

    json residual_history = json::array();
    json step_history = json::array();
    for (const auto& rec : trace.records) {
      residual_history.push_back(rec.residual_inf);
      step_history.push_back(rec.step_inf);
    }

    schemes.push_back(
        {{"scheme", scheme_name(run.scheme)},
         {"status", to_string(trace.status)},
         {"iterations", trace.records.empty() ? 0 : trace.records.size() - 1},
         {"final_residual", trace.records.empty() ? 0.0 : trace.records.back().residual_inf},
         {"final_u", run.result.u},
         {"counters", std::move(counters)},
         {"residual_history", std::move(residual_history)},
         {"step_history", std::move(step_history)},
         {"timings_seconds",
          {{"assembly", trace.assembly_seconds},
           {"factorization", trace.factor_seconds},
           {"solve", trace.solve_seconds},
           {"total", trace.total_seconds}}}});
  }
  j["schemes"] = std::move(schemes);
  if (report.agreement) j["agreement"] = *report.agreement;
  j["all_converged"] = report.all_converged;
  return j;
}

VerifyReport verify_problem(const ProblemSpec& spec, int samples, unsigned long long seed) {
  if (samples < 1) throw BadParam("samples must be at least 1");
  VerifyReport report;
  report.problem = spec.name;
  report.samples = samples;

  std::mt19937_64 rng(seed);
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  const PolynomialSystem& sys = spec.system;
  for (int s = 0; s < samples; ++s) {
    Vector u(sys.n);
    for (double& x : u) x = 2.0 * unit() - 1.0;
    report.max_euler_defect = std::max(report.max_euler_defect, check_euler_identity(sys, u));
    const Matrix ja = eval_jacobian(sys, u);
    const Matrix jf = finite_difference_jacobian(sys, u, 1e-6);
    for (int i = 0; i < sys.n; ++i)
      for (int jcol = 0; jcol < sys.n; ++jcol)
        report.max_fd_defect =
            std::max(report.max_fd_defect,
                     std::abs(ja(i, jcol) - jf(i, jcol)) / (1.0 + std::abs(ja(i, jcol))));
  }
  report.pass = report.max_euler_defect <= report.euler_threshold &&
                report.max_fd_defect <= report.fd_threshold;
  return report;
}

std::string format_verify(const VerifyReport& report) {
  std::ostringstream out;
  out << "verify: " << report.problem << "  samples=" << report.samples << "\n";
  out << "  max Euler-identity defect:             " << sci(report.max_euler_defect)
      << "  (threshold " << shortest(report.euler_threshold) << ")\n";
  out << "  max finite-difference Jacobian defect: " << sci(report.max_fd_defect)
      << "  (threshold " << shortest(report.fd_threshold) << ")\n";
  out << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

const std::vector<BuiltinProblem>& builtin_problems() {
  static const std::vector<BuiltinProblem> registry = {
      {"burgers-1d", "n=16 nu=0.1 ua=1 ub=0",
       "steady 1D Burgers flow, central differences, quadratic convection",
       [](const ParamMap& p, unsigned long long) {
         reject_unknown(p, {"n", "nu", "ua", "ub"});
         return burgers_1d(get_int(p, "n", 16), get_double(p, "nu", 0.1),
                           get_double(p, "ua", 1.0), get_double(p, "ub", 0.0));
       }},
      {"cubic-reaction", "n=16 lam=4",
       "steady Allen-Cahn reaction-diffusion, diagonal cubic term",
       [](const ParamMap& p, unsigned long long) {
         reject_unknown(p, {"n", "lam"});
         return cubic_reaction_problem(get_int(p, "n", 16), get_double(p, "lam", 4.0));
       }},
      {"mixed", "n=1 alpha=1 [seed]",
       "quadratic+cubic blend; n=1 is the canonical scalar instance",
       [](const ParamMap& p, unsigned long long seed) {
         reject_unknown(p, {"n", "alpha", "seed"});
         return mixed_quadratic_cubic_problem(get_int(p, "n", 1), get_double(p, "alpha", 1.0),
                                              get_seed(p, seed));
       }},
      {"random", "n=20 degrees=2,3 density=0.1 [seed]",
       "seeded sparse polynomial system with a constructed known root",
       [](const ParamMap& p, unsigned long long seed) {
         reject_unknown(p, {"n", "degrees", "density", "seed"});
         return random_polynomial_problem(get_int(p, "n", 20), get_degrees(p, "2,3"),
                                          get_double(p, "density", 0.1), get_seed(p, seed));
       }},
      {"scalar-power", "p=2 target=4", "single equation u^p = target",
       [](const ParamMap& p, unsigned long long) {
         reject_unknown(p, {"p", "target"});
         return scalar_power_problem(get_int(p, "p", 2), get_double(p, "target", 4.0));
       }},
  };
  return registry;
}

ProblemSpec make_builtin_problem(const std::string& name,
                                 const std::map<std::string, std::string>& params,
                                 unsigned long long seed) {
  for (const auto& entry : builtin_problems())
    if (entry.name == name) return entry.make(params, seed);
  std::string msg = "unknown problem '" + name + "'; valid problems:";
  for (const auto& entry : builtin_problems()) msg += " " + entry.name;
  throw UnknownProblem(msg);
}

}  // namespace polynewt
