#include "polynewt/newton.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "polynewt/errors.hpp"

namespace polynewt {

namespace {

// Values of every term of degree < top_degree, aligned with sys.terms; the
// top-degree slot is left empty.  These are the only nonlinear evaluations
// the function-free scheme ever makes, and each monitored iterate makes
// exactly one pass.
std::vector<Vector> eval_lower_terms(const PolynomialSystem& sys, const Vector& u,
                                     EvalCounters* counters) {
  std::vector<Vector> values(sys.terms.size());
  for (std::size_t t = 0; t < sys.terms.size(); ++t)
    if (sys.terms[t].degree < sys.top_degree)
      values[t] = eval_homogeneous(sys.terms[t], u, counters);
  return values;
}

// (p-1)·L·u + sum_{m<p} (p-m)·N^(m)(u) + p·b — the right-hand side of the
// rearranged update.
Vector function_free_rhs(const PolynomialSystem& sys, const Vector& lin,
                         const std::vector<Vector>& lower) {
  const double p = sys.top_degree;
  Vector rhs(sys.n);
  for (int i = 0; i < sys.n; ++i) rhs[i] = (p - 1.0) * lin[i] + p * sys.constant[i];
  for (std::size_t t = 0; t < sys.terms.size(); ++t) {
    if (sys.terms[t].degree == sys.top_degree) continue;
    const double w = p - sys.terms[t].degree;
    for (int i = 0; i < sys.n; ++i) rhs[i] += w * lower[t][i];
  }
  return rhs;
}

// f(u) rebuilt from J(u)·u via the homogeneity identity:
// f(u) = (1/p)·J·u + ((p-1)/p)·L·u + sum_{m<p} ((p-m)/p)·N^(m)(u) + b.
Vector reconstruct_from_parts(const PolynomialSystem& sys, const Vector& ju,
                              const Vector& lin, const std::vector<Vector>& lower) {
  const double p = sys.top_degree;
  Vector r(sys.n);
  for (int i = 0; i < sys.n; ++i)
    r[i] = ju[i] / p + (p - 1.0) / p * lin[i] + sys.constant[i];
  for (std::size_t t = 0; t < sys.terms.size(); ++t) {
    if (sys.terms[t].degree == sys.top_degree) continue;
    const double w = (p - sys.terms[t].degree) / p;
    for (int i = 0; i < sys.n; ++i) r[i] += w * lower[t][i];
  }
  return r;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ConvergedResidual: return "converged-residual";
    case SolveStatus::ConvergedStep: return "converged-step";
    case SolveStatus::MaxIters: return "max-iters";
    case SolveStatus::SingularJacobian: return "singular-jacobian";
    case SolveStatus::Diverged: return "diverged";
  }
  return "unknown";
}

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::Standard ? "standard" : "function-free";
}

Vector newton_step_standard(const PolynomialSystem& sys, const Vector& u,
                            const LuFactorization& lu, EvalCounters* counters) {
  const Vector r = eval_residual(sys, u, counters);
  const Vector d = lu.solve(r, counters);
  Vector out(sys.n);
  for (int i = 0; i < sys.n; ++i) out[i] = u[i] - d[i];
  return out;
}

Vector newton_step_standard(const PolynomialSystem& sys, const Vector& u,
                            const JacobianMatrix& jac, EvalCounters* counters) {
  return newton_step_standard(sys, u, LuFactorization(jac), counters);
}

Vector newton_step_function_free(const PolynomialSystem& sys, const Vector& u,
                                 const LuFactorization& lu, EvalCounters* counters) {
  if (sys.top_degree < 2)
    throw NoNonlinearTerm("the function-free step needs a nonlinear term of degree >= 2");
  const double p = sys.top_degree;
  const Vector lin = linear_apply(sys, u);
  const std::vector<Vector> lower = eval_lower_terms(sys, u, counters);
  const Vector rhs = function_free_rhs(sys, lin, lower);
  const Vector d = lu.solve(rhs, counters);
  Vector out(sys.n);
  for (int i = 0; i < sys.n; ++i) out[i] = (p - 1.0) / p * u[i] - d[i] / p;
  return out;
}

Vector newton_step_function_free(const PolynomialSystem& sys, const Vector& u,
                                 const JacobianMatrix& jac, EvalCounters* counters) {
  return newton_step_function_free(sys, u, LuFactorization(jac), counters);
}

SolveResult solve(const PolynomialSystem& sys, const Vector& u0, const SolverConfig& config) {
  if (!(config.residual_tol >= 0.0) || !(config.step_tol >= 0.0))
    throw BadParam("tolerances must be nonnegative");
  if (config.residual_tol == 0.0 && config.step_tol == 0.0)
    throw BadParam("at least one of residual_tol and step_tol must be positive");
  if (config.max_iters < 1) throw BadParam("max_iters must be at least 1");
  if (config.jacobian_refresh < 1) throw BadParam("jacobian_refresh must be at least 1");
  if (static_cast<int>(u0.size()) != sys.n)
    throw DimensionMismatch("initial guess has " + std::to_string(u0.size()) +
                            " entries, system dimension is " + std::to_string(sys.n));
  const bool function_free = config.scheme == Scheme::FunctionFree;
  if (function_free && sys.top_degree < 2)
    throw NoNonlinearTerm("the function-free scheme needs a nonlinear term of degree >= 2");

  SolveResult result;
  IterationTrace& trace = result.trace;
  EvalCounters& counters = trace.counters;

  Vector u = u0;
  double step_inf = 0.0;
  const double p = sys.top_degree;
  Matrix jac;
  std::optional<LuFactorization> factor;
  bool jac_fresh = false;  // jac was assembled at the current iterate

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  for (int k = 0;; ++k) {
    const bool refresh_point = k % config.jacobian_refresh == 0;

    // Residual at the current iterate.  The function-free scheme never
    // evaluates the top-degree term: with a fresh Jacobian it reuses J·u,
    // under a stale factorization it computes J(u)·u matrix-free.
    Vector residual;
    Vector lin;
    std::vector<Vector> lower;
    if (function_free) {
      if (refresh_point) {
        const double t0 = elapsed();
        jac = eval_jacobian(sys, u, &counters);
        trace.assembly_seconds += elapsed() - t0;
        jac_fresh = true;
        factor.reset();
      }
      lin = linear_apply(sys, u);
      lower = eval_lower_terms(sys, u, &counters);
      const Vector ju = jac_fresh ? matvec(jac, u) : jacobian_vector_product(sys, u, u);
      residual = reconstruct_from_parts(sys, ju, lin, lower);
      ++counters.residual_reconstructions;
    } else {
      residual = eval_residual(sys, u, &counters);
    }
    const double residual_inf = all_finite(residual)
                                    ? inf_norm(residual)
                                    : std::numeric_limits<double>::quiet_NaN();

    trace.records.push_back({k, u, residual_inf, step_inf, elapsed()});

    if (!all_finite(u) || inf_norm(u) > 1e12 || !std::isfinite(residual_inf)) {
      trace.status = SolveStatus::Diverged;
      break;
    }
    if (residual_inf <= config.residual_tol) {
      trace.status = SolveStatus::ConvergedResidual;
      break;
    }
    if (k > 0 && step_inf <= config.step_tol * (1.0 + inf_norm(u))) {
      trace.status = SolveStatus::ConvergedStep;
      break;
    }
    if (k >= config.max_iters) {
      trace.status = SolveStatus::MaxIters;
      break;
    }

    try {
      if (!function_free && refresh_point) {
        const double t0 = elapsed();
        jac = eval_jacobian(sys, u, &counters);
        trace.assembly_seconds += elapsed() - t0;
        factor.reset();
      }
      if (!factor) {
        const double t0 = elapsed();
        factor.emplace(jac);
        trace.factor_seconds += elapsed() - t0;
      }
    } catch (const SingularMatrix&) {
      trace.status = SolveStatus::SingularJacobian;
      break;
    }

    Vector u_next(sys.n);
    if (function_free && jac_fresh) {
      const Vector rhs = function_free_rhs(sys, lin, lower);
      const double t0 = elapsed();
      const Vector d = factor->solve(rhs, &counters);
      trace.solve_seconds += elapsed() - t0;
      for (int i = 0; i < sys.n; ++i) u_next[i] = (p - 1.0) / p * u[i] - d[i] / p;
    } else {
      // Standard step, or function-free under a stale factorization: the
      // reconstructed residual stands in for f(u) exactly.
      const double t0 = elapsed();
      const Vector d = factor->solve(residual, &counters);
      trace.solve_seconds += elapsed() - t0;
      for (int i = 0; i < sys.n; ++i) u_next[i] = u[i] - d[i];
    }

    double s = 0.0;
    for (int i = 0; i < sys.n; ++i) s = std::max(s, std::abs(u_next[i] - u[i]));
    step_inf = s;
    u = std::move(u_next);
    jac_fresh = false;
  }

  trace.total_seconds = elapsed();
  result.u = std::move(u);
  return result;
}

Matrix finite_difference_jacobian(const PolynomialSystem& sys, const Vector& u, double h) {
  if (!(h > 0.0)) throw BadParam("finite-difference step must be positive");
  if (static_cast<int>(u.size()) != sys.n)
    throw DimensionMismatch("point has " + std::to_string(u.size()) +
                            " entries, system dimension is " + std::to_string(sys.n));
  Matrix out(sys.n, sys.n, 0.0);
  Vector up = u;
  Vector um = u;
  for (int j = 0; j < sys.n; ++j) {
    up[j] = u[j] + h;
    um[j] = u[j] - h;
    const Vector fp = eval_residual(sys, up);
    const Vector fm = eval_residual(sys, um);
    for (int i = 0; i < sys.n; ++i) out(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    up[j] = u[j];
    um[j] = u[j];
  }
  return out;
}

}  // namespace polynewt
