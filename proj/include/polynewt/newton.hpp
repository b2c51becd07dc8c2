#pragma once

#include <vector>

#include "polynewt/counters.hpp"
#include "polynewt/linear_solve.hpp"
#include "polynewt/matrix.hpp"
#include "polynewt/poly_system.hpp"

namespace polynewt {

// Which update formula the solver iterates.
//
// Standard:     u+ = u - J(u)^-1 f(u)                       (textbook Newton)
// FunctionFree: u+ = ((p-1)/p) u
//                  - (1/p) J^-1 [ (p-1) L u
//                               + sum_{m=2}^{p-1} (p-m) N^(m)(u)
//                               + p b ]
// where p is the system's top degree.  The two are algebraically identical
// when J is assembled at u; the second never evaluates the degree-p term.
enum class Scheme { Standard, FunctionFree };

enum class SolveStatus {
  ConvergedResidual,  // ||f(u)||_inf <= residual_tol
  ConvergedStep,      // ||u_k - u_{k-1}||_inf <= step_tol * (1 + ||u_k||_inf)
  MaxIters,
  SingularJacobian,
  Diverged,  // iterate blew past 1e12 in magnitude or went non-finite
};

const char* to_string(SolveStatus status);
const char* scheme_name(Scheme scheme);  // "standard" / "function-free"

struct SolverConfig {
  Scheme scheme = Scheme::Standard;
  double residual_tol = 1e-10;
  double step_tol = 1e-12;
  int max_iters = 50;
  int jacobian_refresh = 1;  // reassemble + refactor J every this many steps
};

struct IterationRecord {
  int k = 0;
  Vector u;                  // iterate u^k
  double residual_inf = 0.0;
  double step_inf = 0.0;     // ||u^k - u^{k-1}||_inf; 0 at k = 0
  double wall_time = 0.0;    // seconds since the solve started
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  SolveStatus status = SolveStatus::MaxIters;
  EvalCounters counters;
  // Accumulated wall-clock per phase, for reporting only.
  double assembly_seconds = 0.0;
  double factor_seconds = 0.0;
  double solve_seconds = 0.0;
  double total_seconds = 0.0;
};

struct SolveResult {
  Vector u;
  IterationTrace trace;
};

// One Newton update u - J^-1 f(u).  Evaluates the full residual, including
// the top-degree term.  The matrix overloads factor J internally; the
// LuFactorization overloads reuse an existing factorization.
Vector newton_step_standard(const PolynomialSystem& sys, const Vector& u,
                            const JacobianMatrix& jac, EvalCounters* counters = nullptr);
Vector newton_step_standard(const PolynomialSystem& sys, const Vector& u,
                            const LuFactorization& lu, EvalCounters* counters = nullptr);

// One update by the rearranged formula above.  Never evaluates the
// degree-p term; evaluates each lower-degree term once.  Throws
// NoNonlinearTerm when the system has no term of degree >= 2.
Vector newton_step_function_free(const PolynomialSystem& sys, const Vector& u,
                                 const JacobianMatrix& jac, EvalCounters* counters = nullptr);
Vector newton_step_function_free(const PolynomialSystem& sys, const Vector& u,
                                 const LuFactorization& lu, EvalCounters* counters = nullptr);

// Iterates the configured step from u0 until a stopping rule fires:
// residual tolerance, relative step tolerance, max_iters, a singular
// Jacobian, or divergence.  Runtime failures are reported through the
// trace status, not exceptions.  With scheme = FunctionFree the residual
// is monitored through the Jacobian identity (reconstruction), so the
// top-degree term is never evaluated anywhere in the solve; lower-degree
// values are shared between monitoring and the step right-hand side, so
// each is evaluated exactly once per recorded iterate.
//
// With jacobian_refresh = R > 1 the factorization is reused for R steps.
// Standard then takes the classic modified-Newton step u - J_old^-1 f(u).
// FunctionFree reconstructs f(u) with a fresh matrix-free product J(u)u
// (cost O(nnz), no assembly or factorization) and applies the same stale
// factorization, so the two schemes still agree step for step.
//
// Throws BadParam for an invalid config, DimensionMismatch for a u0 of
// the wrong length, and NoNonlinearTerm when scheme = FunctionFree and
// the system has no term of degree >= 2.
SolveResult solve(const PolynomialSystem& sys, const Vector& u0, const SolverConfig& config);

// Central-difference Jacobian, column j = (f(u + h e_j) - f(u - h e_j)) / (2h).
// Test oracle for eval_jacobian.
Matrix finite_difference_jacobian(const PolynomialSystem& sys, const Vector& u, double h);

}  // namespace polynewt
