// Polynomial-only algebraic systems
//
//     f(u) = L u + sum_m N^(m)(u) + b = 0
//
// with an explicit linear part L, homogeneous nonlinear parts N^(m) of
// degree m >= 2, and a constant part b. Residuals and Jacobians are
// evaluated analytically from sparse coefficient lists, and every
// homogeneous part satisfies the Euler identity
//
//     J^(m)(u) u = m N^(m)(u),
//
// which is what lets a Newton step trade the evaluation of the top-degree
// nonlinear vector for products that reuse the Jacobian.
//
// A PolynomialSystem is immutable after build_system and safe to share
// across threads; evaluation is pure except for optional counter updates,
// which go through an EvalCounters owned by a single solver run.
#pragma once

#include <vector>

#include "polynewt/counters.hpp"
#include "polynewt/matrix.hpp"

namespace polynewt {

// One monomial row contribution: coeff * u_{j1} * ... * u_{jm} added to
// component `row`. The multi-index is kept sorted ascending.
struct TermEntry {
  int row = 0;
  std::vector<int> vars;
  double coeff = 0.0;

  bool operator==(const TermEntry&) const = default;
};

// A degree-m homogeneous vector function N^(m), stored as a coefficient
// list. Homogeneity N^(m)(t u) = t^m N^(m)(u) holds by construction.
struct HomogeneousTerm {
  int degree = 2;
  std::vector<TermEntry> entries;

  bool operator==(const HomogeneousTerm&) const = default;
};

struct MatrixEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;

  bool operator==(const MatrixEntry&) const = default;
};

struct PolynomialSystem {
  int n = 0;
  std::vector<MatrixEntry> linear;     // sparse L in canonical (row, col) order
  std::vector<HomogeneousTerm> terms;  // ascending degree, at most one per degree
  Vector constant;                     // b
  int top_degree = 1;                  // p; stays 1 when no nonlinear term exists

  bool operator==(const PolynomialSystem&) const = default;
};

using JacobianMatrix = Matrix;

// Canonicalizes raw input: multi-indices sorted, duplicate entries merged by
// coefficient addition, exact-zero coefficients dropped, terms of equal
// degree merged, top_degree computed. Throws IndexOutOfRange, DegreeTooLow,
// NonfiniteCoefficient, DimensionMismatch.
PolynomialSystem build_system(int n, std::vector<MatrixEntry> linear,
                              std::vector<HomogeneousTerm> terms, Vector constant);

// N^(m)(u). Counts one degree-m evaluation when a counter is supplied.
Vector eval_homogeneous(const HomogeneousTerm& term, const Vector& u,
                        EvalCounters* counters = nullptr);

// The analytic Jacobian of N^(m) at u, assembled dense by the product rule.
Matrix eval_jacobian_homogeneous(const HomogeneousTerm& term, const Vector& u);

// J^(m)(u) v without forming the matrix; cost is proportional to the number
// of stored monomials.
Vector jvp_homogeneous(const HomogeneousTerm& term, const Vector& u, const Vector& v);

// f(u) = L u + sum_m N^(m)(u) + b. Counts one evaluation per term.
Vector eval_residual(const PolynomialSystem& sys, const Vector& u,
                     EvalCounters* counters = nullptr);

// J(u) = L + sum_m J^(m)(u), dense. Counts one Jacobian assembly.
JacobianMatrix eval_jacobian(const PolynomialSystem& sys, const Vector& u,
                             EvalCounters* counters = nullptr);

// Reconstructs f(u) from a Jacobian assembled at this same u:
//
//   f(u) = (1/p) J(u) u + ((p-1)/p) L u + sum_{m<p} ((p-m)/p) N^(m)(u) + b
//
// with p the top degree. The degree-p vector is never evaluated; lower-degree
// terms are evaluated (and counted) only when the system has them. Throws
// NoNonlinearTerm when p < 2.
Vector residual_via_jacobian(const PolynomialSystem& sys, const Vector& u,
                             const JacobianMatrix& jac, EvalCounters* counters = nullptr);

// Worst Euler-identity defect over the system's terms:
//   max_m  ||J^(m)(u) u - m N^(m)(u)||_inf / (1 + ||m N^(m)(u)||_inf).
// Zero for systems without nonlinear terms.
double check_euler_identity(const PolynomialSystem& sys, const Vector& u);

// L assembled dense on demand.
Matrix dense_linear(const PolynomialSystem& sys);

// L u straight from the triples.
Vector linear_apply(const PolynomialSystem& sys, const Vector& u);

// J(u) v = L v + sum_m J^(m)(u) v, matrix-free. Used to keep residual
// reporting exact while a factorization stays frozen.
Vector jacobian_vector_product(const PolynomialSystem& sys, const Vector& u,
                               const Vector& v);

}  // namespace polynewt
