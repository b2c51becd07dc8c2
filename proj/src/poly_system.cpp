#include "polynewt/poly_system.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "polynewt/errors.hpp"

namespace polynewt {

namespace {

void check_index(int idx, int n, const char* what) {
  if (idx < 0 || idx >= n)
    throw IndexOutOfRange(std::string(what) + " index " + std::to_string(idx) +
                          " outside [0, " + std::to_string(n) + ")");
}

void check_point_dimension(const PolynomialSystem& sys, const Vector& u) {
  if (static_cast<int>(u.size()) != sys.n)
    throw DimensionMismatch("point has " + std::to_string(u.size()) +
                            " entries, system dimension is " + std::to_string(sys.n));
}

int entry_dimension(const Vector& u) { return static_cast<int>(u.size()); }

void check_entry(const TermEntry& e, int n) {
  if (e.row < 0 || e.row >= n)
    throw DimensionMismatch("term row " + std::to_string(e.row) +
                            " outside vector dimension " + std::to_string(n));
  for (int j : e.vars)
    if (j < 0 || j >= n)
      throw DimensionMismatch("term variable " + std::to_string(j) +
                              " outside vector dimension " + std::to_string(n));
}

}  // namespace

PolynomialSystem build_system(int n, std::vector<MatrixEntry> linear,
                              std::vector<HomogeneousTerm> terms, Vector constant) {
  if (n < 1) throw BadParam("system dimension must be at least 1");
  if (static_cast<int>(constant.size()) != n)
    throw DimensionMismatch("constant vector has " + std::to_string(constant.size()) +
                            " entries for dimension " + std::to_string(n));
  for (double v : constant)
    if (!std::isfinite(v)) throw NonfiniteCoefficient("constant vector entry is not finite");

  for (const auto& e : linear) {
    check_index(e.row, n, "linear row");
    check_index(e.col, n, "linear column");
    if (!std::isfinite(e.value))
      throw NonfiniteCoefficient("linear entry (" + std::to_string(e.row) + ", " +
                                 std::to_string(e.col) + ") is not finite");
  }
  std::sort(linear.begin(), linear.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  std::vector<MatrixEntry> merged_linear;
  for (const auto& e : linear) {
    if (!merged_linear.empty() && merged_linear.back().row == e.row &&
        merged_linear.back().col == e.col) {
      merged_linear.back().value += e.value;
    } else {
      merged_linear.push_back(e);
    }
  }
  std::erase_if(merged_linear, [](const MatrixEntry& e) { return e.value == 0.0; });

  std::map<int, std::vector<TermEntry>> by_degree;
  for (auto& term : terms) {
    if (term.degree < 2)
      throw DegreeTooLow("homogeneous term degree " + std::to_string(term.degree) +
                         " is below 2");
    for (auto& e : term.entries) {
      if (static_cast<int>(e.vars.size()) != term.degree)
        throw DimensionMismatch("entry multi-index has " + std::to_string(e.vars.size()) +
                                " indices for a degree-" + std::to_string(term.degree) +
                                " term");
      check_index(e.row, n, "term row");
      for (int j : e.vars) check_index(j, n, "term variable");
      if (!std::isfinite(e.coeff)) throw NonfiniteCoefficient("term coefficient is not finite");
      std::sort(e.vars.begin(), e.vars.end());
      by_degree[term.degree].push_back(std::move(e));
    }
  }

  PolynomialSystem sys;
  sys.n = n;
  sys.linear = std::move(merged_linear);
  sys.constant = std::move(constant);
  for (auto& [degree, entries] : by_degree) {
    std::sort(entries.begin(), entries.end(), [](const TermEntry& a, const TermEntry& b) {
      return std::tie(a.row, a.vars) < std::tie(b.row, b.vars);
    });
    std::vector<TermEntry> merged;
    for (auto& e : entries) {
      if (!merged.empty() && merged.back().row == e.row && merged.back().vars == e.vars) {
        merged.back().coeff += e.coeff;
      } else {
        merged.push_back(std::move(e));
      }
    }
    std::erase_if(merged, [](const TermEntry& e) { return e.coeff == 0.0; });
    if (!merged.empty()) sys.terms.push_back(HomogeneousTerm{degree, std::move(merged)});
  }
  sys.top_degree = sys.terms.empty() ? 1 : sys.terms.back().degree;
  return sys;
}

Vector eval_homogeneous(const HomogeneousTerm& term, const Vector& u, EvalCounters* counters) {
  const int n = entry_dimension(u);
  Vector out(n, 0.0);
  for (const auto& e : term.entries) {
    check_entry(e, n);
    double prod = e.coeff;
    for (int j : e.vars) prod *= u[j];
    out[e.row] += prod;
  }
  if (counters) ++counters->homogeneous_evals[term.degree];
  return out;
}

Matrix eval_jacobian_homogeneous(const HomogeneousTerm& term, const Vector& u) {
  const int n = entry_dimension(u);
  Matrix jac(n, n, 0.0);
  for (const auto& e : term.entries) {
    check_entry(e, n);
    const int m = static_cast<int>(e.vars.size());
    for (int k = 0; k < m; ++k) {
      double prod = e.coeff;
      for (int l = 0; l < m; ++l)
        if (l != k) prod *= u[e.vars[l]];
      jac(e.row, e.vars[k]) += prod;
    }
  }
  return jac;
}

Vector jvp_homogeneous(const HomogeneousTerm& term, const Vector& u, const Vector& v) {
  const int n = entry_dimension(u);
  if (v.size() != u.size())
    throw DimensionMismatch("jvp operand lengths differ: " + std::to_string(u.size()) +
                            " vs " + std::to_string(v.size()));
  Vector out(n, 0.0);
  for (const auto& e : term.entries) {
    check_entry(e, n);
    const int m = static_cast<int>(e.vars.size());
    for (int k = 0; k < m; ++k) {
      double prod = e.coeff * v[e.vars[k]];
      for (int l = 0; l < m; ++l)
        if (l != k) prod *= u[e.vars[l]];
      out[e.row] += prod;
    }
  }
  return out;
}

Vector eval_residual(const PolynomialSystem& sys, const Vector& u, EvalCounters* counters) {
  check_point_dimension(sys, u);
  Vector out = linear_apply(sys, u);
  for (const auto& term : sys.terms) {
    const Vector nm = eval_homogeneous(term, u, counters);
    for (int i = 0; i < sys.n; ++i) out[i] += nm[i];
  }
  for (int i = 0; i < sys.n; ++i) out[i] += sys.constant[i];
  return out;
}

JacobianMatrix eval_jacobian(const PolynomialSystem& sys, const Vector& u,
                             EvalCounters* counters) {
  check_point_dimension(sys, u);
  Matrix jac = dense_linear(sys);
  for (const auto& term : sys.terms) {
    const Matrix jm = eval_jacobian_homogeneous(term, u);
    for (int i = 0; i < sys.n; ++i)
      for (int j = 0; j < sys.n; ++j) jac(i, j) += jm(i, j);
  }
  if (counters) ++counters->jacobian_assemblies;
  return jac;
}

Vector residual_via_jacobian(const PolynomialSystem& sys, const Vector& u,
                             const JacobianMatrix& jac, EvalCounters* counters) {
  if (sys.top_degree < 2)
    throw NoNonlinearTerm("residual reconstruction needs a nonlinear term of degree >= 2");
  check_point_dimension(sys, u);
  if (jac.rows() != sys.n || jac.cols() != sys.n)
    throw DimensionMismatch("Jacobian is " + std::to_string(jac.rows()) + "x" +
                            std::to_string(jac.cols()) + " for dimension " +
                            std::to_string(sys.n));
  const double p = sys.top_degree;
  const Vector ju = matvec(jac, u);
  const Vector lu = linear_apply(sys, u);
  Vector out(sys.n, 0.0);
  for (int i = 0; i < sys.n; ++i)
    out[i] = ju[i] / p + (p - 1.0) / p * lu[i] + sys.constant[i];
  for (const auto& term : sys.terms) {
    if (term.degree == sys.top_degree) continue;
    const Vector nm = eval_homogeneous(term, u, counters);
    const double w = (p - term.degree) / p;
    for (int i = 0; i < sys.n; ++i) out[i] += w * nm[i];
  }
  if (counters) ++counters->residual_reconstructions;
  return out;
}

double check_euler_identity(const PolynomialSystem& sys, const Vector& u) {
  check_point_dimension(sys, u);
  double worst = 0.0;
  for (const auto& term : sys.terms) {
    const Matrix jm = eval_jacobian_homogeneous(term, u);
    const Vector jv = matvec(jm, u);
    Vector mn = eval_homogeneous(term, u);
    for (double& x : mn) x *= term.degree;
    Vector diff(sys.n);
    for (int i = 0; i < sys.n; ++i) diff[i] = jv[i] - mn[i];
    worst = std::max(worst, inf_norm(diff) / (1.0 + inf_norm(mn)));
  }
  return worst;
}

Matrix dense_linear(const PolynomialSystem& sys) {
  Matrix l(sys.n, sys.n, 0.0);
  for (const auto& e : sys.linear) l(e.row, e.col) += e.value;
  return l;
}

Vector linear_apply(const PolynomialSystem& sys, const Vector& u) {
  check_point_dimension(sys, u);
  Vector out(sys.n, 0.0);
  for (const auto& e : sys.linear) out[e.row] += e.value * u[e.col];
  return out;
}

Vector jacobian_vector_product(const PolynomialSystem& sys, const Vector& u, const Vector& v) {
  check_point_dimension(sys, u);
  check_point_dimension(sys, v);
  Vector out(sys.n, 0.0);
  for (const auto& e : sys.linear) out[e.row] += e.value * v[e.col];
  for (const auto& term : sys.terms) {
    const Vector tv = jvp_homogeneous(term, u, v);
    for (int i = 0; i < sys.n; ++i) out[i] += tv[i];
  }
  return out;
}

}  // namespace polynewt
