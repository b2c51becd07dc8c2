#include "polynewt/linear_solve.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "polynewt/errors.hpp"

namespace polynewt {

LuFactorization::LuFactorization(Matrix a) : n_(a.rows()), lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols())
    throw DimensionMismatch("LU factorization needs a square matrix, got " +
                            std::to_string(lu_.rows()) + "x" + std::to_string(lu_.cols()));
  const double scale = max_abs(lu_);
  if (scale == 0.0) throw SingularMatrix("matrix is identically zero");
  const double pivot_floor = 1e-14 * scale;

  perm_.resize(n_);
  std::iota(perm_.begin(), perm_.end(), 0);

  for (int k = 0; k < n_; ++k) {
    int pivot_row = k;
    double pivot_mag = std::abs(lu_(k, k));
    for (int i = k + 1; i < n_; ++i) {
      const double mag = std::abs(lu_(i, k));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = i;
      }
    }
    if (!(pivot_mag > pivot_floor))
      throw SingularMatrix("pivot " + std::to_string(pivot_mag) + " in column " +
                           std::to_string(k) + " below threshold " +
                           std::to_string(pivot_floor));
    if (pivot_row != k) {
      for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(pivot_row, j));
      std::swap(perm_[k], perm_[pivot_row]);
    }
    for (int i = k + 1; i < n_; ++i) {
      lu_(i, k) /= lu_(k, k);
      const double lik = lu_(i, k);
      for (int j = k + 1; j < n_; ++j) lu_(i, j) -= lik * lu_(k, j);
    }
  }
}

Vector LuFactorization::solve(const Vector& b, EvalCounters* counters) const {
  if (static_cast<int>(b.size()) != n_)
    throw DimensionMismatch("right-hand side has " + std::to_string(b.size()) +
                            " entries for a " + std::to_string(n_) + "x" +
                            std::to_string(n_) + " factorization");
  Vector x(n_);
  for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
  for (int i = 1; i < n_; ++i) {
    double sum = x[i];
    for (int j = 0; j < i; ++j) sum -= lu_(i, j) * x[j];
    x[i] = sum;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double sum = x[i];
    for (int j = i + 1; j < n_; ++j) sum -= lu_(i, j) * x[j];
    x[i] = sum / lu_(i, i);
  }
  if (counters) ++counters->linear_solves;
  return x;
}

Vector lu_solve(Matrix a, const Vector& b, EvalCounters* counters) {
  return LuFactorization(std::move(a)).solve(b, counters);
}

}  // namespace polynewt
