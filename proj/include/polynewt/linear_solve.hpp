#pragma once

#include <vector>

#include "polynewt/counters.hpp"
#include "polynewt/matrix.hpp"

namespace polynewt {

// Dense LU factorization with partial (row) pivoting.  Factoring throws
// SingularMatrix when the best available pivot falls below
// 1e-14 * max|A_ij|, so a factorization object always represents an
// invertible matrix.  The factorization can be kept around and reused for
// many right-hand sides, which is what the frozen-Jacobian solver modes do.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  int size() const { return n_; }

  // Solves A x = b for the matrix this factorization was built from.
  // Increments counters->linear_solves once per call when counters is given.
  Vector solve(const Vector& b, EvalCounters* counters = nullptr) const;

 private:
  int n_ = 0;
  Matrix lu_;              // packed unit-lower / upper factors
  std::vector<int> perm_;  // row permutation: row i of PA is row perm_[i] of A
};

// One-shot convenience wrapper: factor then solve.
Vector lu_solve(Matrix a, const Vector& b, EvalCounters* counters = nullptr);

}  // namespace polynewt
