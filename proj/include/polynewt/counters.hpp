#pragma once

#include <map>

namespace polynewt {

// Per-solve tallies of the work a scheme performs. A solver run owns exactly
// one instance; evaluation routines increment it only when handed a pointer,
// so plain evaluations stay pure.
struct EvalCounters {
  std::map<int, long long> homogeneous_evals;  // degree -> evaluation count
  long long jacobian_assemblies = 0;
  long long linear_solves = 0;
  long long residual_reconstructions = 0;

  long long homogeneous(int degree) const {
    auto it = homogeneous_evals.find(degree);
    return it == homogeneous_evals.end() ? 0 : it->second;
  }
};

}  // namespace polynewt
