#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polynewt/poly_system.hpp"

namespace polynewt {

// A named, ready-to-solve test system.  When known_root is present it
// satisfies ||f(known_root)||_inf <= 1e-10 * (1 + ||b||_inf).
struct ProblemSpec {
  std::string name;
  std::map<std::string, double> params;
  PolynomialSystem system;
  std::optional<Vector> known_root;
  Vector suggested_u0;
};

// u^p - target = 0 in one unknown.  Root target^(1/p), starting guess one
// above it.  p must lie in [2, 8] (UnsupportedDegree) and target must be
// positive (BadParam).
ProblemSpec scalar_power_problem(int p, double target);

// Random sparse system with the requested homogeneity degrees, a linear
// part with ~density*n^2 entries plus a diagonal-dominance shift, and a
// constant vector chosen so a drawn root u* in [-1,1]^n solves the system
// exactly.  Deterministic in all arguments.  n in [1, 200] (BadParam),
// density in (0, 1] (InvalidDensity), degrees each >= 2 (DegreeTooLow).
ProblemSpec random_polynomial_problem(int n, const std::vector<int>& degrees, double density,
                                      unsigned long long seed);

// Steady 1D Burgers flow nu*u'' = u*u' on (0,1) with Dirichlet values
// u(0)=ua, u(1)=ub, central differences on n interior points.  Boundary
// values multiplying unknowns fold into the linear part; pure boundary
// constants fold into b.  Top degree 2.  n >= 3 (BadParam), nu > 0
// (InvalidViscosity).
ProblemSpec burgers_1d(int n, double nu, double ua, double ub);

// Steady Allen-Cahn reaction-diffusion u'' + lam*(u - u^3) = 0 on (0,1)
// with u(0)=-1, u(1)=1, central differences on n interior points.  Top
// degree 3 (the cubic term is diagonal).  n >= 3 (BadParam).
ProblemSpec cubic_reaction_problem(int n, double lam);

// Mixed quadratic + cubic system.  n = 1 gives the canonical scalar
// instance alpha*u^2 + u^3 = alpha + 1 with root 1 and starting guess 2;
// n > 1 gives a random {2,3} system (density 0.1) with the quadratic
// coefficients scaled by alpha before the known-root construction.
// alpha = 0 degenerates to a pure cubic system.
ProblemSpec mixed_quadratic_cubic_problem(int n, double alpha, unsigned long long seed);

}  // namespace polynewt
