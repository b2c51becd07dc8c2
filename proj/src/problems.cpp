#include "polynewt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "polynewt/errors.hpp"

namespace polynewt {

namespace {

// Deterministic uniform draws with a pinned bit-to-double mapping, so the
// generated problems are identical across standard libraries.
struct UniformDraws {
  std::mt19937_64 rng;

  explicit UniformDraws(unsigned long long seed) : rng(seed) {}

  double unit() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }  // [0, 1)
  double symmetric() { return 2.0 * unit() - 1.0; }                       // [-1, 1)
  int index(int n) { return static_cast<int>(rng() % static_cast<unsigned long long>(n)); }
};

struct RandomStructure {
  std::vector<MatrixEntry> linear;
  std::vector<HomogeneousTerm> terms;
  Vector root;
  Vector u0;
};

// Shared skeleton of the random generators: linear part, one homogeneous
// term per requested degree, a root in [-1,1]^n, and a perturbed starting
// guess.  The constant vector is chosen later, after any coefficient
// scaling, so the root solves the final system exactly.
RandomStructure draw_random_structure(int n, const std::vector<int>& degrees, double density,
                                      UniformDraws& draws) {
  RandomStructure s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (draws.unit() < density) s.linear.push_back({i, j, draws.symmetric()});
  const double shift = n * density;
  for (int i = 0; i < n; ++i) s.linear.push_back({i, i, shift});

  const int entries_per_degree = std::max(1, static_cast<int>(std::lround(density * n * n)));
  for (int degree : degrees) {
    HomogeneousTerm term;
    term.degree = degree;
    for (int e = 0; e < entries_per_degree; ++e) {
      TermEntry entry;
      entry.row = draws.index(n);
      entry.vars.resize(degree);
      for (int v = 0; v < degree; ++v) entry.vars[v] = draws.index(n);
      entry.coeff = draws.symmetric();
      term.entries.push_back(std::move(entry));
    }
    s.terms.push_back(std::move(term));
  }

  s.root.resize(n);
  for (int i = 0; i < n; ++i) s.root[i] = draws.symmetric();
  s.u0.resize(n);
  for (int i = 0; i < n; ++i) s.u0[i] = s.root[i] + 0.1 * draws.symmetric();
  return s;
}

// Builds the system with b = 0, then sets b := -f(root) computed on the
// built (sorted, merged) system so the cancellation at the root is exact.
PolynomialSystem build_with_root(int n, std::vector<MatrixEntry> linear,
                                 std::vector<HomogeneousTerm> terms, const Vector& root) {
  PolynomialSystem sys =
      build_system(n, std::move(linear), std::move(terms), Vector(n, 0.0));
  const Vector r = eval_residual(sys, root);
  for (int i = 0; i < n; ++i) sys.constant[i] = -r[i];
  return sys;
}

std::vector<int> sorted_unique_degrees(const std::vector<int>& degrees) {
  std::vector<int> out = degrees;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int d : out)
    if (d < 2) throw DegreeTooLow("requested degree " + std::to_string(d) + " is below 2");
  return out;
}

}  // namespace

ProblemSpec scalar_power_problem(int p, double target) {
  if (p < 2 || p > 8)
    throw UnsupportedDegree("scalar power degree " + std::to_string(p) +
                            " outside supported range [2, 8]");
  if (!(target > 0.0)) throw BadParam("scalar power target must be positive");

  HomogeneousTerm term;
  term.degree = p;
  term.entries.push_back({0, std::vector<int>(p, 0), 1.0});

  ProblemSpec spec;
  spec.name = "scalar-power";
  spec.params = {{"p", static_cast<double>(p)}, {"target", target}};
  spec.system = build_system(1, {}, {std::move(term)}, {-target});
  const double root = std::pow(target, 1.0 / p);
  spec.known_root = Vector{root};
  spec.suggested_u0 = {root + 1.0};
  return spec;
}

ProblemSpec random_polynomial_problem(int n, const std::vector<int>& degrees, double density,
                                      unsigned long long seed) {
  if (n < 1 || n > 200)
    throw BadParam("random system dimension " + std::to_string(n) + " outside [1, 200]");
  if (!(density > 0.0) || density > 1.0)
    throw InvalidDensity("density must lie in (0, 1]");
  const std::vector<int> degs = sorted_unique_degrees(degrees);

  UniformDraws draws(seed);
  RandomStructure s = draw_random_structure(n, degs, density, draws);

  ProblemSpec spec;
  spec.name = "random";
  spec.params = {{"n", static_cast<double>(n)},
                 {"density", density},
                 {"seed", static_cast<double>(seed)}};
  for (int d : degs) spec.params["degree_" + std::to_string(d)] = 1.0;
  spec.system = build_with_root(n, std::move(s.linear), std::move(s.terms), s.root);
  spec.known_root = s.root;
  spec.suggested_u0 = std::move(s.u0);
  return spec;
}

ProblemSpec burgers_1d(int n, double nu, double ua, double ub) {
  if (n < 3) throw BadParam("burgers-1d needs at least 3 interior points");
  if (!(nu > 0.0)) throw InvalidViscosity("viscosity must be positive");

  const double h = 1.0 / (n + 1);
  const double visc = nu / (h * h);
  const double conv = 1.0 / (2.0 * h);

  // Row i discretizes nu*u'' - u*u' = 0 at interior grid point i+1:
  //   visc*(u_{i-1} - 2 u_i + u_{i+1}) - conv*u_i*(u_{i+1} - u_{i-1}) = 0
  // with u_{-1} = ua and u_{n} = ub known.
  std::vector<MatrixEntry> linear;
  HomogeneousTerm quad;
  quad.degree = 2;
  Vector b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    linear.push_back({i, i, -2.0 * visc});
    if (i > 0) {
      linear.push_back({i, i - 1, visc});
      quad.entries.push_back({i, {i - 1, i}, conv});
    } else {
      b[i] += visc * ua;
      linear.push_back({i, i, conv * ua});
    }
    if (i < n - 1) {
      linear.push_back({i, i + 1, visc});
      quad.entries.push_back({i, {i, i + 1}, -conv});
    } else {
      b[i] += visc * ub;
      linear.push_back({i, i, -conv * ub});
    }
  }

  ProblemSpec spec;
  spec.name = "burgers-1d";
  spec.params = {{"n", static_cast<double>(n)}, {"nu", nu}, {"ua", ua}, {"ub", ub}};
  spec.system = build_system(n, std::move(linear), {std::move(quad)}, std::move(b));
  spec.suggested_u0.resize(n);
  for (int i = 0; i < n; ++i) spec.suggested_u0[i] = ua + (ub - ua) * (i + 1) * h;
  return spec;
}

ProblemSpec cubic_reaction_problem(int n, double lam) {
  if (n < 3) throw BadParam("cubic-reaction needs at least 3 interior points");

  const double h = 1.0 / (n + 1);
  const double d2 = 1.0 / (h * h);

  // Row i discretizes u'' + lam*(u - u^3) = 0 at interior grid point i+1
  // with u(0) = -1 and u(1) = 1.
  std::vector<MatrixEntry> linear;
  HomogeneousTerm cubic;
  cubic.degree = 3;
  Vector b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    linear.push_back({i, i, -2.0 * d2 + lam});
    if (i > 0)
      linear.push_back({i, i - 1, d2});
    else
      b[i] += -1.0 * d2;
    if (i < n - 1)
      linear.push_back({i, i + 1, d2});
    else
      b[i] += 1.0 * d2;
    cubic.entries.push_back({i, {i, i, i}, -lam});
  }

  ProblemSpec spec;
  spec.name = "cubic-reaction";
  spec.params = {{"n", static_cast<double>(n)}, {"lam", lam}};
  spec.system = build_system(n, std::move(linear), {std::move(cubic)}, std::move(b));
  spec.suggested_u0.resize(n);
  for (int i = 0; i < n; ++i) spec.suggested_u0[i] = -1.0 + 2.0 * (i + 1) * h;
  return spec;
}

ProblemSpec mixed_quadratic_cubic_problem(int n, double alpha, unsigned long long seed) {
  if (n < 1) throw BadParam("mixed problem dimension must be at least 1");

  ProblemSpec spec;
  spec.name = "mixed";
  spec.params = {{"n", static_cast<double>(n)},
                 {"alpha", alpha},
                 {"seed", static_cast<double>(seed)}};

  if (n == 1) {
    // Canonical scalar instance alpha*u^2 + u^3 = alpha + 1, root u = 1.
    HomogeneousTerm quad;
    quad.degree = 2;
    quad.entries.push_back({0, {0, 0}, alpha});
    HomogeneousTerm cubic;
    cubic.degree = 3;
    cubic.entries.push_back({0, {0, 0, 0}, 1.0});
    spec.system =
        build_system(1, {}, {std::move(quad), std::move(cubic)}, {-(alpha + 1.0)});
    spec.known_root = Vector{1.0};
    spec.suggested_u0 = {2.0};
    return spec;
  }

  const double density = 0.1;
  UniformDraws draws(seed);
  RandomStructure s = draw_random_structure(n, {2, 3}, density, draws);
  for (auto& term : s.terms)
    if (term.degree == 2)
      for (auto& entry : term.entries) entry.coeff *= alpha;

  spec.system = build_with_root(n, std::move(s.linear), std::move(s.terms), s.root);
  spec.known_root = s.root;
  spec.suggested_u0 = std::move(s.u0);
  return spec;
}

}  // namespace polynewt
