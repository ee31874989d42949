#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "octa/octahedral.hpp"

namespace octa {

/// Variables beta (one per segment) and fixed log-meridians mu (one per
/// component) of the potential function of a diagram.
///
/// Crossing c with incoming 1, 2 and outgoing 1', 2' contributes
///   eps * [ sum_k s_k l(eps * arg_k) + 2 pi i (mu_1 (beta_1' - beta_1) - mu_2 (beta_2' - beta_2)) ]
/// with s = (+, -, +, -) and arguments
///   N: beta_2' - beta_1,  W: beta_2 - beta_1 - mu_1,
///   S: beta_2 - beta_1' + mu_2 - mu_1,  E: beta_2' - beta_1' + mu_2.
/// At a positive crossing with mu = 0 this is the plain four-term sum.
class PotentialProblem {
 public:
  PotentialProblem(const Diagram& d, const Combinatorics& c, std::vector<Complex> mu);

  [[nodiscard]] const Diagram& diagram() const { return *d_; }
  [[nodiscard]] const Combinatorics& combinatorics() const { return *c_; }
  [[nodiscard]] const std::vector<Complex>& mu() const { return mu_; }
  [[nodiscard]] int num_variables() const { return d_->num_segments(); }

  /// The four arguments at a crossing, before the eps factor.
  [[nodiscard]] std::array<Complex, 4> arguments(int crossing, const std::vector<Complex>& beta) const;

  /// Distance of the nearest eps * arg_k to an integer, over all crossings.
  [[nodiscard]] double integer_distance(const std::vector<Complex>& beta) const;

 private:
  const Diagram* d_;
  const Combinatorics* c_;
  std::vector<Complex> mu_;
};

Complex potential_value(const PotentialProblem& p, const std::vector<Complex>& beta);

/// Analytic gradient. Throws MathError at a non-analytic point.
std::vector<Complex> potential_gradient(const PotentialProblem& p, const std::vector<Complex>& beta,
                                        const NumericContext& ctx = {});

/// exp(dPhi/dbeta_i) per segment, evaluated as a product (no logarithms).
std::vector<Complex> segment_equations(const PotentialProblem& p, const std::vector<Complex>& beta);

/// Row-major Hessian of Phi.
std::vector<Complex> potential_hessian(const PotentialProblem& p, const std::vector<Complex>& beta);

struct CriticalPoint {
  std::vector<Complex> beta;
  double residual = 0.0;         // max |exp(dPhi/dbeta_i) - 1|
  bool converged = false;        // residual within the acceptance gate
  bool pinched_adjacent = false; // some argument within integer_gate of an integer
  bool singular = false;         // rank-deficient Jacobian at the end point
  int iterations = 0;
  [[nodiscard]] bool accepted() const { return converged && !pinched_adjacent; }
};

struct SolveOptions {
  int max_iterations = 100;
  double accept = 1e-10;  // residual gate for a critical point
  int pinned = 0;         // segment whose beta is held fixed (Phi depends on differences only)
};

/// Damped Gauss-Newton on F_i = exp(dPhi/dbeta_i) - 1.
CriticalPoint solve_critical(const PotentialProblem& p, std::vector<Complex> beta0,
                             const SolveOptions& opt = {}, const NumericContext& ctx = {});

struct MultiStartOptions {
  SolveOptions solve;
  int max_starts = 2000;
  std::vector<std::vector<Complex>> extra_starts;  // tried first
  int threads = 0;                                 // 0: hardware concurrency
};

/// Distinct accepted critical points in order of the first start reaching
/// each. Starts lie on the lattice {0, 1/3, 2/3} + i{-1/2, -1/6, 1/6} per
/// free variable, sampled with the seed when the lattice is too large.
std::vector<CriticalPoint> multi_start_solve(const PotentialProblem& p, std::uint64_t seed,
                                             const MultiStartOptions& opt = {},
                                             const NumericContext& ctx = {});

/// Octahedral coloring (a_i, exp(2 pi i beta_i), exp(2 pi i mu_k(i))). The
/// a_i come from the b-equations at each segment's head crossing, then
/// Newton polish on all crossing equations, with seeded random restarts.
OctahedralColoring coloring_from_critical(const PotentialProblem& p, const CriticalPoint& cp,
                                          std::uint64_t seed, int max_tries = 64,
                                          const NumericContext& ctx = {});

struct GeometricSolution {
  Complex mu;  // common log-meridian of every component
  CriticalPoint point;
  OctahedralColoring coloring;
  double volume = 0.0;
  int critical_points = 0;  // distinct accepted points at this mu
};

/// Searches mu = 0 and then mu = 1/2 for the accepted critical point of
/// largest volume whose coloring verifies. Requires a closed diagram.
std::optional<GeometricSolution> find_geometric_solution(const Diagram& d, const Combinatorics& c,
                                                         std::uint64_t seed,
                                                         const MultiStartOptions& opt = {},
                                                         const NumericContext& ctx = {});

}  // namespace octa
