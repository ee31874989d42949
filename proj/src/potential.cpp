#include "octa/potential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "octa/dilog.hpp"
#include "octa/geometry.hpp"

namespace octa {

namespace {

constexpr std::array<double, 4> kTermSigns{1.0, -1.0, 1.0, -1.0};

struct CrossingIndex {
  int i1, i2, i1p, i2p;
  int eps;
};

CrossingIndex index_of(const Crossing& x) {
  return {x.at(Role::In1), x.at(Role::In2), x.at(Role::Out1), x.at(Role::Out2), x.sign};
}

// d arg_k / d beta as (segment, coefficient) pairs, same order as arguments().
std::array<std::array<std::pair<int, int>, 2>, 4> derivative_pattern(const CrossingIndex& x) {
  return {{{{{x.i2p, 1}, {x.i1, -1}}},
           {{{x.i2, 1}, {x.i1, -1}}},
           {{{x.i2, 1}, {x.i1p, -1}}},
           {{{x.i2p, 1}, {x.i1p, -1}}}}};
}

using VecX = Eigen::VectorXcd;
using MatX = Eigen::MatrixXcd;

double max_abs_minus_one(const std::vector<Complex>& e) {
  double r = 0.0;
  for (const Complex z : e) {
    const double v = std::abs(z - 1.0);
    r = std::isfinite(v) ? std::max(r, v) : std::numeric_limits<double>::infinity();
  }
  return r;
}

}  // namespace

PotentialProblem::PotentialProblem(const Diagram& d, const Combinatorics& c, std::vector<Complex> mu)
    : d_(&d), c_(&c), mu_(std::move(mu)) {
  if (static_cast<int>(mu_.size()) != c.num_components) {
    std::ostringstream msg;
    msg << "expected " << c.num_components << " log-meridians (one per component), got "
        << mu_.size();
    throw InputError(msg.str());
  }
}

std::array<Complex, 4> PotentialProblem::arguments(int crossing,
                                                   const std::vector<Complex>& beta) const {
  const CrossingIndex x = index_of(d_->crossing(crossing));
  const Complex mu1 = mu_[c_->component_of[x.i1]];
  const Complex mu2 = mu_[c_->component_of[x.i2]];
  return {beta[x.i2p] - beta[x.i1], beta[x.i2] - beta[x.i1] - mu1,
          beta[x.i2] - beta[x.i1p] + mu2 - mu1, beta[x.i2p] - beta[x.i1p] + mu2};
}

double PotentialProblem::integer_distance(const std::vector<Complex>& beta) const {
  double best = std::numeric_limits<double>::infinity();
  for (int ci = 0; ci < d_->num_crossings(); ++ci) {
    for (const Complex a : arguments(ci, beta)) {
      best = std::min(best, std::abs(a - std::round(a.real())));
    }
  }
  return best;
}

Complex potential_value(const PotentialProblem& p, const std::vector<Complex>& beta) {
  const Diagram& d = p.diagram();
  const Combinatorics& c = p.combinatorics();
  Complex phi = 0.0;
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const CrossingIndex x = index_of(d.crossing(ci));
    const double eps = x.eps;
    const auto args = p.arguments(ci, beta);
    Complex term = 0.0;
    for (int k = 0; k < 4; ++k) term += kTermSigns[k] * ldil(eps * args[k]);
    const Complex mu1 = p.mu()[c.component_of[x.i1]];
    const Complex mu2 = p.mu()[c.component_of[x.i2]];
    term += kTwoPiI * (mu1 * (beta[x.i1p] - beta[x.i1]) - mu2 * (beta[x.i2p] - beta[x.i2]));
    phi += eps * term;
  }
  return phi;
}

std::vector<Complex> potential_gradient(const PotentialProblem& p, const std::vector<Complex>& beta,
                                        const NumericContext& ctx) {
  if (p.integer_distance(beta) <= ctx.integer_gate) {
    throw MathError("non-analytic point: a dilogarithm argument is an integer");
  }
  const Diagram& d = p.diagram();
  const Combinatorics& c = p.combinatorics();
  std::vector<Complex> grad(p.num_variables(), 0.0);
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const CrossingIndex x = index_of(d.crossing(ci));
    const double eps = x.eps;
    const auto args = p.arguments(ci, beta);
    const auto pattern = derivative_pattern(x);
    for (int k = 0; k < 4; ++k) {
      const Complex dl = ldil_derivative(eps * args[k]);
      for (const auto& [seg, coef] : pattern[k]) grad[seg] += kTermSigns[k] * double(coef) * dl;
    }
    const Complex mu1 = p.mu()[c.component_of[x.i1]];
    const Complex mu2 = p.mu()[c.component_of[x.i2]];
    grad[x.i1p] += eps * kTwoPiI * mu1;
    grad[x.i1] -= eps * kTwoPiI * mu1;
    grad[x.i2] += eps * kTwoPiI * mu2;
    grad[x.i2p] -= eps * kTwoPiI * mu2;
  }
  return grad;
}

std::vector<Complex> segment_equations(const PotentialProblem& p, const std::vector<Complex>& beta) {
  const Diagram& d = p.diagram();
  const Combinatorics& c = p.combinatorics();
  std::vector<Complex> e(p.num_variables(), 1.0);
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const CrossingIndex x = index_of(d.crossing(ci));
    const double eps = x.eps;
    const auto args = p.arguments(ci, beta);
    const auto pattern = derivative_pattern(x);
    for (int k = 0; k < 4; ++k) {
      const Complex one_minus_w = 1.0 - std::exp(kTwoPiI * eps * args[k]);
      for (const auto& [seg, coef] : pattern[k]) {
        e[seg] *= std::pow(one_minus_w, -kTermSigns[k] * coef);
      }
    }
    const Complex m1 = std::exp(kTwoPiI * eps * p.mu()[c.component_of[x.i1]]);
    const Complex m2 = std::exp(kTwoPiI * eps * p.mu()[c.component_of[x.i2]]);
    e[x.i1p] *= m1;
    e[x.i1] /= m1;
    e[x.i2] *= m2;
    e[x.i2p] /= m2;
  }
  return e;
}

std::vector<Complex> potential_hessian(const PotentialProblem& p, const std::vector<Complex>& beta) {
  const Diagram& d = p.diagram();
  const int n = p.num_variables();
  std::vector<Complex> h(static_cast<std::size_t>(n) * n, 0.0);
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const CrossingIndex x = index_of(d.crossing(ci));
    const double eps = x.eps;
    const auto args = p.arguments(ci, beta);
    const auto pattern = derivative_pattern(x);
    for (int k = 0; k < 4; ++k) {
      const Complex w = std::exp(kTwoPiI * eps * args[k]);
      const Complex f = kTermSigns[k] * eps * kTwoPiI * w / (1.0 - w);
      for (const auto& [si, ci_] : pattern[k]) {
        for (const auto& [sj, cj] : pattern[k]) h[si * n + sj] += f * double(ci_ * cj);
      }
    }
  }
  return h;
}

CriticalPoint solve_critical(const PotentialProblem& p, std::vector<Complex> beta0,
                             const SolveOptions& opt, const NumericContext& ctx) {
  const int n = p.num_variables();
  if (static_cast<int>(beta0.size()) != n) throw InputError("beta has the wrong length");
  for (const Complex b : beta0) {
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) throw InputError("beta must be finite");
  }
  CriticalPoint cp;
  cp.beta = std::move(beta0);
  std::vector<Complex> e = segment_equations(p, cp.beta);
  double res = max_abs_minus_one(e);
  auto norm2 = [](const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex z : v) s += std::norm(z - 1.0);
    return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
  };
  double f2 = norm2(e);
  const int free = n - 1;
  Eigen::Index rank = free;
  for (cp.iterations = 0; cp.iterations < opt.max_iterations && res > 1e-14; ++cp.iterations) {
    const std::vector<Complex> h = potential_hessian(p, cp.beta);
    MatX J(n, free);
    VecX F(n);
    for (int i = 0; i < n; ++i) {
      F(i) = e[i] - 1.0;
      for (int j = 0, col = 0; j < n; ++j) {
        if (j == opt.pinned) continue;
        J(i, col++) = e[i] * h[i * n + j];
      }
    }
    Eigen::CompleteOrthogonalDecomposition<MatX> cod(J);
    cod.setThreshold(1e-12);
    rank = cod.rank();
    const VecX delta = cod.solve(-F);
    if (!delta.allFinite()) break;
    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
      std::vector<Complex> trial = cp.beta;
      for (int j = 0, col = 0; j < n; ++j) {
        if (j == opt.pinned) continue;
        trial[j] += lambda * delta(col++);
      }
      const std::vector<Complex> et = segment_equations(p, trial);
      const double ft = norm2(et);
      if (ft < f2) {
        cp.beta = std::move(trial);
        e = et;
        f2 = ft;
        improved = true;
        break;
      }
    }
    res = max_abs_minus_one(e);
    if (!improved) break;
  }
  cp.residual = res;
  cp.converged = res <= opt.accept;
  cp.singular = rank < free;
  cp.pinched_adjacent = p.integer_distance(cp.beta) <= ctx.integer_gate;
  return cp;
}

std::vector<CriticalPoint> multi_start_solve(const PotentialProblem& p, std::uint64_t seed,
                                             const MultiStartOptions& opt,
                                             const NumericContext& ctx) {
  const int n = p.num_variables();
  const int free = n - 1;
  static constexpr std::array<Complex, 9> kLattice{
      Complex(0.0, -0.5),       Complex(0.0, -1.0 / 6),       Complex(0.0, 1.0 / 6),
      Complex(1.0 / 3, -0.5),   Complex(1.0 / 3, -1.0 / 6),   Complex(1.0 / 3, 1.0 / 6),
      Complex(2.0 / 3, -0.5),   Complex(2.0 / 3, -1.0 / 6),   Complex(2.0 / 3, 1.0 / 6)};

  std::vector<std::vector<Complex>> starts = opt.extra_starts;
  const double lattice_size = std::pow(9.0, free);
  auto from_code = [&](std::uint64_t code) {
    std::vector<Complex> b(n, 0.0);
    for (int j = 0; j < n; ++j) {
      if (j == opt.solve.pinned) continue;
      b[j] = kLattice[code % 9];
      code /= 9;
    }
    return b;
  };
  if (lattice_size <= opt.max_starts) {
    for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(lattice_size); ++code) {
      starts.push_back(from_code(code));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 8);
    for (int s = 0; s < opt.max_starts; ++s) {
      std::vector<Complex> b(n, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j != opt.solve.pinned) b[j] = kLattice[pick(rng)];
      }
      starts.push_back(std::move(b));
    }
  }

  std::vector<CriticalPoint> results(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++) {
      try {
        results[i] = solve_critical(p, starts[i], opt.solve, ctx);
      } catch (const Error&) {
        results[i] = CriticalPoint{};
      }
    }
  };
  int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, 16);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Canonical representative: real parts reduced into [0, 1).
  std::vector<CriticalPoint> distinct;
  for (CriticalPoint& cp : results) {
    if (!cp.accepted()) continue;
    for (Complex& b : cp.beta) b -= std::floor(b.real() + 1e-9);
    auto same = [&](const CriticalPoint& q) {
      for (int j = 0; j < n; ++j) {
        const Complex diff = cp.beta[j] - q.beta[j];
        if (std::abs(diff - std::round(diff.real())) > 1e-6) return false;
      }
      return true;
    };
    if (std::none_of(distinct.begin(), distinct.end(), same)) distinct.push_back(cp);
  }
  return distinct;
}

namespace {

// Relative residuals of the a- and b-equations at every crossing, with b and
// m frozen.
VecX a_system(const Diagram& d, const std::vector<OctaColor>& chi) {
  VecX r(4 * d.num_crossings());
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const Crossing& x = d.crossing(ci);
    const OctaColor& c1p = chi[x.at(Role::Out1)];
    const OctaColor& c2p = chi[x.at(Role::Out2)];
    std::pair<OctaColor, OctaColor> out;
    try {
      out = propagate_crossing(chi[x.at(Role::In1)], chi[x.at(Role::In2)], x.sign);
    } catch (const MathError&) {
      const double inf = std::numeric_limits<double>::infinity();
      r.segment(4 * ci, 4).setConstant(Complex(inf, 0.0));
      continue;
    }
    r(4 * ci + 0) = (out.first.a - c1p.a) / std::max(1.0, std::abs(c1p.a));
    r(4 * ci + 1) = (out.second.a - c2p.a) / std::max(1.0, std::abs(c2p.a));
    r(4 * ci + 2) = (out.first.b - c1p.b) / std::max(1.0, std::abs(c1p.b));
    r(4 * ci + 3) = (out.second.b - c2p.b) / std::max(1.0, std::abs(c2p.b));
  }
  return r;
}

bool polish_a(const Diagram& d, std::vector<OctaColor>& chi) {
  const int n = static_cast<int>(chi.size());
  VecX r = a_system(d, chi);
  double r2 = r.allFinite() ? r.squaredNorm() : std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100 && r2 > 1e-30; ++it) {
    if (!std::isfinite(r2)) return false;
    MatX J(r.size(), n);
    for (int j = 0; j < n; ++j) {
      std::vector<OctaColor> shifted = chi;
      const double h = 1e-7 * std::max(1.0, std::abs(chi[j].a));
      shifted[j].a += h;
      J.col(j) = (a_system(d, shifted) - r) / h;
    }
    const VecX delta = J.completeOrthogonalDecomposition().solve(-r);
    if (!delta.allFinite()) return false;
    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
      std::vector<OctaColor> trial = chi;
      for (int j = 0; j < n; ++j) trial[j].a += lambda * delta(j);
      const VecX rt = a_system(d, trial);
      const double t2 = rt.allFinite() ? rt.squaredNorm() : std::numeric_limits<double>::infinity();
      if (t2 < r2) {
        chi = std::move(trial);
        r = rt;
        r2 = t2;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return std::isfinite(r2);
}

}  // namespace

OctahedralColoring coloring_from_critical(const PotentialProblem& p, const CriticalPoint& cp,
                                          std::uint64_t seed, int max_tries,
                                          const NumericContext& ctx) {
  const Diagram& d = p.diagram();
  const Combinatorics& c = p.combinatorics();
  const int n = d.num_segments();
  OctahedralColoring chi;
  chi.chi.resize(n);
  for (int s = 0; s < n; ++s) {
    chi.chi[s] = {1.0, std::exp(kTwoPiI * cp.beta[s]), std::exp(kTwoPiI * p.mu()[c.component_of[s]])};
  }
  // a of each incoming segment from the b-equations at its head crossing.
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const Crossing& x = d.crossing(ci);
    const ShapeQuad q = shapes_from_coloring(d, chi, ci);
    const Complex zN = q.z[ShapeQuad::N], zW = q.z[ShapeQuad::W], zS = q.z[ShapeQuad::S];
    const Complex m1 = chi.chi[x.at(Role::In1)].m, m2 = chi.chi[x.at(Role::In2)].m;
    Complex a1, a2;
    if (x.sign > 0) {
      a1 = m1 * (1.0 - zW) / (1.0 - zN);
      a2 = (1.0 - zS) / (m2 * (1.0 - zW));
    } else {
      a1 = (1.0 - 1.0 / zW) / (m1 * (1.0 - 1.0 / zN));
      a2 = m2 * (1.0 - 1.0 / zS) / (1.0 - 1.0 / zW);
    }
    chi.chi[x.at(Role::In1)].a = a1;
    chi.chi[x.at(Role::In2)].a = a2;
  }
  // Outgoing boundary segments take a from their tail crossing.
  for (const int s : d.boundary_out()) {
    const SegmentEnd& t = d.tail(s);
    if (t.kind != SegmentEnd::Kind::Crossing) continue;
    const Crossing& x = d.crossing(t.crossing);
    try {
      const auto out = propagate_crossing(chi.chi[x.at(Role::In1)], chi.chi[x.at(Role::In2)], x.sign);
      chi.chi[s].a = t.role == Role::Out1 ? out.first.a : out.second.a;
    } catch (const MathError&) {
    }
  }
  bool finite = true;
  for (const OctaColor& x : chi.chi) finite = finite && std::isfinite(std::abs(x.a)) && x.a != 0.0;
  if (finite && verify_octahedral(d, chi, ctx).pass) return chi;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  for (int t = 0; t < max_tries; ++t) {
    OctahedralColoring trial = chi;
    if (t > 0 || !finite) {
      for (OctaColor& x : trial.chi) x.a = Complex(n01(rng), n01(rng));
    }
    if (polish_a(d, trial.chi) && verify_octahedral(d, trial, ctx).pass) return trial;
  }
  throw MathError("could not recover the a-variables of the critical point");
}

std::optional<GeometricSolution> find_geometric_solution(const Diagram& d, const Combinatorics& c,
                                                         std::uint64_t seed,
                                                         const MultiStartOptions& opt,
                                                         const NumericContext& ctx) {
  if (!d.is_closed()) throw InputError("solving the potential requires a closed diagram");
  for (const Complex mu : {Complex(0.0), Complex(0.5)}) {
    const PotentialProblem p(d, c, std::vector<Complex>(c.num_components, mu));
    const std::vector<CriticalPoint> points = multi_start_solve(p, seed, opt, ctx);
    std::optional<GeometricSolution> best;
    for (const CriticalPoint& cp : points) {
      try {
        OctahedralColoring chi = coloring_from_critical(p, cp, seed, 64, ctx);
        const double vol = volume(d, chi, ctx);
        if (!best || vol > best->volume + 1e-9) {
          best = GeometricSolution{mu, cp, std::move(chi), vol, 0};
        }
      } catch (const MathError&) {
      }
    }
    if (best && best->volume > 1e-6) {
      best->critical_points = static_cast<int>(points.size());
      return best;
    }
  }
  return std::nullopt;
}

}  // namespace octa
