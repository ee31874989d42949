// One PASS/FAIL line per acceptance criterion; nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "octa/cli.hpp"
#include "octa/gauge.hpp"
#include "octa/geometry.hpp"
#include "octa/octahedral.hpp"
#include "octa/potential.hpp"
#include "support/corpus.hpp"

using namespace octa;
using testkit::Case;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Corpus for criteria 1, 2 and 4: knots and tangles, gauge-fixed.
struct Prepared {
  Case k;
  ShadowColoring sc;
  OctahedralColoring chi;
};

std::vector<Prepared> prepare(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Prepared> out;
  for (Case& k : testkit::random_corpus(count, seed)) {
    ShadowColoring sc = testkit::admissible_shadow_of(k, rng);
    OctahedralColoring chi = *associated_coloring(k.c, sc).coloring;
    out.push_back({std::move(k), std::move(sc), std::move(chi)});
  }
  return out;
}

Verdict c1_holonomies_match() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int ok = 0;
  for (const Prepared& p : prepare(100, 101)) {
    const double r = verify_match(p.k.d, p.k.c, p.sc, p.chi).max_residual;
    worst = std::max(worst, r);
    ok += r <= 1e-9;
  }
  const double t = seconds_since(t0);
  return {ok == 100 && t < 60.0,
          std::to_string(ok) + "/100 match, worst residual " + num(worst) + ", " + num(t) + " s"};
}

Verdict c2_crossing_equations() {
  double worst = 0.0;
  int ok = 0;
  for (const Prepared& p : prepare(100, 101)) {
    const double r = verify_octahedral(p.k.d, p.chi).max_residual;
    worst = std::max(worst, r);
    ok += r <= 1e-9;
  }
  return {ok == 100, std::to_string(ok) + "/100 colorings, worst residual " + num(worst)};
}

Verdict c3_worked_example() {
  const auto [p1, p2] = propagate_crossing({2.0, 1.0, 2.0}, {3.0, 5.0, 7.0}, +1);
  double err = 0.0;
  auto dist = [&](const OctaColor& x, const OctaColor& y) {
    err = std::max({err, std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.m - y.m)});
  };
  dist(p1, {2.0, 7.0 / 13.0, 2.0});
  dist(p2, {3.0, 2.5, 7.0});
  const Mat2 expected{6.0, 0.0, 71.0 / 14.0, 1.0};
  const Mat2 lhs = up_matrix({2.0, 1.0, 2.0}) * up_matrix({3.0, 5.0, 7.0});
  const Mat2 rhs = up_matrix(p2) * up_matrix(p1);
  err = std::max({err, (lhs - expected).norm(), (rhs - expected).norm()});
  return {err <= 1e-12, "max deviation " + num(err)};
}

Verdict c4_shape_routes() {
  int agreed = 0;
  double worst = 0.0;
  for (const Prepared& p : prepare(100, 104)) {
    bool ok = true;
    for (int x = 0; x < p.k.d.num_crossings(); ++x) {
      const ShapeQuad a = shapes_from_rep(p.k.d, p.k.c, p.sc, x);
      const ShapeQuad b = shapes_from_coloring(p.k.d, p.chi, x);
      for (int j = 0; j < 4; ++j) {
        const double r = rel_diff(a.z[j], b.z[j]);
        worst = std::max(worst, r);
        ok &= r <= 1e-9;
      }
    }
    agreed += ok;
  }
  return {agreed == 100, std::to_string(agreed) + "/100 cases, worst relative difference " + num(worst)};
}

Verdict c5_pinched_criterion() {
  std::mt19937_64 rng(105);
  auto corpus = testkit::random_corpus(100, 105);
  // Every fourth case abelian, so both sides of the equivalence occur.
  for (std::size_t i = 0; i < corpus.size(); i += 4) corpus[i].arc_matrices = testkit::abelian_rep(corpus[i].c, rng);
  int cases_ok = 0, pinched = 0, crossings = 0;
  for (const Case& k : corpus) {
    const ShadowColoring sc = testkit::admissible_shadow_of(k, rng);
    const PinchedReport pr = pinched_report(k.d, sc.dec);
    bool ok = true;
    for (int x = 0; x < k.d.num_crossings(); ++x, ++crossings) {
      const bool unit_w = std::abs(shapes_from_rep(k.d, k.c, sc, x).z[ShapeQuad::W] - 1.0) <= 1e-9;
      ok &= static_cast<bool>(pr.pinched[x]) == unit_w;
      pinched += pr.pinched[x];
    }
    cases_ok += ok;
  }
  int kinks_flagged = 0, kink_trials = 0;
  for (const int sign : {1, -1}) {
    Case k = testkit::make_case("kink", testkit::kink_spec(sign));
    for (int t = 0; t < 50; ++t, ++kink_trials) {
      k.arc_matrices = {testkit::random_sl2_matrix(rng)};
      const ShadowColoring sc = testkit::shadow_of(k, rng);
      kinks_flagged += pinched_report(k.d, sc.dec).pinched[0];
    }
  }
  for (const Case& k : testkit::random_corpus(200, 205)) {
    if (k.name.find("kink") == std::string::npos) continue;
    ++kink_trials;
    kinks_flagged += !pinched_report(k.d, testkit::shadow_of(k, rng).dec).d_smooth_candidate();
  }
  return {cases_ok == 100 && kinks_flagged == kink_trials && pinched > 0 && pinched < crossings,
          std::to_string(cases_ok) + "/100 cases (" + std::to_string(pinched) + " of " + std::to_string(crossings) +
              " crossings pinched), kinks flagged " + std::to_string(kinks_flagged) + "/" +
              std::to_string(kink_trials)};
}

Verdict c6_gauge() {
  std::mt19937_64 rng(106);
  const ColVec e2 = ColVec::e2();
  int fixed = 0, inadmissible = 0, worst_tries = 0;
  for (const Case& k : testkit::random_corpus(100, 106)) {
    const ShadowColoring sc = testkit::shadow_of(k, rng, &e2);
    inadmissible += !admissibility_report(k.c, sc).admissible();
    try {
      const AdmissibleGauge g = find_admissible_gauge(k.d, k.c, sc, rng(), 20);
      fixed += admissibility_report(k.c, g.sc).admissible();
      worst_tries = std::max(worst_tries, g.tries);
    } catch (const MathError&) {
    }
  }
  int nonunit = 0, smooth = 0, worst_unit = 0;
  for (const Case& k : testkit::random_corpus(300, 206)) {
    const ShadowColoring sc = testkit::admissible_shadow_of(k, rng);
    if (!pinched_report(k.d, sc.dec).d_smooth_candidate()) continue;
    ++smooth;
    try {
      const NonunitGauge g = find_nonunit_shapes(k.d, k.c, sc, rng(), 20);
      const OctahedralColoring chi = *associated_coloring(k.c, g.sc).coloring;
      bool off = true;
      for (int x = 0; x < k.d.num_crossings(); ++x) {
        for (const Complex z : shapes_from_coloring(k.d, chi, x).z) off &= std::abs(std::abs(z) - 1.0) > 1e-9;
      }
      nonunit += off;
      worst_unit = std::max(worst_unit, g.tries);
    } catch (const MathError&) {
    }
    if (smooth == 100) break;
  }
  return {inadmissible == 100 && fixed == 100 && smooth == 100 && nonunit == 100,
          "admissible " + std::to_string(fixed) + "/" + std::to_string(inadmissible) + " inadmissible seeds (max " +
              std::to_string(worst_tries) + " tries), off unit circle " + std::to_string(nonunit) + "/" +
              std::to_string(smooth) + " (max " + std::to_string(worst_unit) + " tries)"};
}

Verdict c7_gradient() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> re(0.0, 1.0), im(-0.4, 0.4), mu(-0.3, 0.3);
  int points = 0;
  double worst = 0.0;
  for (const Case& k : testkit::random_corpus(300, 107)) {
    std::vector<Complex> m(k.c.num_components);
    for (Complex& z : m) z = {mu(rng), mu(rng)};
    const PotentialProblem p(k.d, k.c, m);
    std::vector<Complex> beta(k.d.num_segments());
    for (Complex& z : beta) z = {re(rng), im(rng)};
    // Diagrams with a Reidemeister-I loop have no analytic point.
    if (p.integer_distance(beta) < 1e-3) continue;
    const auto grad = potential_gradient(p, beta);
    const double h = 1e-6;
    for (int i = 0; i < k.d.num_segments(); ++i) {
      auto plus = beta, minus = beta;
      plus[i] += h;
      minus[i] -= h;
      const Complex fd = (potential_value(p, plus) - potential_value(p, minus)) / (2 * h);
      worst = std::max(worst, std::abs(fd - grad[i]) / std::max(1.0, std::abs(grad[i])));
    }
    if (++points == 100) break;
  }
  return {points == 100 && worst <= 1e-6,
          std::to_string(points) + " analytic points, worst relative error " + num(worst)};
}

Verdict c8_figure_eight() {
  const auto t0 = std::chrono::steady_clock::now();
  const Case k = testkit::make_case("f8", testkit::figure_eight_spec());
  const auto sol = find_geometric_solution(k.d, k.c, 1);
  const double t = seconds_since(t0);
  if (!sol) return {false, "no critical point with positive volume, " + num(t) + " s"};
  const double crossing = verify_octahedral(k.d, sol->coloring).max_residual;
  const auto hol = reconstruct_holonomy(k.d, k.c, sol->coloring, ColVec::e1());
  double det = 0.0;
  for (const Mat2& g : hol) det = std::max(det, std::abs(g.det() - 1.0));
  const double wirt = wirtinger_residual(k.d, Sl2Coloring{hol}).max_residual;
  const double oracle = testkit::figure_eight_volume_oracle();
  const double err = std::abs(sol->volume - oracle);
  char vol[40];
  std::snprintf(vol, sizeof vol, "%.10f", sol->volume);
  return {crossing <= 1e-9 && wirt <= 1e-8 && det <= 1e-8 && err <= 1e-6 && t < 120.0,
          "volume " + std::string(vol) + " (oracle error " + num(err) + "), crossing residual " + num(crossing) +
              ", Wirtinger residual " + num(wirt) + ", " + num(t) + " s"};
}

Verdict c9_segment_equations() {
  std::mt19937_64 rng(109);
  int checked = 0, pinched = 0, segments = 0;
  double worst = 0.0;
  for (const Case& k : testkit::random_corpus(100, 109)) {
    const ShadowColoring sc = testkit::admissible_shadow_of(k, rng);
    const OctahedralColoring chi = *associated_coloring(k.c, sc).coloring;
    if (!verify_octahedral(k.d, chi).pass) return {false, k.name + ": associated coloring is not valid"};
    // The potential is analytic only away from pinched crossings.
    if (!pinched_report(k.d, sc.dec).d_smooth_candidate()) {
      ++pinched;
      continue;
    }
    std::vector<Complex> beta(k.d.num_segments()), mu(k.c.num_components);
    for (int i = 0; i < k.d.num_segments(); ++i) {
      beta[i] = std::log(chi.chi[i].b) / kTwoPiI;
      mu[k.c.component_of[i]] = std::log(chi.chi[i].m) / kTwoPiI;
    }
    const PotentialProblem p(k.d, k.c, mu);
    const auto eq = segment_equations(p, beta);
    for (int i = 0; i < k.d.num_segments(); ++i) {
      // A boundary segment of a tangle meets only one crossing.
      if (k.d.head(i).kind != SegmentEnd::Kind::Crossing || k.d.tail(i).kind != SegmentEnd::Kind::Crossing) continue;
      worst = std::max(worst, std::abs(eq[i] - 1.0));
      ++segments;
    }
    ++checked;
  }
  return {checked >= 50 && worst <= 1e-8,
          std::to_string(checked) + " non-pinched colorings (" + std::to_string(segments) + " segments, " +
              std::to_string(pinched) + " pinched skipped), worst |exp(dPhi) - 1| " + num(worst)};
}

Verdict c10_determinism() {
  const std::string dir = OCTA_DATA_DIR;
  const std::vector<std::vector<std::string>> runs{
      {"report", dir + "/figure8.json", "--rep", dir + "/figure8_rep.json", "--format", "json", "--seed", "42"},
      {"gauge-fix", dir + "/one_crossing.json", "--rep", dir + "/one_crossing_rep.json", "--shadow", "0,0,1,0",
       "--unit-circle", "--format", "json", "--seed", "42"},
      {"solve", dir + "/figure8.json", "--format", "json", "--seed", "42"},
  };
  int identical = 0;
  for (const auto& args : runs) {
    std::ostringstream a, b, err;
    const int ca = run_command(args, a, err), cb = run_command(args, b, err);
    identical += ca == 0 && cb == 0 && a.str() == b.str();
  }
  return {identical == static_cast<int>(runs.size()),
          std::to_string(identical) + "/" + std::to_string(runs.size()) + " commands byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"holonomy matches representation", c1_holonomies_match},
      {"associated coloring satisfies crossing equations", c2_crossing_equations},
      {"worked crossing example", c3_worked_example},
      {"shape formulas agree", c4_shape_routes},
      {"pinched iff z_W = 1", c5_pinched_criterion},
      {"gauge searches", c6_gauge},
      {"potential gradient", c7_gradient},
      {"figure-eight geometric point", c8_figure_eight},
      {"segment equations at colorings", c9_segment_equations},
      {"deterministic reports", c10_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
