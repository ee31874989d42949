#include "octa/gauge.hpp"

#include <sstream>

#include "octa/geometry.hpp"

namespace octa {

ShadowColoring apply_gauge(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                           const GaugeMove& mv, const NumericContext& ctx) {
  const Mat2 hi = mv.h.inverse();
  if (mv.kind == GaugeMove::Kind::B) {
    // g_i stay fixed, so only the base shadow is free.
    return propagate_shadow(d, c, sc.dec, c.base_region, hi * sc.u[c.base_region], ctx);
  }
  ShadowColoring out = sc;
  for (Mat2& g : out.dec.rep.g) g = hi * g * mv.h;
  for (RowLine& L : out.dec.lines) L.v = normalized(L.v * mv.h);
  for (ColVec& u : out.u) u = hi * u;
  return out;
}

Mat2 random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  auto z = [&] { return Complex(n01(rng), n01(rng)); };
  for (;;) {
    Mat2 g{z(), z(), z(), z()};
    const Complex det = g.det();
    if (std::abs(det) < 1e-6) continue;
    g.a /= det;
    g.c /= det;
    return g;
  }
}

AdmissibleGauge find_admissible_gauge(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                                      std::uint64_t seed, int max_tries,
                                      const NumericContext& ctx) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < max_tries; ++t) {
    AdmissibleGauge out;
    if (t > 0) {
      out.a.h = random_sl2(rng);
      out.b.h = random_sl2(rng).inverse();
    }
    out.a.kind = GaugeMove::Kind::A;
    out.b.kind = GaugeMove::Kind::B;
    out.sc = apply_gauge(d, c, apply_gauge(d, c, sc, out.a, ctx), out.b, ctx);
    if (admissibility_report(c, out.sc, ctx).admissible()) {
      out.tries = t + 1;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "no admissible gauge found in " << max_tries << " tries";
  throw MathError(msg.str());
}

NonunitGauge find_nonunit_shapes(const Diagram& d, const Combinatorics& c,
                                 const ShadowColoring& sc, std::uint64_t seed, int max_tries,
                                 const NumericContext& ctx) {
  const PinchedReport pr = pinched_report(d, sc.dec, ctx);
  for (std::size_t ci = 0; ci < pr.pinched.size(); ++ci) {
    if (pr.pinched[ci]) {
      throw MathError("crossing " + std::to_string(ci) +
                      " is pinched, unit-circle avoidance impossible");
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < max_tries; ++t) {
    NonunitGauge out;
    out.move.kind = GaugeMove::Kind::A;
    if (t > 0) out.move.h = random_sl2(rng);
    out.sc = apply_gauge(d, c, sc, out.move, ctx);
    bool ok = true;
    try {
      for (int ci = 0; ci < d.num_crossings() && ok; ++ci) {
        for (const Complex z : shapes_from_rep(d, c, out.sc, ci).z) {
          if (!(std::abs(std::abs(z) - 1.0) > ctx.unit_circle_gate)) ok = false;
        }
      }
    } catch (const MathError&) {
      ok = false;
    }
    if (ok) {
      out.tries = t + 1;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "no gauge moving all shapes off the unit circle in " << max_tries << " tries";
  throw MathError(msg.str());
}

}  // namespace octa
