#include "octa/octahedral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace octa {

namespace {

void require_nonzero(Complex z, const char* what, const NumericContext& ctx) {
  if (!(std::abs(z) > ctx.zero_gate * 1e-6) || !std::isfinite(std::abs(z))) {
    throw MathError(std::string("degenerate crossing: ") + what + " vanishes");
  }
}

double color_diff(const OctaColor& x, const OctaColor& y) {
  return std::max({rel_diff(x.a, y.a), rel_diff(x.b, y.b), rel_diff(x.m, y.m)});
}

}  // namespace

std::string describe(const Diagram& d, const AdmissibilityViolation& v) {
  std::ostringstream out;
  switch (v.kind) {
    case AdmissibilityViolation::Kind::RegionPairing:
      out << "region " << v.index << ": pairing(u, e2) = 0";
      break;
    case AdmissibilityViolation::Kind::DecorationE2:
      out << "segment " << d.label(v.index) << ": v e2 = 0";
      break;
    case AdmissibilityViolation::Kind::DecorationShadow:
      out << "segment " << d.label(v.index) << ": v u_up = 0";
      break;
  }
  out << " (magnitude " << v.magnitude << ")";
  return out.str();
}

AdmissibilityReport admissibility_report(const Combinatorics& c, const ShadowColoring& sc,
                                         const NumericContext& ctx) {
  using K = AdmissibilityViolation::Kind;
  AdmissibilityReport rep;
  for (int j = 0; j < c.num_regions; ++j) {
    const ColVec& u = sc.u[j];
    const double mag = std::abs(pairing(u, ColVec::e2())) / u.norm();
    if (!(mag > ctx.zero_gate)) rep.violations.push_back({K::RegionPairing, j, mag});
  }
  for (std::size_t i = 0; i < sc.dec.lines.size(); ++i) {
    const RowVec& v = sc.dec.lines[i].v;
    const double e2 = std::abs(v * ColVec::e2()) / v.norm();
    if (!(e2 > ctx.zero_gate)) rep.violations.push_back({K::DecorationE2, static_cast<int>(i), e2});
    const ColVec& u = sc.u[c.up[i]];
    const double vu = std::abs(v * u) / (v.norm() * u.norm());
    if (!(vu > ctx.zero_gate)) {
      rep.violations.push_back({K::DecorationShadow, static_cast<int>(i), vu});
    }
  }
  return rep;
}

AssociatedColoring associated_coloring(const Combinatorics& c, const ShadowColoring& sc,
                                       const NumericContext& ctx) {
  AssociatedColoring out;
  out.report = admissibility_report(c, sc, ctx);
  if (!out.report.admissible()) return out;
  OctahedralColoring chi;
  chi.chi.resize(sc.dec.lines.size());
  for (std::size_t i = 0; i < chi.chi.size(); ++i) {
    const ColVec& up = sc.u[c.up[i]];
    const ColVec& dn = sc.u[c.dn[i]];
    const RowLine& L = sc.dec.lines[i];
    chi.chi[i] = {pairing(dn, ColVec::e2()) / pairing(up, ColVec::e2()),
                  -(L.v * ColVec::e2()) / (L.v * up), L.m};
  }
  out.coloring = std::move(chi);
  return out;
}

std::pair<OctaColor, OctaColor> propagate_crossing(const OctaColor& x1, const OctaColor& x2,
                                                   int sign, const NumericContext& ctx) {
  const auto [a1, b1, m1] = x1;
  const auto [a2, b2, m2] = x2;
  for (const Complex z : {a1, b1, m1, a2, b2, m2}) require_nonzero(z, "an input component", ctx);
  if (sign > 0) {
    const Complex A = 1.0 - (m1 * b1 / b2) * (1.0 - a1 / m1) * (1.0 - 1.0 / (m2 * a2));
    require_nonzero(A, "the factor A", ctx);
    const Complex w = 1.0 - b2 / (m1 * b1);
    const Complex inner1 = 1.0 - m2 * a2 * w;
    require_nonzero(inner1, "the b_1' denominator", ctx);
    const Complex b2p = b1 * (1.0 - (m1 / a1) * w);
    require_nonzero(b2p, "b_2'", ctx);
    return {{a1 / A, m2 * b2 / (m1 * inner1), m1}, {a2 * A, b2p, m2}};
  }
  const Complex A = 1.0 - (b2 / (m1 * b1)) * (1.0 - m1 * a1) * (1.0 - m2 / a2);
  require_nonzero(A, "the factor A", ctx);
  const Complex w = 1.0 - m1 * b1 / b2;
  const Complex b1p = (m2 * b2 / m1) * (1.0 - (a2 / m2) * w);
  require_nonzero(b1p, "b_1'", ctx);
  const Complex inner2 = 1.0 - w / (m1 * a1);
  require_nonzero(inner2, "the b_2' denominator", ctx);
  return {{a1 / A, b1p, m1}, {a2 * A, b1 / inner2, m2}};
}

OctahedralCheck verify_octahedral(const Diagram& d, const OctahedralColoring& chi,
                                  const NumericContext& ctx) {
  OctahedralCheck out;
  out.per_crossing.resize(d.num_crossings());
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const Crossing& x = d.crossing(ci);
    double r = std::numeric_limits<double>::infinity();
    try {
      const auto [o1, o2] =
          propagate_crossing(chi.chi[x.at(Role::In1)], chi.chi[x.at(Role::In2)], x.sign, ctx);
      r = std::max(color_diff(chi.chi[x.at(Role::Out1)], o1), color_diff(chi.chi[x.at(Role::Out2)], o2));
      if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    } catch (const MathError&) {
    }
    out.per_crossing[ci] = r;
    if (out.worst_crossing < 0 || r > out.max_residual) {
      out.max_residual = r;
      out.worst_crossing = ci;
    }
  }
  out.pass = out.max_residual <= ctx.relation_tol;
  return out;
}

double groupoid_residual(const Crossing& x, const OctahedralColoring& chi) {
  const OctaColor& c1 = chi.chi[x.at(Role::In1)];
  const OctaColor& c2 = chi.chi[x.at(Role::In2)];
  const OctaColor& c1p = chi.chi[x.at(Role::Out1)];
  const OctaColor& c2p = chi.chi[x.at(Role::Out2)];
  const double above = rel_diff(up_matrix(c1) * up_matrix(c2), up_matrix(c2p) * up_matrix(c1p));
  const double below =
      rel_diff(down_matrix(c1) * down_matrix(c2), down_matrix(c2p) * down_matrix(c1p));
  const double thru =
      x.sign > 0
          ? rel_diff(down_matrix(c1) * up_matrix(c2), up_matrix(c2p) * down_matrix(c1p))
          : rel_diff(up_matrix(c1) * down_matrix(c2), down_matrix(c2p) * up_matrix(c1p));
  return std::max({above, below, thru});
}

std::vector<Mat2> over_path_holonomy(const Combinatorics& c, const OctahedralColoring& chi) {
  std::vector<Mat2> hol(c.num_regions, Mat2::identity());
  for (const int r : c.bfs_order) {
    if (r == c.base_region) continue;
    const DualStep& p = c.parent[r];
    const Mat2 step = up_matrix(chi.chi[p.segment]);
    hol[r] = hol[p.to] * (p.eps > 0 ? step : step.inverse());
  }
  return hol;
}

Mat2 holonomy_of(const GroupoidWord& w, const OctahedralColoring& chi) {
  Mat2 out = Mat2::identity();
  for (const GroupoidLetter& l : w.letters) {
    const OctaColor& x = chi.chi.at(l.segment);
    const Mat2 m = l.over ? up_matrix(x) : down_matrix(x);
    out = out * (l.exponent > 0 ? m : m.inverse());
  }
  return out;
}

std::vector<Mat2> reconstruct_holonomy(const Diagram& d, const Combinatorics& c,
                                       const OctahedralColoring& chi, const ColVec& u0,
                                       const NumericContext& ctx) {
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const double r = groupoid_residual(d.crossing(ci), chi);
    if (!(r <= ctx.relation_tol)) {
      std::ostringstream msg;
      msg << "groupoid relations fail at crossing " << ci << " (residual " << r << ")";
      throw MathError(msg.str());
    }
  }
  const std::vector<Mat2> hol = over_path_holonomy(c, chi);
  const Mat2 U = up_of(u0);
  const Mat2 Ui = U.inverse();
  std::vector<Mat2> out(d.num_segments());
  for (int s = 0; s < d.num_segments(); ++s) {
    const Mat2& h = hol[c.up[s]];
    out[s] = U * h * around_matrix(chi.chi[s]) * h.inverse() * Ui;
  }
  return out;
}

MatchCheck verify_match(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                        const OctahedralColoring& chi, const NumericContext& ctx) {
  MatchCheck out;
  std::vector<Mat2> hol;
  try {
    hol = reconstruct_holonomy(d, c, chi, sc.u[c.base_region], ctx);
  } catch (const MathError&) {
    out.max_residual = std::numeric_limits<double>::infinity();
    out.pass = false;
    return out;
  }
  for (int s = 0; s < d.num_segments(); ++s) {
    double r = rel_diff(hol[s], sc.dec.rep.g[s]);
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    if (out.worst_segment < 0 || r > out.max_residual) {
      out.max_residual = r;
      out.worst_segment = s;
    }
  }
  out.pass = out.max_residual <= ctx.relation_tol;
  return out;
}

OctaColor shadow_lemma_extract(const Mat2& g, const ColVec& u, Complex m,
                               const NumericContext& ctx) {
  const Mat2 U = up_of(u);
  // Row eigenvector for eigenvalue 1/m: v (g - 1/m) = 0.
  const Mat2 M = g - Mat2::identity() * (1.0 / m);
  RowVec v{M.c, -M.a};
  const RowVec alt{M.d, -M.b};
  if (alt.norm() > v.norm()) v = alt;
  if (v.norm() == 0.0) v = {0.0, 1.0};
  const ColVec gu = g * u;
  const OctaColor chi{pairing(gu, ColVec::e2()) / pairing(u, ColVec::e2()),
                      -(v * ColVec::e2()) / (v * u), m};
  const double r = rel_diff(U * around_matrix(chi) * U.inverse(), g);
  if (!(r <= ctx.relation_tol)) {
    std::ostringstream msg;
    msg << "matrix is not conjugate to the around form by up(u) (residual " << r << ")";
    throw MathError(msg.str());
  }
  return chi;
}

}  // namespace octa
