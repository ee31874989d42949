#include "octa/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "octa/dilog.hpp"

namespace octa {

namespace {

Complex hopf_or_throw(const RowVec& v, int crossing, const char* corner) {
  const auto h = hopf(v);
  if (!h) {
    std::ostringstream msg;
    msg << "crossing " << crossing << ": Hopf value at infinity at corner " << corner;
    throw MathError(msg.str());
  }
  return *h;
}

Mat2 corner_up(const ColVec& u, int crossing, const char* corner) {
  if (u.x == 0.0) {
    std::ostringstream msg;
    msg << "crossing " << crossing << ": corner " << corner << " is inadmissible";
    throw MathError(msg.str());
  }
  return up_of(u);
}

}  // namespace

ShapeQuad shapes_from_coloring(const Diagram& d, const OctahedralColoring& chi, int crossing) {
  const Crossing& x = d.crossing(crossing);
  const OctaColor& c1 = chi.chi[x.at(Role::In1)];
  const OctaColor& c2 = chi.chi[x.at(Role::In2)];
  const Complex b1p = chi.chi[x.at(Role::Out1)].b;
  const Complex b2p = chi.chi[x.at(Role::Out2)].b;
  ShapeQuad q;
  q.z[ShapeQuad::N] = b2p / c1.b;
  q.z[ShapeQuad::W] = c2.b / (c1.m * c1.b);
  q.z[ShapeQuad::S] = c2.m * c2.b / (c1.m * b1p);
  q.z[ShapeQuad::E] = c2.m * b2p / b1p;
  return q;
}

ShapeQuad shapes_from_rep(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                          int crossing) {
  const Crossing& x = d.crossing(crossing);
  const auto& corners = c.corners[crossing];
  auto v = [&](Role r) { return sc.dec.lines[x.at(r)].v; };
  auto ratio = [&](const RowVec& num, const RowVec& den, int corner, const char* name) {
    const Mat2 U = corner_up(sc.u[corners[corner]], crossing, name);
    return hopf_or_throw(num * U, crossing, name) / hopf_or_throw(den * U, crossing, name);
  };
  ShapeQuad q;
  q.z[ShapeQuad::N] = ratio(v(Role::In1), v(Role::Out2), ShapeQuad::N, "N");
  q.z[ShapeQuad::W] = ratio(v(Role::In1), v(Role::In2), ShapeQuad::W, "W");
  q.z[ShapeQuad::S] = ratio(v(Role::Out1), v(Role::In2), ShapeQuad::S, "S");
  q.z[ShapeQuad::E] = ratio(v(Role::Out1), v(Role::Out2), ShapeQuad::E, "E");
  return q;
}

bool PinchedReport::d_smooth_candidate() const {
  return std::none_of(pinched.begin(), pinched.end(), [](bool p) { return p; });
}

PinchedReport pinched_report(const Diagram& d, const DecoratedColoring& dec,
                             const NumericContext& ctx) {
  PinchedReport out;
  for (const Crossing& x : d.crossings()) {
    const double s = projective_sine(dec.lines[x.at(Role::In1)].v, dec.lines[x.at(Role::In2)].v);
    out.sine.push_back(s);
    out.pinched.push_back(s <= ctx.projective_tol);
  }
  return out;
}

bool arc_faithful_at(const Diagram& d, const Sl2Coloring& rep, const NumericContext& ctx) {
  for (const Crossing& x : d.crossings()) {
    if (rel_diff(rep.g[x.at(x.over_in())], rep.g[x.at(x.under_in())]) <= ctx.relation_tol) {
      return false;
    }
  }
  return true;
}

double volume(const Diagram& d, const OctahedralColoring& chi, const NumericContext& ctx) {
  static constexpr std::array<double, 4> kSigns{1.0, -1.0, 1.0, -1.0};
  double vol = 0.0;
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const ShapeQuad q = shapes_from_coloring(d, chi, ci);
    for (int k = 0; k < 4; ++k) {
      if (std::abs(q.z[k] - 1.0) <= ctx.projective_tol) {
        throw MathError("crossing " + std::to_string(ci) + " is pinched; volume undefined");
      }
      vol += kSigns[k] * bloch_wigner(q.z[k]);
    }
  }
  return vol;
}

}  // namespace octa
