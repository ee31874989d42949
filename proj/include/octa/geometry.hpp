#pragma once

#include <array>
#include <vector>

#include "octa/octahedral.hpp"

namespace octa {

/// Shape parameters at one crossing, in the order N, W, S, E.
struct ShapeQuad {
  enum Corner { N = 0, W = 1, S = 2, E = 3 };
  std::array<Complex, 4> z{};
};

/// z_N = b_2'/b_1, z_W = b_2/(m_1 b_1), z_S = m_2 b_2/(m_1 b_1'), z_E = m_2 b_2'/b_1'.
ShapeQuad shapes_from_coloring(const Diagram& d, const OctahedralColoring& chi, int crossing);

/// Hopf-map ratios at the corner shadows. Throws MathError when a corner is
/// inadmissible or a Hopf value is at infinity.
ShapeQuad shapes_from_rep(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                          int crossing);

struct PinchedReport {
  std::vector<bool> pinched;   // per crossing
  std::vector<double> sine;    // |sin| of the angle between v_1 and v_2
  [[nodiscard]] bool d_smooth_candidate() const;
};

/// Crossing pinched iff the decorations of the incoming strands coincide.
PinchedReport pinched_report(const Diagram& d, const DecoratedColoring& dec,
                             const NumericContext& ctx = {});

/// Over and under generators distinct as matrices at every crossing.
bool arc_faithful_at(const Diagram& d, const Sl2Coloring& rep, const NumericContext& ctx = {});

/// Sum over crossings of s_k D(z_k) with s = (+, -, +, -).
double volume(const Diagram& d, const OctahedralColoring& chi, const NumericContext& ctx = {});

}  // namespace octa
