#pragma once

#include <string>
#include <utility>
#include <vector>

#include "octa/coloring.hpp"

namespace octa {

/// Octahedral color per segment.
struct OctahedralColoring {
  std::vector<OctaColor> chi;
};

struct AdmissibilityViolation {
  enum class Kind {
    RegionPairing,     // pairing(u_j, e2) = 0
    DecorationE2,      // v_i e2 = 0
    DecorationShadow,  // v_i u_up(i) = 0
  };
  Kind kind;
  int index;         // region for RegionPairing, segment otherwise
  double magnitude;  // scale-free size of the vanishing quantity
};

struct AdmissibilityReport {
  std::vector<AdmissibilityViolation> violations;
  [[nodiscard]] bool admissible() const { return violations.empty(); }
};

/// Segments are named by label, regions by index.
std::string describe(const Diagram& d, const AdmissibilityViolation& v);

/// Every vanishing denominator of the associated coloring, each measured
/// relative to the norms involved and gated by ctx.zero_gate.
AdmissibilityReport admissibility_report(const Combinatorics& c, const ShadowColoring& sc,
                                         const NumericContext& ctx = {});

struct AssociatedColoring {
  AdmissibilityReport report;
  std::optional<OctahedralColoring> coloring;  // set iff admissible
};

/// chi_i = (pairing(u_dn, e2)/pairing(u_up, e2), -(v_i e2)/(v_i u_up), m_i).
AssociatedColoring associated_coloring(const Combinatorics& c, const ShadowColoring& sc,
                                       const NumericContext& ctx = {});

/// Outgoing colors (1', 2') from incoming (1, 2) at a crossing of the given
/// sign. Throws MathError when the factor A or an inner denominator vanishes.
std::pair<OctaColor, OctaColor> propagate_crossing(const OctaColor& chi1, const OctaColor& chi2,
                                                   int sign, const NumericContext& ctx = {});

struct OctahedralCheck {
  double max_residual = 0.0;
  int worst_crossing = -1;
  std::vector<double> per_crossing;
  bool pass = true;
};

/// Relative residual of the six crossing equations at every crossing.
OctahedralCheck verify_octahedral(const Diagram& d, const OctahedralColoring& chi,
                                  const NumericContext& ctx = {});

/// Largest relative residual of the three groupoid relations among the
/// up/dn matrices at one crossing.
double groupoid_residual(const Crossing& x, const OctahedralColoring& chi);

/// Hol(s_j^+) for every region, by the BFS tree of c.
std::vector<Mat2> over_path_holonomy(const Combinatorics& c, const OctahedralColoring& chi);

/// Evaluates a groupoid word: x_i^+ -> up(chi_i), x_i^- -> dn(chi_i).
Mat2 holonomy_of(const GroupoidWord& w, const OctahedralColoring& chi);

/// Per-segment images up(u0) Hol(s_up) around(chi_i) Hol(s_up)^{-1} up(u0)^{-1}.
/// Checks the groupoid relations at every crossing first (MathError).
std::vector<Mat2> reconstruct_holonomy(const Diagram& d, const Combinatorics& c,
                                       const OctahedralColoring& chi, const ColVec& u0,
                                       const NumericContext& ctx = {});

struct MatchCheck {
  double max_residual = 0.0;
  int worst_segment = -1;
  bool pass = true;
};

/// Compares the reconstructed holonomy (u0 = shadow of the base region)
/// with the coloring's matrices.
MatchCheck verify_match(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                        const OctahedralColoring& chi, const NumericContext& ctx = {});

/// The unique chi with up(u) around(chi) up(u)^{-1} = g and inverse
/// eigenvalue m. Throws MathError when g is off that pattern.
OctaColor shadow_lemma_extract(const Mat2& g, const ColVec& u, Complex m,
                               const NumericContext& ctx = {});

}  // namespace octa
