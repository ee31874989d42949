#pragma once

#include <optional>
#include <vector>

#include "octa/diagram.hpp"
#include "octa/mat2.hpp"

namespace octa {

/// SL(2,C) matrix per segment, constant along arcs.
struct Sl2Coloring {
  std::vector<Mat2> g;
};

/// Invariant line per segment: lines[i].v g_i = lines[i].m^{-1} lines[i].v.
struct DecoratedColoring {
  Sl2Coloring rep;
  std::vector<RowLine> lines;
};

/// Shadow vector per region: u[dn(i)] = g_i u[up(i)].
struct ShadowColoring {
  DecoratedColoring dec;
  std::vector<ColVec> u;
};

/// Per-component decoration request. With neither field set the first
/// eigenline is used; central meridians need an explicit line.
struct LineChoice {
  std::optional<int> index;
  std::optional<RowVec> line;
};

/// Largest relation residual over crossings, with the crossing attaining it.
struct RelationResidual {
  double max_residual = 0.0;
  int worst = -1;
};

/// Wirtinger residual of a per-segment coloring: at positive crossings
/// g_2' = g_1^{-1} g_2 g_1, at negative ones g_1' = g_2 g_1 g_2^{-1}, plus
/// constancy along arcs.
RelationResidual wirtinger_residual(const Diagram& d, const Sl2Coloring& rep);

/// Expands arc colors (indexed by arc) to segments and validates SL2
/// membership and every crossing relation. Throws InputError off SL2 and
/// MathError naming the first failing crossing.
Sl2Coloring check_representation(const Diagram& d, const Combinatorics& c,
                                 const std::vector<Mat2>& arc_matrices,
                                 const NumericContext& ctx = {});

/// Chooses a line per component (choices indexed by component, may be
/// shorter) and propagates it along the strand: L_2' = L_2 g_1 at positive
/// crossings and L_1' = L_1 g_2^{-1} at negative ones.
DecoratedColoring decorate(const Diagram& d, const Combinatorics& c, const Sl2Coloring& rep,
                           const std::vector<LineChoice>& choices,
                           const NumericContext& ctx = {});

/// Fills region vectors outward from the seed region and checks the rule on
/// every segment. Throws MathError on nontrivial monodromy.
ShadowColoring propagate_shadow(const Diagram& d, const Combinatorics& c,
                                const DecoratedColoring& dec, int seed_region,
                                const ColVec& u_seed, const NumericContext& ctx = {});

/// max_i |u_dn(i) - g_i u_up(i)| / max(|u_dn(i)|, |g_i u_up(i)|).
double shadow_residual(const Combinatorics& c, const ShadowColoring& sc);

}  // namespace octa
