#include "octa/coloring.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace octa {

namespace {

double relation_residual(const Crossing& x, const std::vector<Mat2>& g) {
  const Mat2& g1 = g[x.at(Role::In1)];
  const Mat2& g2 = g[x.at(Role::In2)];
  const Mat2& g1p = g[x.at(Role::Out1)];
  const Mat2& g2p = g[x.at(Role::Out2)];
  if (x.sign > 0) {
    return std::max(rel_diff(g1p, g1), rel_diff(g2p, g1.inverse() * g2 * g1));
  }
  return std::max(rel_diff(g2p, g2), rel_diff(g1p, g2 * g1 * g2.inverse()));
}

RowVec next_line(const Crossing& x, Role in, const RowVec& v, const std::vector<Mat2>& g) {
  if (x.sign > 0) return in == Role::In1 ? v : v * g[x.at(Role::In1)];
  return in == Role::In2 ? v : v * g[x.at(Role::In2)].inverse();
}

}  // namespace

RelationResidual wirtinger_residual(const Diagram& d, const Sl2Coloring& rep) {
  RelationResidual out;
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    double r = relation_residual(d.crossing(ci), rep.g);
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    if (out.worst < 0 || r > out.max_residual) {
      out.max_residual = r;
      out.worst = ci;
    }
  }
  return out;
}

Sl2Coloring check_representation(const Diagram& d, const Combinatorics& c,
                                 const std::vector<Mat2>& arc_matrices,
                                 const NumericContext& ctx) {
  if (static_cast<int>(arc_matrices.size()) != c.num_arcs) {
    std::ostringstream msg;
    msg << "representation gives " << arc_matrices.size() << " arc matrices, diagram has "
        << c.num_arcs << " arcs";
    throw InputError(msg.str());
  }
  for (int a = 0; a < c.num_arcs; ++a) {
    if (!is_sl2(arc_matrices[a], ctx)) {
      std::ostringstream msg;
      msg << "matrix of arc " << d.label(c.arc_segments[a].front()) << " has det "
          << arc_matrices[a].det() << ", not in SL2";
      throw InputError(msg.str());
    }
  }
  Sl2Coloring rep;
  rep.g.resize(d.num_segments());
  for (int s = 0; s < d.num_segments(); ++s) rep.g[s] = arc_matrices[c.arc_of[s]];
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const double r = relation_residual(d.crossing(ci), rep.g);
    if (!(r <= ctx.relation_tol)) {
      std::ostringstream msg;
      msg << "Wirtinger relation fails at crossing " << ci << " (residual " << r << ")";
      throw MathError(msg.str());
    }
  }
  return rep;
}

DecoratedColoring decorate(const Diagram& d, const Combinatorics& c, const Sl2Coloring& rep,
                           const std::vector<LineChoice>& choices, const NumericContext& ctx) {
  DecoratedColoring dec;
  dec.rep = rep;
  dec.lines.resize(d.num_segments());
  for (int k = 0; k < c.num_components; ++k) {
    const std::vector<int>& seq = c.component_sequence[k];
    const int start = seq.front();
    const Mat2& g0 = rep.g[start];
    const LineChoice choice = k < static_cast<int>(choices.size()) ? choices[k] : LineChoice{};
    RowVec v;
    if (choice.line) {
      v = *choice.line;
      if (v.norm() == 0.0) throw InputError("decoration line must be nonzero");
      try {
        (void)inverse_eigenvalue(g0, v, ctx);
      } catch (const MathError&) {
        std::ostringstream msg;
        msg << "decoration line for the component of segment " << d.label(start)
            << " is not invariant under its meridian";
        throw InputError(msg.str());
      }
    } else {
      const EigenLines el = eigen_lines(g0, ctx);
      if (el.kind == EigenLines::Kind::All) {
        std::ostringstream msg;
        msg << "component of segment " << d.label(start)
            << " has central meridian image; an explicit decoration line is required";
        throw InputError(msg.str());
      }
      int index = choice.index.value_or(0);
      if (el.kind == EigenLines::Kind::One) index = 0;
      if (index < 0 || index >= static_cast<int>(el.lines.size())) {
        throw InputError("decoration index out of range");
      }
      v = el.lines[index].v;
    }
    for (std::size_t p = 0; p < seq.size(); ++p) {
      const int s = seq[p];
      v = normalized(v);
      dec.lines[s] = {v, inverse_eigenvalue(rep.g[s], v, ctx)};
      const SegmentEnd& h = d.head(s);
      if (h.kind == SegmentEnd::Kind::Crossing) v = next_line(d.crossing(h.crossing), h.role, v, rep.g);
    }
    if (c.component_closed[k] && d.head(seq.back()).kind == SegmentEnd::Kind::Crossing) {
      const double sine = projective_sine(v, dec.lines[start].v);
      if (!(sine <= ctx.projective_tol)) {
        std::ostringstream msg;
        msg << "decoration does not close up along the component of segment " << d.label(start)
            << " (sine " << sine << ")";
        throw MathError(msg.str());
      }
    }
  }
  return dec;
}

double shadow_residual(const Combinatorics& c, const ShadowColoring& sc) {
  double worst = 0.0;
  for (std::size_t s = 0; s < c.up.size(); ++s) {
    const ColVec lhs = sc.u[c.dn[s]];
    const ColVec rhs = sc.dec.rep.g[s] * sc.u[c.up[s]];
    const double scale = std::max({lhs.norm(), rhs.norm(), 1e-300});
    worst = std::max(worst, (lhs - rhs).norm() / scale);
  }
  return worst;
}

ShadowColoring propagate_shadow(const Diagram& d, const Combinatorics& c,
                                const DecoratedColoring& dec, int seed_region,
                                const ColVec& u_seed, const NumericContext& ctx) {
  if (seed_region < 0 || seed_region >= c.num_regions) throw InputError("seed region out of range");
  if (u_seed.norm() == 0.0) throw InputError("shadow seed must be nonzero");
  ShadowColoring sc;
  sc.dec = dec;
  sc.u.assign(c.num_regions, ColVec{});
  std::vector<bool> set(c.num_regions, false);
  sc.u[seed_region] = u_seed;
  set[seed_region] = true;
  std::deque<int> queue{seed_region};
  while (!queue.empty()) {
    const int r = queue.front();
    queue.pop_front();
    for (const DualStep& step : c.adjacency[r]) {
      if (set[step.to]) continue;
      const Mat2& g = dec.rep.g[step.segment];
      sc.u[step.to] = step.eps > 0 ? g * sc.u[r] : g.inverse() * sc.u[r];
      set[step.to] = true;
      queue.push_back(step.to);
    }
  }
  const double r = shadow_residual(c, sc);
  if (!(r <= ctx.relation_tol)) {
    std::ostringstream msg;
    msg << "shadow propagation has nontrivial monodromy (residual " << r << ")";
    throw MathError(msg.str());
  }
  (void)d;
  return sc;
}

}  // namespace octa
