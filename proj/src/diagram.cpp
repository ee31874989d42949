#include "octa/diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "octa/numeric.hpp"

namespace octa {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<int> parent_;
};

// Relabels union-find classes densely in order of first appearance.
std::vector<int> dense_classes(UnionFind& uf, int n, int& count) {
  std::map<int, int> ids;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    const auto [it, inserted] = ids.emplace(uf.find(i), static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  count = static_cast<int>(ids.size());
  return out;
}

int ccw_position(Role r) {
  for (int p = 0; p < 4; ++p) {
    if (kCcwRoles[p] == r) return p;
  }
  return -1;
}

bool is_out(Role r) { return r == Role::Out1 || r == Role::Out2; }

// Darts: 2*s is segment s traversed forward (tail to head), 2*s+1 backward.
// next_dart keeps the face on the left.
int next_dart(const Diagram& d, int dart) {
  const int s = dart / 2;
  const bool forward = dart % 2 == 0;
  const SegmentEnd& end = forward ? d.head(s) : d.tail(s);
  switch (end.kind) {
    case SegmentEnd::Kind::Loop:
      return dart;
    case SegmentEnd::Kind::Crossing: {
      const Crossing& x = d.crossing(end.crossing);
      const Role leave = kCcwRoles[(ccw_position(end.role) + 3) % 4];
      const int t = x.at(leave);
      return is_out(leave) ? 2 * t : 2 * t + 1;
    }
    case SegmentEnd::Kind::BoundaryIn:
    case SegmentEnd::Kind::BoundaryOut: {
      // Boundary points in counterclockwise order around the disk:
      // in[0..n-1] down the left side, then out[m-1..0] up the right side.
      const int n = static_cast<int>(d.boundary_in().size());
      const int m = static_cast<int>(d.boundary_out().size());
      const int pos = end.kind == SegmentEnd::Kind::BoundaryIn ? end.boundary_pos
                                                              : n + (m - 1 - end.boundary_pos);
      const int nxt = (pos + 1) % (n + m);
      if (nxt < n) return 2 * d.boundary_in()[nxt];
      return 2 * d.boundary_out()[m - 1 - (nxt - n)] + 1;
    }
  }
  return dart;
}

std::vector<int> trace_faces(const Diagram& d, int& num_faces) {
  const int darts = 2 * d.num_segments();
  std::vector<int> face(darts, -1);
  num_faces = 0;
  for (int start = 0; start < darts; ++start) {
    if (face[start] >= 0) continue;
    int cur = start;
    do {
      face[cur] = num_faces;
      cur = next_dart(d, cur);
    } while (cur != start && face[cur] < 0);
    if (cur != start) throw InputError("rotation system does not close into faces");
    ++num_faces;
  }
  return face;
}

}  // namespace

int Diagram::index_of(long label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw InputError("unknown segment id " + std::to_string(label));
  }
  return static_cast<int>(it - labels_.begin());
}

Diagram make_diagram(const DiagramSpec& spec) {
  Diagram d;
  d.spec_ = spec;
  std::map<long, int> index;
  auto intern = [&](long label) {
    const auto [it, inserted] = index.emplace(label, static_cast<int>(d.labels_.size()));
    if (inserted) d.labels_.push_back(label);
    return it->second;
  };
  for (const auto& x : spec.crossings) {
    for (const long s : {x.s1, x.s2, x.s1p, x.s2p}) intern(s);
  }
  for (const long s : spec.boundary_in) intern(s);
  for (const long s : spec.boundary_out) intern(s);
  for (const long s : spec.closed_loops) intern(s);

  const int n = d.num_segments();
  std::vector<int> head_uses(n, 0), tail_uses(n, 0);
  d.head_.assign(n, {});
  d.tail_.assign(n, {});
  auto use = [&](int s, bool head, SegmentEnd end) {
    auto& uses = head ? head_uses : tail_uses;
    if (++uses[s] > 1) {
      std::ostringstream msg;
      msg << "segment " << d.labels_[s] << " is used twice as "
          << (head ? "an input (head)" : "an output (tail)");
      throw InputError(msg.str());
    }
    (head ? d.head_ : d.tail_)[s] = end;
  };

  for (std::size_t ci = 0; ci < spec.crossings.size(); ++ci) {
    const auto& xs = spec.crossings[ci];
    if (xs.sign != 1 && xs.sign != -1) {
      throw InputError("crossing " + std::to_string(ci) + ": sign must be +1 or -1");
    }
    Crossing x;
    x.sign = xs.sign;
    x.seg = {index.at(xs.s1), index.at(xs.s2), index.at(xs.s1p), index.at(xs.s2p)};
    // ccw must be a rotation of (1', 2', 1, 2).
    const std::array<long, 4> expected{xs.s1p, xs.s2p, xs.s1, xs.s2};
    bool rotation_ok = false;
    for (int shift = 0; shift < 4 && !rotation_ok; ++shift) {
      bool same = true;
      for (int k = 0; k < 4; ++k) same = same && xs.ccw[k] == expected[(k + shift) % 4];
      rotation_ok = same;
    }
    if (!rotation_ok) {
      throw InputError("crossing " + std::to_string(ci) +
                       ": ccw order is not a rotation of [s1p, s2p, s1, s2]");
    }
    for (int k = 0; k < 4; ++k) x.ccw[k] = index.at(xs.ccw[k]);
    for (const Role r : {Role::In1, Role::In2}) {
      use(x.at(r), true, {SegmentEnd::Kind::Crossing, static_cast<int>(ci), r, -1});
    }
    for (const Role r : {Role::Out1, Role::Out2}) {
      use(x.at(r), false, {SegmentEnd::Kind::Crossing, static_cast<int>(ci), r, -1});
    }
    d.crossings_.push_back(x);
  }
  for (std::size_t k = 0; k < spec.boundary_in.size(); ++k) {
    const int s = index.at(spec.boundary_in[k]);
    d.boundary_in_.push_back(s);
    use(s, false, {SegmentEnd::Kind::BoundaryIn, -1, Role::In1, static_cast<int>(k)});
  }
  for (std::size_t k = 0; k < spec.boundary_out.size(); ++k) {
    const int s = index.at(spec.boundary_out[k]);
    d.boundary_out_.push_back(s);
    use(s, true, {SegmentEnd::Kind::BoundaryOut, -1, Role::In1, static_cast<int>(k)});
  }
  for (const long label : spec.closed_loops) {
    const int s = index.at(label);
    d.closed_loops_.push_back(s);
    use(s, false, {SegmentEnd::Kind::Loop, -1, Role::In1, -1});
    use(s, true, {SegmentEnd::Kind::Loop, -1, Role::In1, -1});
  }
  for (int s = 0; s < n; ++s) {
    if (head_uses[s] == 0 || tail_uses[s] == 0) {
      std::ostringstream msg;
      msg << "segment " << d.labels_[s] << " has a dangling "
          << (tail_uses[s] == 0 ? "start" : "end");
      throw InputError(msg.str());
    }
  }
  if (n == 0) throw InputError("diagram has no segments");

  // Connectivity: crossings, boundary and loops joined through segments.
  const int nodes = d.num_crossings() + 1 + static_cast<int>(d.closed_loops_.size());
  UnionFind uf(nodes);
  const int boundary_node = d.num_crossings();
  auto node_of = [&](const SegmentEnd& e, int s) {
    switch (e.kind) {
      case SegmentEnd::Kind::Crossing:
        return e.crossing;
      case SegmentEnd::Kind::Loop: {
        const auto it = std::find(d.closed_loops_.begin(), d.closed_loops_.end(), s);
        return boundary_node + 1 + static_cast<int>(it - d.closed_loops_.begin());
      }
      default:
        return boundary_node;
    }
  };
  for (int s = 0; s < n; ++s) uf.unite(node_of(d.head_[s], s), node_of(d.tail_[s], s));
  const bool has_boundary = !d.is_closed();
  int pieces = 0;
  for (int v = 0; v < nodes; ++v) {
    if (v == boundary_node && !has_boundary) continue;
    if (uf.find(v) == v) ++pieces;
  }
  if (pieces != 1) throw InputError("diagram is not connected");

  int faces = 0;
  trace_faces(d, faces);
  const int crossings = d.num_crossings();
  int expected = 0;
  if (!d.closed_loops_.empty()) {
    expected = 2;  // a lone crossingless loop
  } else if (has_boundary) {
    expected = n - crossings + 1;
  } else {
    expected = n - crossings + 2;
  }
  if (faces != expected) {
    std::ostringstream msg;
    msg << "face trace is not planar: found " << faces << " faces, Euler count expects "
        << expected;
    throw InputError(msg.str());
  }

  if (spec.base_hint) {
    (void)d.index_of(spec.base_hint->segment);
    d.base_hint_ = spec.base_hint;
  }
  return d;
}

int count_faces(const Diagram& d) {
  int faces = 0;
  trace_faces(d, faces);
  return faces;
}

Combinatorics build_combinatorics(const Diagram& d) {
  Combinatorics c;
  const int n = d.num_segments();
  const std::vector<int> face = trace_faces(d, c.num_regions);
  c.up.resize(n);
  c.dn.resize(n);
  c.face_size.assign(c.num_regions, 0);
  for (int s = 0; s < n; ++s) {
    c.up[s] = face[2 * s];
    c.dn[s] = face[2 * s + 1];
    ++c.face_size[c.up[s]];
    ++c.face_size[c.dn[s]];
  }

  UnionFind arcs(n), comps(n);
  for (const Crossing& x : d.crossings()) {
    arcs.unite(x.at(x.over_in()), x.at(x.over_out()));
    comps.unite(x.at(Role::In1), x.at(Role::Out1));
    comps.unite(x.at(Role::In2), x.at(Role::Out2));
  }
  c.arc_of = dense_classes(arcs, n, c.num_arcs);
  c.arc_segments.assign(c.num_arcs, {});
  for (int s = 0; s < n; ++s) c.arc_segments[c.arc_of[s]].push_back(s);
  c.component_of = dense_classes(comps, n, c.num_components);

  // Walk each component in strand order.
  auto successor = [&](int s) -> int {
    const SegmentEnd& h = d.head(s);
    if (h.kind != SegmentEnd::Kind::Crossing) return -1;
    const Crossing& x = d.crossing(h.crossing);
    return x.at(h.role == Role::In1 ? Role::Out1 : Role::Out2);
  };
  c.component_sequence.assign(c.num_components, {});
  c.component_closed.assign(c.num_components, true);
  for (const int s : d.boundary_in()) c.component_closed[c.component_of[s]] = false;
  std::vector<bool> seen(c.num_components, false);
  auto walk = [&](int start) {
    const int k = c.component_of[start];
    seen[k] = true;
    int s = start;
    do {
      c.component_sequence[k].push_back(s);
      s = successor(s);
    } while (s >= 0 && s != start);
  };
  for (const int s : d.boundary_in()) walk(s);
  for (int s = 0; s < n; ++s) {
    if (!seen[c.component_of[s]]) walk(s);
  }

  c.adjacency.assign(c.num_regions, {});
  for (int s = 0; s < n; ++s) {
    c.adjacency[c.up[s]].push_back({s, c.dn[s], +1});
    c.adjacency[c.dn[s]].push_back({s, c.up[s], -1});
  }

  for (const Crossing& x : d.crossings()) {
    c.corners.push_back({c.up[x.at(Role::In1)], c.up[x.at(Role::In2)], c.dn[x.at(Role::In2)],
                         c.up[x.at(Role::Out1)]});
  }

  if (const auto& hint = d.base_hint()) {
    const int s = d.index_of(hint->segment);
    c.base_region = hint->above ? c.up[s] : c.dn[s];
  } else if (!d.is_closed()) {
    // Topmost region: above the first incoming strand.
    c.base_region = d.boundary_in().empty() ? c.up[d.boundary_out().front()]
                                            : c.up[d.boundary_in().front()];
  } else {
    // Unbounded face of a link: the largest one, lowest index on ties.
    c.base_region = static_cast<int>(
        std::max_element(c.face_size.begin(), c.face_size.end()) - c.face_size.begin());
  }

  c.parent.assign(c.num_regions, DualStep{-1, -1, 0});
  std::vector<bool> reached(c.num_regions, false);
  std::deque<int> queue{c.base_region};
  reached[c.base_region] = true;
  while (!queue.empty()) {
    const int r = queue.front();
    queue.pop_front();
    c.bfs_order.push_back(r);
    for (const DualStep& step : c.adjacency[r]) {
      if (reached[step.to]) continue;
      reached[step.to] = true;
      c.parent[step.to] = {step.segment, r, step.eps};
      queue.push_back(step.to);
    }
  }
  if (static_cast<int>(c.bfs_order.size()) != c.num_regions) {
    throw InputError("some region is unreachable from the base region");
  }
  return c;
}

WirtingerPresentation wirtinger_presentation(const Diagram& d, const Combinatorics& c) {
  WirtingerPresentation w;
  w.num_generators = c.num_arcs;
  for (int ci = 0; ci < d.num_crossings(); ++ci) {
    const Crossing& x = d.crossing(ci);
    WirtingerRelation r;
    r.crossing = ci;
    const int over = c.arc_of[x.at(x.over_in())];
    const int under_in = c.arc_of[x.at(x.under_in())];
    r.lhs = c.arc_of[x.at(x.under_out())];
    if (x.sign > 0) {
      r.rhs = {{over, -1}, {under_in, 1}, {over, 1}};  // w_2' = w_1^-1 w_2 w_1
    } else {
      r.rhs = {{over, 1}, {under_in, 1}, {over, -1}};  // w_1' = w_2 w_1 w_2^-1
    }
    r.degenerate = over == under_in && under_in == r.lhs;
    w.relations.push_back(r);
  }
  return w;
}

std::string to_string(const WirtingerRelation& r) {
  std::ostringstream out;
  out << "w" << r.lhs << " =";
  for (const auto& letter : r.rhs) {
    out << " w" << letter.arc;
    if (letter.exponent != 1) out << "^" << letter.exponent;
  }
  if (r.degenerate) out << "  (degenerate: w = w)";
  return out.str();
}

GroupoidWord over_path(const Combinatorics& c, int region) {
  if (region < 0 || region >= c.num_regions) throw InputError("region out of range");
  GroupoidWord w;
  w.domain = c.base_region;
  w.codomain = region;
  for (int r = region; r != c.base_region; r = c.parent[r].to) {
    const DualStep& p = c.parent[r];
    if (p.segment < 0) throw InputError("region unreachable from the base region");
    w.letters.push_back({p.segment, true, p.eps});
  }
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

GroupoidWord over_path_along(const Combinatorics& c, std::span<const int> segments) {
  GroupoidWord w;
  w.domain = c.base_region;
  int region = c.base_region;
  for (const int s : segments) {
    if (s < 0 || s >= static_cast<int>(c.up.size())) throw InputError("segment out of range");
    int eps = 0;
    if (c.up[s] == region) {
      eps = 1;
      region = c.dn[s];
    } else if (c.dn[s] == region) {
      eps = -1;
      region = c.up[s];
    } else {
      throw InputError("path step crosses a segment not adjacent to the current region");
    }
    w.letters.push_back({s, true, eps});
  }
  w.codomain = region;
  return w;
}

GroupoidWord wirtinger_image(const Combinatorics& c, int segment) {
  const GroupoidWord s = over_path(c, c.up.at(segment));
  GroupoidWord w;
  w.domain = w.codomain = c.base_region;
  w.letters = s.letters;
  w.letters.push_back({segment, true, 1});
  w.letters.push_back({segment, false, -1});
  for (auto it = s.letters.rbegin(); it != s.letters.rend(); ++it) {
    w.letters.push_back({it->segment, it->over, -it->exponent});
  }
  return w;
}

}  // namespace octa
