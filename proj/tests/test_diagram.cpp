#include <gtest/gtest.h>

#include <random>

#include "octa/diagram.hpp"
#include "octa/numeric.hpp"
#include "octa/octahedral.hpp"
#include "support/corpus.hpp"

using namespace octa;
using namespace octa::testkit;

TEST(Diagram, OneCrossingTangle) {
  const Diagram d = parse_diagram(read_data("one_crossing.json"));
  EXPECT_EQ(d.num_segments(), 4);
  EXPECT_EQ(d.num_crossings(), 1);
  EXPECT_EQ(d.crossing(0).sign, 1);
  EXPECT_FALSE(d.is_closed());
  const Combinatorics c = build_combinatorics(d);
  EXPECT_EQ(c.num_regions, 4);
  EXPECT_EQ(c.num_arcs, 3);
  EXPECT_EQ(c.num_components, 2);
}

TEST(Diagram, FigureEightCounts) {
  const Diagram d = parse_diagram(read_data("figure8.json"));
  EXPECT_EQ(d.num_segments(), 8);
  EXPECT_EQ(d.num_crossings(), 4);
  const Combinatorics c = build_combinatorics(d);
  EXPECT_EQ(c.num_regions, 6);
  EXPECT_EQ(d.num_crossings() - d.num_segments() + c.num_regions, 2);
  EXPECT_EQ(c.num_arcs, 4);
  EXPECT_EQ(c.num_components, 1);
  ASSERT_EQ(c.component_sequence[0].size(), 8u);
}

TEST(Diagram, FigureEightFaceSizes) {
  // Standard diagram: two bigons, two triangles, two quadrilaterals
  // counted by corners (each segment side is one corner here).
  const Combinatorics c = build_combinatorics(parse_diagram(read_data("figure8.json")));
  std::vector<int> sizes = c.face_size;
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<int>{2, 2, 3, 3, 3, 3}));
}

TEST(Diagram, DuplicateEndRejected) {
  try {
    parse_diagram(read_data("duplicate_end.json"));
    FAIL() << "expected an input error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("segment 3"), std::string::npos) << e.what();
  }
}

TEST(Diagram, SyntaxErrorReportsPosition) {
  try {
    parse_diagram("{\"crossings\": [ }");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(Diagram, UnknownFieldRejected) {
  EXPECT_THROW(parse_diagram(R"({"crossings": [], "closed_loops": [1], "colour": 1})"), InputError);
  EXPECT_THROW(parse_diagram(R"({"closed_loops": [1], "base_region_hint": {"segment": 1, "up": 1}})"),
               InputError);
}

TEST(Diagram, BadRotationRejected) {
  // ccw not a rotation of (1', 2', 1, 2): reflected order.
  EXPECT_THROW(parse_diagram(R"({"crossings": [{"sign": 1, "s1": 1, "s2": 2, "s1p": 3, "s2p": 4,
      "ccw": [4, 3, 1, 2]}], "boundary_in": [1, 2], "boundary_out": [4, 3]})"),
               InputError);
}

TEST(Diagram, NonPlanarTraceRejected) {
  // Outputs listed in crossed order make the boundary trace non-planar.
  EXPECT_THROW(parse_diagram(R"({"crossings": [{"sign": 1, "s1": 1, "s2": 2, "s1p": 3, "s2p": 4,
      "ccw": [3, 4, 1, 2]}], "boundary_in": [1, 2], "boundary_out": [3, 4]})"),
               InputError);
}

TEST(Diagram, BadSignRejected) {
  EXPECT_THROW(parse_diagram(R"({"crossings": [{"sign": 2, "s1": 1, "s2": 2, "s1p": 3, "s2p": 4,
      "ccw": [3, 4, 1, 2]}], "boundary_in": [1, 2], "boundary_out": [4, 3]})"),
               InputError);
}

TEST(Diagram, DisconnectedRejected) {
  DiagramSpec spec = braid_closure_spec(2, {1, 1});
  spec.closed_loops = {99};  // a split circle
  EXPECT_THROW(make_diagram(spec), InputError);
}

TEST(Diagram, Unknot) {
  const Diagram d = parse_diagram(read_data("unknot.json"));
  const Combinatorics c = build_combinatorics(d);
  EXPECT_EQ(c.num_arcs, 1);
  EXPECT_EQ(c.num_components, 1);
  EXPECT_EQ(c.num_regions, 2);
  EXPECT_NE(c.up[0], c.dn[0]);
}

TEST(Diagram, KinkHasOneArc) {
  const Diagram d = parse_diagram(read_data("kink.json"));
  const Combinatorics c = build_combinatorics(d);
  EXPECT_EQ(c.num_components, 1);
  EXPECT_EQ(c.num_arcs, 1);
  EXPECT_EQ(c.num_regions, 3);
  const Crossing& x = d.crossing(0);
  EXPECT_EQ(c.arc_of[x.at(x.over_in())], c.arc_of[x.at(x.under_in())]);
  const WirtingerPresentation w = wirtinger_presentation(d, c);
  ASSERT_EQ(w.relations.size(), 1u);
  EXPECT_TRUE(w.relations[0].degenerate);
}

TEST(Diagram, ArcInvariantAtCrossings) {
  for (const Case& k : random_corpus(30, 5)) {
    for (const Crossing& x : k.d.crossings()) {
      EXPECT_EQ(k.c.arc_of[x.at(x.over_in())], k.c.arc_of[x.at(x.over_out())]) << k.name;
    }
  }
}

TEST(Diagram, WirtingerForms) {
  const Diagram pos = make_diagram(one_crossing_spec(1));
  const Combinatorics cp = build_combinatorics(pos);
  const auto rp = wirtinger_presentation(pos, cp).relations.at(0);
  const Crossing& x = pos.crossing(0);
  EXPECT_EQ(rp.lhs, cp.arc_of[x.at(Role::Out2)]);
  ASSERT_EQ(rp.rhs.size(), 3u);
  EXPECT_EQ(rp.rhs[0].arc, cp.arc_of[x.at(Role::In1)]);
  EXPECT_EQ(rp.rhs[0].exponent, -1);
  EXPECT_EQ(rp.rhs[1].arc, cp.arc_of[x.at(Role::In2)]);
  EXPECT_EQ(rp.rhs[2].exponent, 1);

  const Diagram neg = make_diagram(one_crossing_spec(-1));
  const Combinatorics cn = build_combinatorics(neg);
  const auto rn = wirtinger_presentation(neg, cn).relations.at(0);
  const Crossing& y = neg.crossing(0);
  EXPECT_EQ(rn.lhs, cn.arc_of[y.at(Role::Out1)]);
  EXPECT_EQ(rn.rhs[0].arc, cn.arc_of[y.at(Role::In2)]);
  EXPECT_EQ(rn.rhs[0].exponent, 1);
  EXPECT_EQ(rn.rhs[1].arc, cn.arc_of[y.at(Role::In1)]);
  EXPECT_EQ(rn.rhs[2].exponent, -1);
}

TEST(Diagram, CornersCloseAroundCrossing) {
  for (const Case& k : random_corpus(20, 9)) {
    for (int ci = 0; ci < k.d.num_crossings(); ++ci) {
      const Crossing& x = k.d.crossing(ci);
      const auto& [n, w, s, e] = k.c.corners[ci];
      EXPECT_EQ(k.c.dn[x.at(Role::In1)], w);
      EXPECT_EQ(k.c.up[x.at(Role::Out2)], n);
      EXPECT_EQ(k.c.dn[x.at(Role::Out1)], s);
      EXPECT_EQ(k.c.dn[x.at(Role::Out2)], e);
    }
  }
}

TEST(Diagram, BasePathIsEmpty) {
  const Combinatorics c = build_combinatorics(parse_diagram(read_data("figure8.json")));
  EXPECT_TRUE(over_path(c, c.base_region).letters.empty());
}

TEST(Diagram, ThreeStrandOverPath) {
  const Diagram d = parse_diagram(read_data("tangle3.json"));
  const Combinatorics c = build_combinatorics(d);
  EXPECT_EQ(c.num_regions, 4);
  const int s1 = d.index_of(1), s2 = d.index_of(2), s3 = d.index_of(3);
  EXPECT_EQ(c.base_region, c.up[s1]);
  const GroupoidWord w = over_path(c, c.dn[s2]);
  ASSERT_EQ(w.letters.size(), 2u);
  EXPECT_EQ(w.letters[0], (GroupoidLetter{s1, true, 1}));
  EXPECT_EQ(w.letters[1], (GroupoidLetter{s2, true, 1}));
  const GroupoidWord f = wirtinger_image(c, s3);
  const std::vector<GroupoidLetter> expected{{s1, true, 1},  {s2, true, 1},  {s3, true, 1},
                                             {s3, false, -1}, {s2, true, -1}, {s1, true, -1}};
  EXPECT_EQ(f.letters, expected);
}

TEST(Diagram, OverPathAlongRejectsNonAdjacent) {
  const Diagram d = parse_diagram(read_data("tangle3.json"));
  const Combinatorics c = build_combinatorics(d);
  const std::vector<int> bad{d.index_of(2)};
  EXPECT_THROW(over_path_along(c, bad), InputError);
}

TEST(Diagram, OverPathIndependentOfRoute) {
  // Two dual paths to the same region: through the tree and around a face.
  std::mt19937_64 rng(17);
  for (const Case& k : random_corpus(40, 21)) {
    OctahedralColoring chi;
    // A valid coloring: propagate random incoming colors (tangles only) or
    // use an associated coloring.
    const ShadowColoring sc = admissible_shadow_of(k, rng);
    chi = *associated_coloring(k.c, sc).coloring;
    const std::vector<Mat2> hol = over_path_holonomy(k.c, chi);
    for (int s = 0; s < k.d.num_segments(); ++s) {
      // Tree path to up(s) then across s must agree with the tree path to dn(s).
      const Mat2 via = hol[k.c.up[s]] * up_matrix(chi.chi[s]);
      EXPECT_LE(rel_diff(via, hol[k.c.dn[s]]), 1e-10) << k.name << " segment " << s;
    }
  }
}

TEST(Diagram, ArcPartitionIgnoresCrossingOrder) {
  DiagramSpec spec = figure_eight_spec();
  const Diagram a = make_diagram(spec);
  std::reverse(spec.crossings.begin(), spec.crossings.end());
  const Diagram b = make_diagram(spec);
  const Combinatorics ca = build_combinatorics(a), cb = build_combinatorics(b);
  ASSERT_EQ(ca.num_arcs, cb.num_arcs);
  for (long x : a.labels()) {
    for (long y : a.labels()) {
      EXPECT_EQ(ca.arc_of[a.index_of(x)] == ca.arc_of[a.index_of(y)],
                cb.arc_of[b.index_of(x)] == cb.arc_of[b.index_of(y)]);
    }
  }
}

TEST(Diagram, BaseHintSelectsRegion) {
  const Diagram d = parse_diagram(
      R"({"closed_loops": [7], "base_region_hint": {"segment": 7, "side": "below"}})");
  const Combinatorics c = build_combinatorics(d);
  EXPECT_EQ(c.base_region, c.dn[0]);
}
