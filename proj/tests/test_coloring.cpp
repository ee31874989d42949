#include <gtest/gtest.h>

#include <random>

#include "octa/coloring.hpp"
#include "support/corpus.hpp"

using namespace octa;
using testkit::Case;

namespace {

// Arc matrices for the one-crossing tangle: g1 on the over strand, g2 on the
// incoming under strand, the outgoing under strand by the relation.
std::vector<Mat2> one_crossing_rep(const Case& k, const Mat2& g1, const Mat2& g2) {
  const Crossing& x = k.d.crossing(0);
  std::vector<Mat2> arcs(k.c.num_arcs);
  const Mat2 over = g1;
  const Mat2 under = g2;
  arcs[k.c.arc_of[x.at(x.over_in())]] = over;
  arcs[k.c.arc_of[x.at(x.under_in())]] = under;
  arcs[k.c.arc_of[x.at(x.under_out())]] =
      x.sign > 0 ? over.inverse() * under * over : over * under * over.inverse();
  return arcs;
}

}  // namespace

TEST(Coloring, TrivialRepresentationIsValid) {
  for (const auto& spec : {testkit::figure_eight_spec(), testkit::trefoil_spec(), testkit::three_strand_spec()}) {
    const Case k = testkit::make_case("trivial", spec);
    const Sl2Coloring rep = check_representation(k.d, k.c, std::vector<Mat2>(k.c.num_arcs, Mat2::identity()));
    EXPECT_EQ(rep.g.size(), static_cast<std::size_t>(k.d.num_segments()));
    EXPECT_EQ(wirtinger_residual(k.d, rep).max_residual, 0.0);
  }
}

TEST(Coloring, OneCrossingByConstruction) {
  std::mt19937_64 rng(1);
  for (const int sign : {1, -1}) {
    const Case k = testkit::make_case("one", testkit::one_crossing_spec(sign));
    const auto arcs = one_crossing_rep(k, Mat2::diag(2.0, 0.5), testkit::random_sl2_matrix(rng));
    const Sl2Coloring rep = check_representation(k.d, k.c, arcs);
    EXPECT_LE(wirtinger_residual(k.d, rep).max_residual, 1e-12);
  }
}

TEST(Coloring, BrokenRelationNamesCrossing) {
  const Case k = testkit::make_case("f8", testkit::figure_eight_spec());
  auto arcs = testkit::figure_eight_parabolic_rep(k.d, k.c);
  arcs[1] = arcs[1] * Mat2{1.0, 1e-3, 0.0, 1.0};
  try {
    check_representation(k.d, k.c, arcs);
    FAIL() << "expected MathError";
  } catch (const MathError& e) {
    EXPECT_NE(std::string(e.what()).find("crossing"), std::string::npos) << e.what();
  }
}

TEST(Coloring, NonSl2ArcRejected) {
  const Case k = testkit::make_case("one", testkit::one_crossing_spec());
  std::vector<Mat2> arcs(k.c.num_arcs, Mat2::identity());
  arcs[0] = Mat2::diag(2.0, 1.0);
  EXPECT_THROW(check_representation(k.d, k.c, arcs), InputError);
}

TEST(Coloring, WrongArcCountRejected) {
  const Case k = testkit::make_case("one", testkit::one_crossing_spec());
  EXPECT_THROW(check_representation(k.d, k.c, std::vector<Mat2>(1, Mat2::identity())), InputError);
}

TEST(Coloring, FigureEightParabolicIsValid) {
  const Case k = testkit::make_case("f8", testkit::figure_eight_spec());
  const auto arcs = testkit::figure_eight_parabolic_rep(k.d, k.c);
  const Sl2Coloring rep = check_representation(k.d, k.c, arcs);
  EXPECT_LE(wirtinger_residual(k.d, rep).max_residual, 1e-9);
  for (const Mat2& g : rep.g) EXPECT_NEAR(std::abs(g.trace() - 2.0), 0.0, 1e-9);
  // Not abelian: some pair of generators fails to commute.
  double worst = 0.0;
  for (const Mat2& g : arcs) worst = std::max(worst, rel_diff(g * arcs[0], arcs[0] * g));
  EXPECT_GT(worst, 1e-3);
}

TEST(Coloring, TrivialRepWithExplicitLine) {
  const Case k = testkit::make_case("f8", testkit::figure_eight_spec());
  const Sl2Coloring rep = check_representation(k.d, k.c, std::vector<Mat2>(k.c.num_arcs, Mat2::identity()));
  EXPECT_THROW(decorate(k.d, k.c, rep, {}), InputError);
  LineChoice choice;
  choice.line = RowVec{1.0, 1.0};
  const DecoratedColoring dec = decorate(k.d, k.c, rep, {choice});
  for (const RowLine& l : dec.lines) {
    EXPECT_LE(projective_sine(l.v, RowVec{1.0, 1.0}), 1e-15);
    EXPECT_LE(std::abs(l.m - 1.0), 1e-15);
  }
}

TEST(Coloring, NonInvariantLineRejected) {
  const Case k = testkit::make_case("one", testkit::one_crossing_spec());
  std::mt19937_64 rng(2);
  const auto arcs = one_crossing_rep(k, Mat2::diag(2.0, 0.5), testkit::random_sl2_matrix(rng));
  const Sl2Coloring rep = check_representation(k.d, k.c, arcs);
  const int comp = k.c.component_of[k.d.crossing(0).at(Role::In1)];
  std::vector<LineChoice> choices(k.c.num_components);
  choices[comp].line = RowVec{1.0, 1.0};
  EXPECT_THROW(decorate(k.d, k.c, rep, choices), InputError);
}

TEST(Coloring, ParabolicHasOneDecoration) {
  const Case k = testkit::make_case("f8", testkit::figure_eight_spec());
  const Sl2Coloring rep = check_representation(k.d, k.c, testkit::figure_eight_parabolic_rep(k.d, k.c));
  LineChoice second;
  second.index = 1;
  const DecoratedColoring a = decorate(k.d, k.c, rep, {});
  const DecoratedColoring b = decorate(k.d, k.c, rep, {second});
  for (int i = 0; i < k.d.num_segments(); ++i) {
    EXPECT_LE(projective_sine(a.lines[i].v, b.lines[i].v), 1e-12);
    EXPECT_LE(std::abs(a.lines[i].m - 1.0), 1e-8);
  }
}

TEST(Coloring, DiagonalMeridianTwoDecorations) {
  const Case k = testkit::make_case("one", testkit::one_crossing_spec());
  std::mt19937_64 rng(3);
  const auto arcs = one_crossing_rep(k, Mat2::diag(2.0, 0.5), testkit::random_sl2_matrix(rng));
  const Sl2Coloring rep = check_representation(k.d, k.c, arcs);
  const Crossing& x = k.d.crossing(0);
  const int comp = k.c.component_of[x.at(Role::In1)];
  std::vector<LineChoice> c0(k.c.num_components), c1(k.c.num_components);
  c0[comp].index = 0;
  c1[comp].index = 1;
  const DecoratedColoring d0 = decorate(k.d, k.c, rep, c0);
  const DecoratedColoring d1 = decorate(k.d, k.c, rep, c1);
  const int s = x.at(Role::In1);
  EXPECT_LE(projective_sine(d0.lines[s].v, RowVec{1.0, 0.0}), 1e-15);
  EXPECT_LE(std::abs(d0.lines[s].m - 0.5), 1e-15);
  EXPECT_LE(projective_sine(d1.lines[s].v, RowVec{0.0, 1.0}), 1e-15);
  EXPECT_LE(std::abs(d1.lines[s].m - 2.0), 1e-15);
}

TEST(Coloring, DecorationRulesOnCorpus) {
  for (const Case& k : testkit::random_corpus(40, 17)) {
    const Sl2Coloring rep = check_representation(k.d, k.c, k.arc_matrices);
    const DecoratedColoring dec = decorate(k.d, k.c, rep, {});
    for (int i = 0; i < k.d.num_segments(); ++i) {
      const RowLine& l = dec.lines[i];
      const RowVec r = l.v * rep.g[i] - l.v * (1.0 / l.m);
      EXPECT_LE(r.norm(), 1e-9 * std::max(1.0, rep.g[i].norm()) * l.v.norm()) << k.name;
      EXPECT_LE(std::abs(l.m - dec.lines[k.c.component_sequence[k.c.component_of[i]][0]].m), 1e-9) << k.name;
    }
    for (const Crossing& x : k.d.crossings()) {
      const auto& L = dec.lines;
      const auto& g = rep.g;
      if (x.sign > 0) {
        EXPECT_LE(projective_sine(L[x.at(Role::Out2)].v, L[x.at(Role::In2)].v * g[x.at(Role::In1)]), 1e-9) << k.name;
        EXPECT_LE(projective_sine(L[x.at(Role::Out1)].v, L[x.at(Role::In1)].v), 1e-9) << k.name;
      } else {
        EXPECT_LE(projective_sine(L[x.at(Role::Out1)].v, L[x.at(Role::In1)].v * g[x.at(Role::In2)].inverse()), 1e-9) << k.name;
        EXPECT_LE(projective_sine(L[x.at(Role::Out2)].v, L[x.at(Role::In2)].v), 1e-9) << k.name;
      }
    }
  }
}

TEST(Coloring, TrivialShadowIsConstant) {
  const Case k = testkit::make_case("f8", testkit::figure_eight_spec());
  const Sl2Coloring rep = check_representation(k.d, k.c, std::vector<Mat2>(k.c.num_arcs, Mat2::identity()));
  LineChoice choice;
  choice.line = RowVec{0.0, 1.0};
  const DecoratedColoring dec = decorate(k.d, k.c, rep, {choice});
  const ShadowColoring sc = propagate_shadow(k.d, k.c, dec, k.c.base_region, ColVec::e1());
  for (const ColVec& u : sc.u) EXPECT_EQ(u, ColVec::e1());
}

TEST(Coloring, OneCrossingCornerShadows) {
  std::mt19937_64 rng(4);
  for (const int sign : {1, -1}) {
    const Case k = testkit::make_case("one", testkit::one_crossing_spec(sign));
    const auto arcs = one_crossing_rep(k, testkit::random_sl2_matrix(rng), testkit::random_sl2_matrix(rng));
    const Sl2Coloring rep = check_representation(k.d, k.c, arcs);
    const DecoratedColoring dec = decorate(k.d, k.c, rep, {});
    const ShadowColoring sc = propagate_shadow(k.d, k.c, dec, k.c.base_region, ColVec{1.0, 2.0});
    const auto [N, W, S, E] = k.c.corners[0];
    const Crossing& x = k.d.crossing(0);
    const auto& g = rep.g;
    // Going around the crossing both ways gives the same vector.
    const ColVec via_left = g[x.at(Role::In2)] * (g[x.at(Role::In1)] * sc.u[N]);
    const ColVec via_right = g[x.at(Role::Out1)] * (g[x.at(Role::Out2)] * sc.u[N]);
    EXPECT_LE((via_left - via_right).norm(), 1e-12 * via_left.norm());
    EXPECT_LE((sc.u[W] - g[x.at(Role::In1)] * sc.u[N]).norm(), 1e-12 * sc.u[W].norm());
    EXPECT_LE((sc.u[S] - via_left).norm(), 1e-12 * sc.u[S].norm());
    EXPECT_LE((sc.u[E] - g[x.at(Role::Out2)] * sc.u[N]).norm(), 1e-12 * sc.u[E].norm());
  }
}

TEST(Coloring, ShadowScalesLinearly) {
  std::mt19937_64 rng(5);
  for (const Case& k : testkit::random_corpus(10, 23)) {
    const Sl2Coloring rep = check_representation(k.d, k.c, k.arc_matrices);
    const DecoratedColoring dec = decorate(k.d, k.c, rep, {});
    const ColVec u{testkit::random_complex(rng), testkit::random_complex(rng)};
    const Complex lambda{-1.5, 2.0};
    const ShadowColoring a = propagate_shadow(k.d, k.c, dec, k.c.base_region, u);
    const ShadowColoring b = propagate_shadow(k.d, k.c, dec, k.c.base_region, u * lambda);
    for (int j = 0; j < k.c.num_regions; ++j) {
      EXPECT_LE((b.u[j] - a.u[j] * lambda).norm(), 1e-12 * b.u[j].norm());
    }
  }
}

TEST(Coloring, ShadowMonodromyTrivialOnCorpus) {
  std::mt19937_64 rng(6);
  for (const Case& k : testkit::random_corpus(100, 29)) {
    const ShadowColoring sc = testkit::shadow_of(k, rng);
    EXPECT_LE(shadow_residual(k.c, sc), 1e-9) << k.name;
  }
}

TEST(Coloring, ZeroSeedRejected) {
  const Case k = testkit::make_case("one", testkit::one_crossing_spec());
  const Sl2Coloring rep = check_representation(k.d, k.c, std::vector<Mat2>(k.c.num_arcs, Mat2::identity()));
  LineChoice choice;
  choice.line = RowVec{0.0, 1.0};
  const DecoratedColoring dec = decorate(k.d, k.c, rep, std::vector<LineChoice>(k.c.num_components, choice));
  EXPECT_THROW(propagate_shadow(k.d, k.c, dec, 0, ColVec{0.0, 0.0}), InputError);
}
