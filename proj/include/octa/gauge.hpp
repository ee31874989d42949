#pragma once

#include <cstdint>
#include <random>

#include "octa/octahedral.hpp"

namespace octa {

struct GaugeMove {
  enum class Kind { A, B };
  Kind kind = Kind::A;
  Mat2 h = Mat2::identity();
};

/// Kind A: (g, L, u) -> (h^{-1} g h, L h, h^{-1} u). Kind B keeps (g, L) and
/// re-seeds the shadows from h^{-1} u at the base region.
ShadowColoring apply_gauge(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                           const GaugeMove& mv, const NumericContext& ctx = {});

/// Complex Gaussian entries, first column rescaled to det 1.
Mat2 random_sl2(std::mt19937_64& rng);

struct AdmissibleGauge {
  GaugeMove a, b;  // applied in this order
  ShadowColoring sc;
  int tries = 0;   // 1 when the identity pair already works
};

/// A-move by A then B-move by B^{-1} over random pairs, identity first.
/// Throws MathError after max_tries.
AdmissibleGauge find_admissible_gauge(const Diagram& d, const Combinatorics& c, const ShadowColoring& sc,
                                      std::uint64_t seed, int max_tries = 64,
                                      const NumericContext& ctx = {});

struct NonunitGauge {
  GaugeMove move;
  ShadowColoring sc;
  int tries = 0;
};

/// A type-(A) move after which no shape parameter has modulus 1 (to
/// ctx.unit_circle_gate). Throws MathError for pinched input or when the
/// tries run out.
NonunitGauge find_nonunit_shapes(const Diagram& d, const Combinatorics& c,
                                 const ShadowColoring& sc, std::uint64_t seed,
                                 int max_tries = 64, const NumericContext& ctx = {});

}  // namespace octa
