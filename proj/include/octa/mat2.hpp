#pragma once

#include <optional>
#include <vector>

#include "octa/numeric.hpp"

namespace octa {

struct ColVec {
  Complex x, y;

  static ColVec e1() { return {1.0, 0.0}; }
  static ColVec e2() { return {0.0, 1.0}; }
  [[nodiscard]] double norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }
  ColVec operator*(Complex s) const { return {x * s, y * s}; }
  ColVec operator-(const ColVec& o) const { return {x - o.x, y - o.y}; }
  bool operator==(const ColVec&) const = default;
};

/// Row vector; invariant lines of the decoration are sets of these.
struct RowVec {
  Complex x, y;

  [[nodiscard]] double norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }
  RowVec operator*(Complex s) const { return {x * s, y * s}; }
  RowVec operator-(const RowVec& o) const { return {x - o.x, y - o.y}; }
  Complex operator*(const ColVec& u) const { return x * u.x + y * u.y; }
  bool operator==(const RowVec&) const = default;
};

/// Complex 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  Complex a, b, c, d;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(Complex p, Complex q) { return {p, 0.0, 0.0, q}; }

  [[nodiscard]] Complex det() const { return a * d - b * c; }
  [[nodiscard]] Complex trace() const { return a + d; }
  [[nodiscard]] double norm() const;  // Frobenius
  [[nodiscard]] Mat2 inverse() const;

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(Complex s) const { return {a * s, b * s, c * s, d * s}; }
  ColVec operator*(const ColVec& u) const { return {a * u.x + b * u.y, c * u.x + d * u.y}; }
  bool operator==(const Mat2&) const = default;
};

inline RowVec operator*(const RowVec& v, const Mat2& g) {
  return {v.x * g.a + v.y * g.c, v.x * g.b + v.y * g.d};
}

/// ||x - y|| / max(1, ||y||) in the Frobenius norm.
double rel_diff(const Mat2& x, const Mat2& y);

bool is_sl2(const Mat2& g, const NumericContext& ctx = {});

/// An invariant row line with its inverse eigenvalue: v g = m^{-1} v.
struct RowLine {
  RowVec v;
  Complex m;
};

/// Rescales so that the larger-modulus component equals 1.
RowVec normalized(const RowVec& v);

/// |sin| of the angle between the complex lines spanned by v and w.
double projective_sine(const RowVec& v, const RowVec& w);
double projective_sine(const ColVec& u, const ColVec& w);

struct EigenLines {
  enum class Kind { Two, One, All };
  Kind kind = Kind::Two;
  std::vector<RowLine> lines;  // empty for Kind::All
};

/// Invariant row lines of g in SL(2,C). Two lines are ordered by the
/// eigenvalue (tr + sqrt(tr^2 - 4))/2 first. Throws InputError off SL2.
EigenLines eigen_lines(const Mat2& g, const NumericContext& ctx = {});

/// Inverse eigenvalue m of g on the line through v, checked against
/// ctx.eigen_tol. Throws MathError if v is not an eigenvector.
Complex inverse_eigenvalue(const Mat2& g, const RowVec& v, const NumericContext& ctx = {});

/// An octahedral color (a, b, m); all components nonzero.
struct OctaColor {
  Complex a, b, m;
  bool operator==(const OctaColor&) const = default;
};

struct ColorHolonomy {
  Mat2 up, down, around;
};

Mat2 up_matrix(const OctaColor& chi);
Mat2 down_matrix(const OctaColor& chi);
Mat2 around_matrix(const OctaColor& chi);
ColorHolonomy hol_matrices(const OctaColor& chi);

/// det of the matrix with columns u1, u2.
inline Complex pairing(const ColVec& u1, const ColVec& u2) { return u1.x * u2.y - u1.y * u2.x; }

/// v^1 / v^2, or nullopt for the point at infinity (v^2 = 0).
std::optional<Complex> hopf(const RowVec& v);

/// [[u^1, 0], [u^2, 1]]; throws MathError when u^1 = 0.
Mat2 up_of(const ColVec& u);

}  // namespace octa
