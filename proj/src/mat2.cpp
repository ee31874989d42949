#include "octa/mat2.hpp"

#include <cmath>
#include <sstream>

namespace octa {

double Mat2::norm() const {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

Mat2 Mat2::inverse() const {
  const Complex det_value = det();
  if (det_value == Complex{0.0}) throw MathError("singular 2x2 matrix");
  return Mat2{d, -b, -c, a} * (1.0 / det_value);
}

double rel_diff(const Mat2& x, const Mat2& y) {
  return (x - y).norm() / std::max(1.0, y.norm());
}

bool is_sl2(const Mat2& g, const NumericContext& ctx) {
  // Rounding in det grows with the squared entries.
  const double n = g.norm();
  return std::abs(g.det() - 1.0) <= ctx.sl2_tol * std::max(1.0, 0.5 * n * n);
}

RowVec normalized(const RowVec& v) {
  if (std::abs(v.x) >= std::abs(v.y)) {
    if (v.x == Complex{0.0}) throw MathError("zero row vector has no line");
    return {1.0, v.y / v.x};
  }
  return {v.x / v.y, 1.0};
}

double projective_sine(const RowVec& v, const RowVec& w) {
  const double nv = v.norm();
  const double nw = w.norm();
  if (nv == 0.0 || nw == 0.0) return 0.0;
  return std::abs(v.x * w.y - v.y * w.x) / (nv * nw);
}

double projective_sine(const ColVec& u, const ColVec& w) {
  return projective_sine(RowVec{u.x, u.y}, RowVec{w.x, w.y});
}

namespace {

// Row eigenvector of g for eigenvalue lambda: v (g - lambda) = 0.
RowVec row_eigenvector(const Mat2& g, Complex lambda) {
  // The two rows of (g - lambda)^T give two candidates; take the larger.
  const RowVec from_first{g.c, lambda - g.a};
  const RowVec from_second{lambda - g.d, g.b};
  const RowVec& best = from_first.norm() >= from_second.norm() ? from_first : from_second;
  return normalized(best);
}

}  // namespace

EigenLines eigen_lines(const Mat2& g, const NumericContext& ctx) {
  if (!is_sl2(g, ctx)) {
    std::ostringstream msg;
    msg << "matrix is not in SL(2,C): |det - 1| = " << std::abs(g.det() - 1.0);
    throw InputError(msg.str());
  }
  const Complex tr = g.trace();
  EigenLines out;
  for (const double s : {2.0, -2.0}) {
    if (std::abs(tr - s) > ctx.parabolic_gate) continue;
    const Complex lambda = s / 2.0;
    if ((g - Mat2::identity() * lambda).norm() <= ctx.parabolic_gate) {
      out.kind = EigenLines::Kind::All;
      return out;
    }
    out.kind = EigenLines::Kind::One;
    out.lines.push_back({row_eigenvector(g, lambda), 1.0 / lambda});
    return out;
  }
  const Complex disc = std::sqrt(tr * tr - 4.0);
  out.kind = EigenLines::Kind::Two;
  for (const Complex lambda : {(tr + disc) / 2.0, (tr - disc) / 2.0}) {
    out.lines.push_back({row_eigenvector(g, lambda), 1.0 / lambda});
  }
  return out;
}

Complex inverse_eigenvalue(const Mat2& g, const RowVec& v, const NumericContext& ctx) {
  const RowVec w = v * g;
  // Rayleigh-style quotient against the larger component.
  const Complex lambda = std::abs(v.x) >= std::abs(v.y) ? w.x / v.x : w.y / v.y;
  if ((w - v * lambda).norm() > ctx.eigen_tol * std::max(1.0, g.norm()) * v.norm()) {
    throw MathError("row vector is not an eigenvector of the segment matrix");
  }
  return 1.0 / lambda;
}

namespace {

void require_nonzero(const OctaColor& chi) {
  if (chi.a == Complex{0.0} || chi.b == Complex{0.0} || chi.m == Complex{0.0}) {
    throw MathError("octahedral color has a zero component");
  }
}

}  // namespace

Mat2 up_matrix(const OctaColor& chi) {
  require_nonzero(chi);
  return {chi.a, 0.0, (chi.a - 1.0 / chi.m) / chi.b, 1.0};
}

Mat2 down_matrix(const OctaColor& chi) {
  require_nonzero(chi);
  return {1.0, (chi.a - chi.m) * chi.b, 0.0, chi.a};
}

Mat2 around_matrix(const OctaColor& chi) {
  require_nonzero(chi);
  const auto [a, b, m] = chi;
  return {a, -(a - m) * b, (a - 1.0 / m) / b, m + 1.0 / m - a};
}

ColorHolonomy hol_matrices(const OctaColor& chi) {
  return {up_matrix(chi), down_matrix(chi), around_matrix(chi)};
}

std::optional<Complex> hopf(const RowVec& v) {
  if (v.y == Complex{0.0}) return std::nullopt;
  return v.x / v.y;
}

Mat2 up_of(const ColVec& u) {
  if (u.x == Complex{0.0}) throw MathError("up(u) needs a nonzero first entry");
  return {u.x, 0.0, u.y, 1.0};
}

}  // namespace octa
