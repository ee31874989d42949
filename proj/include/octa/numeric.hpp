#pragma once

#include <algorithm>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace octa {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

/// Every tolerance used by the library lives here so that a run can be
/// tightened or loosened with one knob (see scaled()).
struct NumericContext {
  double sl2_tol = 1e-9;          // |det g - 1|
  double eigen_tol = 1e-10;       // |v g - m^{-1} v| relative to |v|
  double parabolic_gate = 1e-8;   // |tr g -+ 2| for the single-line branch
  double relation_tol = 1e-9;     // Wirtinger, shadow and octahedral relations
  double projective_tol = 1e-9;   // |sin| of the angle between two lines
  double zero_gate = 1e-10;       // admissibility denominators
  double integer_gate = 1e-8;     // dilogarithm argument near an integer
  double unit_circle_gate = 1e-6; // ||z| - 1| for unit-circle avoidance

  /// Multiplies every tolerance by `factor`.
  [[nodiscard]] NumericContext scaled(double factor) const {
    NumericContext out = *this;
    out.sl2_tol *= factor;
    out.eigen_tol *= factor;
    out.parabolic_gate *= factor;
    out.relation_tol *= factor;
    out.projective_tol *= factor;
    out.zero_gate *= factor;
    out.integer_gate *= factor;
    out.unit_circle_gate *= factor;
    return out;
  }
};

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (files, flags, arguments).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical condition failed: a relation does not hold, a crossing
/// degenerates, a search ran out of tries.
class MathError : public Error {
 public:
  using Error::Error;
};

inline double rel_diff(Complex x, Complex y) {
  return std::abs(x - y) / std::max(1.0, std::abs(y));
}

}  // namespace octa
