#include "octa/dilog.hpp"

#include <array>
#include <cmath>

namespace octa {

namespace {

constexpr double kZeta2 = kPi * kPi / 6.0;

// B_{2k} / (2k+1)! for k = 1..15.
constexpr std::array<double, 15> kBernoulliOverFactorial{
    1.0 / 6.0 / 6.0,
    -1.0 / 30.0 / 120.0,
    1.0 / 42.0 / 5040.0,
    -1.0 / 30.0 / 362880.0,
    5.0 / 66.0 / 39916800.0,
    -691.0 / 2730.0 / 6227020800.0,
    7.0 / 6.0 / 1307674368000.0,
    -3617.0 / 510.0 / 355687428096000.0,
    43867.0 / 798.0 / 121645100408832000.0,
    -174611.0 / 330.0 / 51090942171709440000.0,
    854513.0 / 138.0 / 25852016738884976640000.0,
    -236364091.0 / 2730.0 / 15511210043330985984000000.0,
    8553103.0 / 6.0 / 10888869450418352160768000000.0,
    -23749461029.0 / 870.0 / 8841761993739701954543616000000.0,
    8615841276005.0 / 14322.0 / 8222838654177922817725562880000000.0,
};

Complex maclaurin(Complex z) {
  Complex sum = 0.0, power = z;
  for (int n = 1; n < 200; ++n) {
    const Complex term = power / double(n * n);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    power *= z;
  }
  return sum;
}

// Li_2(z) = sum_n B_n u^{n+1} / (n+1)!, u = -log(1 - z); needs |u| < 2 pi.
Complex bernoulli_series(Complex z) {
  const Complex u = -std::log(1.0 - z);
  const Complex u2 = u * u;
  Complex sum = u - u2 / 4.0;
  Complex power = u * u2;
  for (const double c : kBernoulliOverFactorial) {
    sum += c * power;
    power *= u2;
  }
  return sum;
}

// |z| <= 1.
Complex dilog_disk(Complex z) {
  if (std::abs(z) <= 0.5) return maclaurin(z);
  if (z.real() > 0.5) {
    if (z == 1.0) return kZeta2;
    return kZeta2 - std::log(z) * std::log(1.0 - z) - bernoulli_series(1.0 - z);
  }
  return bernoulli_series(z);
}

}  // namespace

Complex dilog(Complex z) {
  if (z == 0.0) return 0.0;
  if (std::abs(z) <= 1.0) return dilog_disk(z);
  // Inversion; on the cut z > 1 the sign of a zero imaginary part picks the side.
  const Complex l = std::log(-z);
  return -kZeta2 - 0.5 * l * l - dilog_disk(1.0 / z);
}

double bloch_wigner(Complex z) {
  if (z == 0.0 || z == 1.0) return 0.0;
  return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

Complex ldil(Complex zeta) { return dilog(std::exp(kTwoPiI * zeta)) / kTwoPiI; }

Complex ldil_derivative(Complex zeta) { return -std::log(1.0 - std::exp(kTwoPiI * zeta)); }

}  // namespace octa
