#pragma once

#include "octa/numeric.hpp"

namespace octa {

/// Principal branch of Li_2, accurate to about 1e-15 relative. On the cut
/// z > 1 a signed zero imaginary part selects the side, as for std::log.
Complex dilog(Complex z);

/// D(z) = Im Li_2(z) + arg(1 - z) log|z|; zero at 0, 1 and infinity.
double bloch_wigner(Complex z);

/// l(zeta) = Li_2(exp(2 pi i zeta)) / (2 pi i).
Complex ldil(Complex zeta);

/// dl/dzeta = -log(1 - exp(2 pi i zeta)).
Complex ldil_derivative(Complex zeta);

}  // namespace octa
