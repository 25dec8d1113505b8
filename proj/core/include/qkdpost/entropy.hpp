#pragma once

#include <cmath>
#include <stdexcept>

namespace qkdpost {

/// Binary entropy H2(p) = -p log2 p - (1-p) log2 (1-p), with H2(0)=H2(1)=0.
/// All bound arithmetic runs in long double: the phase-error exponent
/// multiplies H2 differences of order 1e-6 by populations of order 1e7.
inline long double binary_entropy(long double p) {
    if (p < 0.0L || p > 1.0L) throw std::invalid_argument("binary_entropy: p outside [0,1]");
    if (p == 0.0L || p == 1.0L) return 0.0L;
    return -p * std::log2l(p) - (1.0L - p) * std::log2l(1.0L - p);
}

}  // namespace qkdpost
