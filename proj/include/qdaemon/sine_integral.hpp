// sine_integral.hpp — Si(x) = ∫₀ˣ sin t / t dt.
//
// Power series on |x| < 16 (long-double accumulation keeps the alternating
// cancellation below 1e-13); for larger arguments the asymptotic auxiliary
// form is evaluated through the Lentz continued fraction of E₁(ix), which
// resums the divergent asymptotic expansion to full precision.

#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "qdaemon/common.hpp"

namespace qdaemon {

namespace detail {

inline double si_series(double x) {
    const long double x2 = static_cast<long double>(x) * x;
    long double term = x;  // k = 0: x / (1 * 1!)
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        const long double m = 2.0L * k;
        term *= -x2 * (m - 1.0L) / ((m + 1.0L) * (m + 1.0L) * m);
        sum += term;
        if (std::fabs(static_cast<double>(term)) <
            1e-20L * std::fabs(static_cast<double>(sum)) + 1e-300L)
            break;
    }
    return static_cast<double>(sum);
}

// E₁(z) by the modified Lentz continued fraction
//   E₁(z) = e^{-z} / (z + 1 - 1²/(z + 3 - 2²/(z + 5 - ...)))
// valid off the negative real axis; used here with z = ix, x ≥ 16.
inline std::complex<double> e1_continued_fraction(std::complex<double> z) {
    const double tiny = 1e-290;
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> f = d;
    for (int j = 1; j < 400; ++j) {
        const double a = -static_cast<double>(j) * j;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return f * std::exp(-z);
}

} // namespace detail

/// Sine integral, odd in x, absolute error below 1e-12 on the real line.
inline double si(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::fabs(x);
    double v;
    if (ax < 16.0) {
        v = detail::si_series(ax);
    } else if (std::isinf(ax)) {
        v = pi / 2;
    } else {
        // Si(x) = π/2 + Im E₁(ix) for x > 0
        v = pi / 2 + detail::e1_continued_fraction({0.0, ax}).imag();
    }
    return x < 0.0 ? -v : v;
}

} // namespace qdaemon
