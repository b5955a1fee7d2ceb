// Scalar golden-section maximization. The objective is evaluated in long
// double: comparison-based search localizes a flat maximum only to about
// sqrt(epsilon) of the working precision, and double precision alone would
// leave ~1e-8 position error.

#pragma once

#include <cmath>

namespace qclone {

template <typename F>
long double golden_section_max(F&& f, long double lo, long double hi, long double tol) {
    const long double invphi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    long double a = lo, b = hi;
    long double c = b - invphi * (b - a);
    long double d = a + invphi * (b - a);
    long double fc = f(c);
    long double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5L * (a + b);
}

}  // namespace qclone
