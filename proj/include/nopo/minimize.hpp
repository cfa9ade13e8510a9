#pragma once

// Derivative-free 1-D minimization by golden-section search. Good enough for
// the smooth single-minimum objectives that appear on the resonant-drive
// curve; not a general optimizer.

#include <cmath>

namespace nopo {

template <typename F>
double minimize_golden(F&& f, double lo, double hi, double x_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > x_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace nopo
