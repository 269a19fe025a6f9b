#pragma once

#include <cmath>
#include <stdexcept>

#include "pagespec/taylor_series.hpp"

namespace pagespec {

// Quartic whose unique root in (0,1) fixes the Page geometry.
inline double nu_quartic(double nu) {
    return ((nu + 4.0) * nu - 6.0) * nu * nu + 12.0 * nu - 3.0;
}

// Unique root of nu^4 + 4 nu^3 - 6 nu^2 + 12 nu - 3 in (0,1), safeguarded Newton.
inline double solve_nu() {
    double lo = 0.0, hi = 1.0;
    double x = 0.3;
    for (int it = 0; it < 200; ++it) {
        double f = nu_quartic(x);
        if (f > 0.0) hi = x; else lo = x;
        double df = ((4.0 * x + 12.0) * x - 12.0) * x + 12.0;
        double step = f / df;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) < 1e-17 * (1.0 + std::abs(x))) { x = xn; break; }
        x = xn;
    }
    return x;
}

// Parameters (nu, Lambda) of the Page metric plus the derived scales
// S = 3(1+nu^2)/Lambda and alpha = 1/(2(3+nu^2)).
struct MetricParams {
    double nu = 0.0;
    double lambda_cc = 1.0;
    double s_scale = 0.0;
    double alpha = 0.0;

    static MetricParams page(double lambda_cc = 1.0) {
        if (!(lambda_cc > 0.0)) throw std::invalid_argument("MetricParams: Lambda must be positive");
        return from_nu(solve_nu(), lambda_cc);
    }

    // used by tests and by the perturbative machinery, where nu is an expansion parameter
    static MetricParams from_nu(double nu, double lambda_cc = 1.0) {
        MetricParams p;
        p.nu = nu;
        p.lambda_cc = lambda_cc;
        p.s_scale = 3.0 * (1.0 + nu * nu) / lambda_cc;
        p.alpha = 1.0 / (2.0 * (3.0 + nu * nu));
        return p;
    }
};

// A(x) = (3 - nu^2 - nu^2 (1+nu^2) x^2)(1 - x^2) / (1 - nu^2 x^2)
template <typename T>
TaylorSeries<T> metric_A(const TaylorSeries<T>& x, T nu2) {
    auto x2 = x * x;
    return (T(3) - nu2 - nu2 * (T(1) + nu2) * x2) * (T(1) - x2) / (T(1) - nu2 * x2);
}

// B(x) = (1 - nu^2 x^2) / (3 + 6 nu^2 - nu^4)
template <typename T>
TaylorSeries<T> metric_B(const TaylorSeries<T>& x, T nu2) {
    return (T(1) - nu2 * x * x) / (T(3) + T(6) * nu2 - nu2 * nu2);
}

inline double metric_A(double x, const MetricParams& p) {
    double n2 = p.nu * p.nu;
    return (3.0 - n2 - n2 * (1.0 + n2) * x * x) * (1.0 - x * x) / (1.0 - n2 * x * x);
}

inline double metric_B(double x, const MetricParams& p) {
    double n2 = p.nu * p.nu;
    return (1.0 - n2 * x * x) / (3.0 + 6.0 * n2 - n2 * n2);
}

}  // namespace pagespec
