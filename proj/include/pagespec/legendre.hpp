#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pagespec {

// Associated Legendre P_l^m(z) without Condon-Shortley phase, m >= 0.
// Templated so the perturbation module can evaluate at complex argument.
// Standard recurrences: P_m^m = (2m-1)!! (1-z^2)^{m/2}, then upward in l.
// variant with the sqrt(1 - z^2) factor supplied by the caller; avoids the
// catastrophic 1 - z^2 cancellation when z is a cosine near +-1
template <typename T>
T assoc_legendre_with_sin(int l, int m, T z, T somx2) {
    if (m < 0 || l < m) return T(0);
    T pmm = T(1);
    for (int i = 1; i <= m; ++i) pmm *= T(2.0 * i - 1.0) * somx2;
    if (l == m) return pmm;
    T pmmp1 = z * T(2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    T pll = T(0);
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (z * T(2.0 * ll - 1.0) * pmmp1 - T(double(ll + m - 1)) * pmm) / T(double(ll - m));
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

template <typename T>
T assoc_legendre(int l, int m, T z) {
    using std::sqrt;
    return assoc_legendre_with_sin(l, m, z, sqrt(T(1) - z * z));
}

// All P_l(z) for l = 0..lmax (m = 0), one recurrence pass.
template <typename T>
std::vector<T> legendre_table(int lmax, T z) {
    std::vector<T> p(static_cast<size_t>(lmax) + 1);
    p[0] = T(1);
    if (lmax >= 1) p[1] = z;
    for (int l = 1; l < lmax; ++l)
        p[static_cast<size_t>(l) + 1] = (T(2.0 * l + 1.0) * z * p[static_cast<size_t>(l)] - T(double(l)) * p[static_cast<size_t>(l) - 1]) / T(double(l + 1));
    return p;
}

// Normalization making int_0^pi y^2 ds = 1 for y = norm * sqrt(sin s) * P_l^n(cos s).
inline double y_normalization(int l, int n) {
    if (n < 0 || l < n) throw std::invalid_argument("y_normalization: need 0 <= n <= l");
    double logr = 0.0;  // log((l-n)!/(l+n)!)
    for (int j = l - n + 1; j <= l + n; ++j) logr -= std::log(double(j));
    return std::sqrt((1.0 + 2.0 * l) / 2.0 * std::exp(logr));
}

}  // namespace pagespec
