#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace pagespec {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(i)] = -x;
        nodes[static_cast<size_t>(n - 1 - i)] = x;
        double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<size_t>(i)] = wgt;
        weights[static_cast<size_t>(n - 1 - i)] = wgt;
    }
}

// Fixed-order Gauss-Legendre on [a,b].
template <typename F>
auto gauss_legendre_integrate(F&& f, double a, double b, int n) -> decltype(f(a)) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    using R = decltype(f(a));
    R acc{};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) acc += R(w[static_cast<size_t>(i)] * half) * f(mid + half * x[static_cast<size_t>(i)]);
    return acc;
}

// Adaptive panel subdivision with embedded GL(15)/GL(30) error estimate.
inline double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                             double abs_tol = 1e-12, int depth = 0) {
    double coarse = gauss_legendre_integrate(f, a, b, 15);
    double fine = gauss_legendre_integrate(f, a, b, 30);
    if (std::abs(fine - coarse) <= abs_tol || depth >= 28) return fine;
    double m = 0.5 * (a + b);
    return adaptive_gauss(f, a, m, 0.5 * abs_tol, depth + 1) +
           adaptive_gauss(f, m, b, 0.5 * abs_tol, depth + 1);
}

// Quadrature over (0, pi) for csc^2-type integrands: substitute s = pi(1+cos t)/2,
// which compresses the endpoints, then integrate in t with composite GL panels.
// The callback receives (s, sin s, cos s) with the trig values computed from
// the exact wall distances pi sin^2(t/2) and pi cos^2(t/2); reconstructing
// them from a rounded s loses the relative accuracy the csc^2 walls need.
template <typename F3>
double integrate_0_pi_trig(F3&& f, double abs_tol = 1e-12) {
    auto g = [&](double t) {
        double h = std::sin(0.5 * t), c = std::cos(0.5 * t);
        double d_right = M_PI * h * h;  // pi - s
        double d_left = M_PI * c * c;   // s
        double sin_s, cos_s;
        if (d_right < d_left) {
            sin_s = std::sin(d_right);
            cos_s = -std::cos(d_right);
        } else {
            sin_s = std::sin(d_left);
            cos_s = std::cos(d_left);
        }
        double s = d_left;  // = pi - d_right exactly in exact arithmetic
        return f(s, sin_s, cos_s) * 0.5 * M_PI * std::sin(t);
    };
    auto composite = [&](int panels, int order) {
        double acc = 0.0;
        for (int i = 0; i < panels; ++i)
            acc += gauss_legendre_integrate(g, M_PI * i / panels, M_PI * (i + 1) / panels, order);
        return acc;
    };
    double coarse = composite(6, 40);
    double fine = composite(6, 64);
    if (std::abs(fine - coarse) > std::max(abs_tol, 1e-13 * std::abs(fine)) * 100.0) {
        double finer = composite(12, 64);
        if (std::abs(finer - fine) > std::max(abs_tol, 1e-13 * std::abs(finer)) * 100.0)
            throw std::runtime_error("integrate_0_pi quadrature not converging");
        return finer;
    }
    return fine;
}

inline double integrate_0_pi_endpoint_safe(const std::function<double(double)>& f,
                                           double abs_tol = 1e-12) {
    return integrate_0_pi_trig([&f](double s, double, double) { return f(s); }, abs_tol);
}

}  // namespace pagespec
