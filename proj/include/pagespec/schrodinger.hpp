#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "pagespec/chebyshev.hpp"
#include "pagespec/legendre.hpp"
#include "pagespec/operator_ode.hpp"
#include "pagespec/scalar_operator.hpp"

namespace pagespec {

// Closed-form unperturbed potential V0(s) for the nu = 0 problem,
// V0 = (1/4) csc^2 s (mu + 4n^2 - (mu - 1) cos^2 s - 2).
inline double v0_potential(double s, long n, long mu) {
    double cs = std::cos(s), sn = std::sin(s);
    return 0.25 * (double(mu) + 4.0 * double(n * n) - (double(mu) - 1.0) * cs * cs - 2.0) / (sn * sn);
}

// Leading correction delta V (proportional to nu^2).
inline double delta_v_potential(double s, long n, long mu, double nu) {
    double csc2 = 1.0 / (std::sin(s) * std::sin(s));
    double cot = std::cos(s) / std::sin(s);
    double n2 = double(n * n), m = double(mu);
    return nu * nu * csc2 / 32.0 *
           (5.0 * m - 4.0 * (m + 4.0 * n2 + 1.0) * std::cos(2.0 * s) + 32.0 * n2 * s * cot -
            16.0 * n2 - m * std::cos(4.0 * s) - 8.0 * s * cot + 12.0);
}

// Unit-normalized unperturbed eigenfunction y_{l,n}(s) = norm sqrt(sin s) P_l^n(cos s).
inline double y_mode_trig(double sin_s, double cos_s, int l, int n) {
    return y_normalization(l, n) * std::sqrt(sin_s) * assoc_legendre_with_sin(l, n, cos_s, sin_s);
}

inline double y_mode(double s, int l, int n) {
    return y_mode_trig(std::sin(s), std::cos(s), l, n);
}

// delta V evaluated from supplied trig values (stable near the walls)
inline double delta_v_trig(double s, double sin_s, double cos_s, long n, long mu, double nu) {
    double csc2 = 1.0 / (sin_s * sin_s);
    double cot = cos_s / sin_s;
    double c2 = 2.0 * cos_s * cos_s - 1.0;             // cos 2s
    double c4 = 2.0 * c2 * c2 - 1.0;                   // cos 4s
    double n2 = double(n * n), m = double(mu);
    return nu * nu * csc2 / 32.0 *
           (5.0 * m - 4.0 * (m + 4.0 * n2 + 1.0) * c2 + 32.0 * n2 * s * cot - 16.0 * n2 - m * c4 + 12.0 -
            8.0 * s * cot);
}

// V at a point from local Taylor data: V = q/w + m d^2/ds^2 (1/m),
// m = (p w)^{-1/4}, d/ds = sqrt(p/w) d/dx. Exact to rounding; global spectral
// differentiation cannot meet spec accuracy through the (pw)^{1/4} endpoint
// quarter-power.
template <typename T>
T schrodinger_potential_local(const TaylorSeries<T>& p, const TaylorSeries<T>& w, T q_over_w) {
    auto eta = pow(p * w, 0.25);  // 1/m
    auto df = [&](const TaylorSeries<T>& f) {
        auto r = sqrt(p.truncated(f.order() - 1) / w.truncated(f.order() - 1));
        return r * f.derivative();
    };
    auto d2 = df(df(eta));
    return q_over_w + d2.value() / eta.value();
}

struct SchrodingerForm {
    double s_max = 0.0;
    std::function<double(double)> s_of_x;  // monotone [-1,1] -> [0, s_max]
    std::function<double(double)> x_of_s;
    std::function<double(double)> m_of_x;  // (p w)^{-1/4}
    std::function<double(double)> V_of_x;  // potential at s(x), interior x only
};

// Numeric transform of a Sturm-Liouville problem to Schrodinger form.
// s(x) by spectral antiderivative of sqrt(w/p) in the angle variable
// u = arccos(-x); V by exact local Taylor differentiation.
inline SchrodingerForm schrodinger_transform_numeric(const SLProblem& sl, int k_cheb = 400) {
    // endpoint integrability check: (w/p)(x) ~ c/(1 -+ x) is required
    for (double sgn : {-1.0, 1.0}) {
        double r1 = sl.w(sgn * (1.0 - 1e-4)) / sl.p(sgn * (1.0 - 1e-4)) * 1e-4;
        double r2 = sl.w(sgn * (1.0 - 1e-6)) / sl.p(sgn * (1.0 - 1e-6)) * 1e-6;
        if (!(r1 > 0.0) || !(r2 > 0.0) || r2 / r1 > 30.0 || r1 / r2 > 30.0)
            throw std::runtime_error("schrodinger_transform_numeric: sqrt(w/p) not integrable at an endpoint");
    }
    auto g = [&sl](double u) {
        double x = -std::cos(u);
        double sinu = std::sin(u);
        if (sinu < 1e-12) {
            // endpoint limit of sqrt(w/p) sin u, using p ~ p'(x) (1 -+ x)
            double t = 1e-8;
            double xx = (u < 1.0) ? (-1.0 + t) : (1.0 - t);
            return std::sqrt(sl.w(xx) / (sl.p(xx) / t)) * std::sqrt(2.0 - t);
        }
        return std::sqrt(sl.w(x) / sl.p(x)) * sinu;
    };
    auto gs = cheb_interpolate<double>(g, 0.0, M_PI, k_cheb);
    auto F = cheb_antiderivative(gs);
    double smax = F.eval(M_PI);

    SchrodingerForm out;
    out.s_max = smax;
    out.s_of_x = [F](double x) { return F.eval(std::acos(-x)); };
    out.x_of_s = [F, smax](double s) {
        if (s <= 0.0) return -1.0;
        if (s >= smax) return 1.0;
        double lo = 0.0, hi = M_PI;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            if (F.eval(mid) < s) lo = mid; else hi = mid;
        }
        return -std::cos(0.5 * (lo + hi));
    };
    out.m_of_x = [&sl](double x) { return std::pow(sl.p(x) * sl.w(x), -0.25); };
    auto pf = sl.p, wf = sl.w, qf = sl.q;
    auto pjet = sl.p_jet, wjet = sl.w_jet;
    out.V_of_x = [wf, qf, pjet, wjet](double x) {
        Jet pj = pjet(x, 4), wj = wjet(x, 4);
        return schrodinger_potential_local(pj, wj, qf(x) / wf(x));
    };
    return out;
}

}  // namespace pagespec
