#pragma once

#include <cmath>

#include "pagespec/mode_numbers.hpp"
#include "pagespec/operator_ode.hpp"
#include "pagespec/page_metric.hpp"

namespace pagespec {

// Scalar Laplacian reduced to -(p u')' + q u = lambda w u with
//   p = A sqrt(B),  q = [n^2/(4 alpha^2 S A) + mu/(4 S B)] w,  w = S sqrt(B).
inline SLProblem build_scalar(const ModeNumbers& modes, const MetricParams& params) {
    const double nu2 = params.nu * params.nu;
    const double S = params.s_scale;
    const double alpha = params.alpha;
    const double n2 = double(modes.n * modes.n);
    const double mu = double(modes.mu);

    SLProblem sl;
    sl.label = "scalar(n=" + std::to_string(modes.n) + ",k=" + std::to_string(modes.k) + ")";
    sl.p = [nu2, params](double x) { return metric_A(x, params) * std::sqrt(metric_B(x, params)); };
    sl.w = [S, params](double x) { return S * std::sqrt(metric_B(x, params)); };
    sl.q = [n2, mu, S, alpha, params](double x) {
        double A = metric_A(x, params), B = metric_B(x, params);
        double w = S * std::sqrt(B);
        return (n2 / (4.0 * alpha * alpha * S * A) + mu / (4.0 * S * B)) * w;
    };
    sl.p_prime = [nu2](double x) {
        Jet xj = Jet::variable(x, 1);
        Jet p = metric_A(xj, nu2) * sqrt(metric_B(xj, nu2));
        return p[1];
    };
    sl.p_jet = [nu2](double x, int order) {
        Jet xj = Jet::variable(x, order);
        return metric_A(xj, nu2) * sqrt(metric_B(xj, nu2));
    };
    sl.w_jet = [S, nu2](double x, int order) {
        Jet xj = Jet::variable(x, order);
        return S * sqrt(metric_B(xj, nu2));
    };
    // Local data in t, premultiplied by t:  T2 = -t p, T1 = -t dp/dt,
    // T0 = t q, TL = t w (so T2 u_tt + T1 u_t + (T0 - lambda TL) u = 0).
    sl.local = [nu2, S, alpha, n2, mu](Endpoint e, int order) {
        int ord = order + 2;
        Jet t = Jet::variable(0.0, ord);
        Jet x = (e == Endpoint::Right) ? (1.0 - t) : (-1.0 + t);
        Jet A = metric_A(x, nu2);
        Jet sqB = sqrt(metric_B(x, nu2));
        Jet p = A * sqB;
        Jet w = S * sqB;
        EndpointData d;
        d.T2 = -p.shift_up(1);
        d.T1 = -p.derivative().truncated(ord - 1).shift_up(1);
        // t q = n^2/(4 alpha^2 S) * sqB * (t/A) + mu/(4 S) * t / sqB ... times w-structure:
        // q = [n^2/(4 a^2 S A) + mu/(4 S B)] * S sqB = n^2 sqB/(4 a^2 A) + mu/(4 sqB)
        Jet t_over_A = 1.0 / A.shift_down(1);
        d.T0 = (n2 / (4.0 * alpha * alpha)) * (sqB * t_over_A) + (mu / 4.0) * (t / sqB);
        d.TL = w.shift_up(1);
        return d;
    };
    return sl;
}

// The exactly solvable nu = 0 reference problem on the homogeneous metric:
// (1-x^2) u'' - 2x u' + [lambda - mu/4 - n^2/(1-x^2)] u = 0, in SL form
// p = 1 - x^2, w = 1, q = mu/4 + n^2/(1-x^2). Spectrum mu/4 + l(l+1).
inline SLProblem build_nu_zero_reference(const ModeNumbers& modes) {
    const double n2 = double(modes.n * modes.n);
    const double mu = double(modes.mu);
    SLProblem sl;
    sl.label = "nu-zero-reference(n=" + std::to_string(modes.n) + ",k=" + std::to_string(modes.k) + ")";
    sl.p = [](double x) { return 1.0 - x * x; };
    sl.p_prime = [](double x) { return -2.0 * x; };
    sl.w = [](double) { return 1.0; };
    sl.q = [n2, mu](double x) { return mu / 4.0 + n2 / (1.0 - x * x); };
    sl.p_jet = [](double x, int order) {
        Jet xj = Jet::variable(x, order);
        return 1.0 - xj * xj;
    };
    sl.w_jet = [](double, int order) { return Jet::constant(1.0, order); };
    sl.local = [n2, mu](Endpoint e, int order) {
        int ord = order + 2;
        Jet t = Jet::variable(0.0, ord);
        Jet x = (e == Endpoint::Right) ? (1.0 - t) : (-1.0 + t);
        Jet p = 1.0 - x * x;  // = t(2-t) at both ends
        EndpointData d;
        d.T2 = -p.shift_up(1);
        d.T1 = -p.derivative().truncated(ord - 1).shift_up(1);
        d.T0 = (mu / 4.0) * t + n2 / p.shift_down(1);
        d.TL = t;
        return d;
    };
    return sl;
}

// Closed-form spectrum of the reference problem: lambda0 = mu/4 + l(l+1), l = n + N.
inline double nu_zero_eigenvalue(const ModeNumbers& modes, long overtone) {
    long l = modes.n + overtone;
    return double(modes.mu) / 4.0 + double(l * (l + 1));
}

}  // namespace pagespec
