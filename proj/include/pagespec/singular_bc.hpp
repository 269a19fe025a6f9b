#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pagespec/operator_ode.hpp"

namespace pagespec {

// Eigenvalue-dependent Robin boundary condition, sign convention
//   u'(+-1) = +-(c0 + lambda c_lambda) u(+-1).
struct RobinBC {
    double c0 = 0.0;
    double c_lambda = 0.0;
    Endpoint endpoint = Endpoint::Right;
};

struct IndicialData {
    double p_minus = 0.0;  // smaller exponent magnitude branch, see tensor usage
    double p_plus = 0.0;
};

namespace detail {

// Normal-form series pi, chi0, chiL at an endpoint:
//   u'' + (pi(t)/t) u' + ((chi0(t) - lambda chiL(t))/t^2) u = 0.
struct NormalForm {
    Jet pi, chi0, chiL;
};

inline NormalForm normal_form(const EndpointData& d) {
    // require ord(T2) = 2, ord(T1) >= 1, ord(TL) >= 1
    Jet t2 = d.T2.shift_down(2);
    NormalForm nf{d.T1.shift_down(1) / t2, d.T0 / t2, d.TL / t2};
    return nf;
}

inline double indicial_poly(const NormalForm& nf, double r) {
    return r * (r - 1.0) + nf.pi[0] * r + nf.chi0[0];
}

}  // namespace detail

// Both roots of the indicial equation at an endpoint, ascending.
inline std::pair<double, double> indicial_exponents(const OperatorOde& op, Endpoint e, int order = 8) {
    EndpointData d;
    try {
        d = op.local(e, order);
        auto nf = detail::normal_form(d);
        if (std::abs(nf.chiL[0]) > 1e-8 * (1.0 + std::abs(nf.chi0[0])))
            throw std::runtime_error("indicial_exponents: lambda-dependent indicial equation");
        double b = nf.pi[0] - 1.0, c = nf.chi0[0];
        double disc = b * b - 4.0 * c;
        if (disc < 0.0) throw std::runtime_error("indicial_exponents: complex exponents");
        double s = std::sqrt(disc);
        return {(-b - s) / 2.0, (-b + s) / 2.0};
    } catch (const std::runtime_error& err) {
        throw std::runtime_error(std::string("indicial_exponents (irregular endpoint data?): ") + err.what());
    }
}

// Normalizability: h ~ t^r is admissible when it diverges strictly slower
// than 1/t (finite L2 energy threshold). When both roots pass, which happens
// only for integer-separated pairs here (scalar |n| = 1), regularity selects
// the larger root: the smaller-root solution develops a log term.
inline double select_branch(double r_lo, double r_hi) {
    const bool lo_ok = r_lo > -1.0 + 1e-12;
    const bool hi_ok = r_hi > -1.0 + 1e-12;
    if (!lo_ok && !hi_ok) throw std::runtime_error("select_branch: no normalizable Frobenius branch");
    if (lo_ok && hi_ok) {
        double gap = r_hi - r_lo;
        if (gap > 1e-10 && std::abs(gap - std::round(gap)) > 1e-8)
            throw std::runtime_error("select_branch: both branches admissible and non-resonant");
        return r_hi;
    }
    return hi_ok ? r_hi : r_lo;
}

// A singular problem transformed to its regular factor:
//   u(x) = (1+x)^{pL} (1-x)^{pR} h(x),  pL/pR the divergence degrees of h.
// Interior evaluators act on u; Robin data encodes regularity at t = 0.
struct StrippedProblem {
    std::function<double(double)> al2, al1, al0, beta;
    RobinBC robin_left, robin_right;
    double p_left = 0.0, p_right = 0.0;  // divergence degrees (pL, pR)
    // Taylor coefficients of the regular series u = sum c_j t^j at an endpoint,
    // for the given eigenvalue, c_0 = 1; used for Robin data and shooting seeds.
    std::function<std::vector<double>(Endpoint, double lambda, int nterms)> endpoint_series;
    // phi(x)^2 * b(x): weight against which the physical eigenfunctions h are orthogonal
    std::function<double(double)> reinstated_weight;
    std::function<double(double)> strip_factor;  // phi(x): h = phi u
    std::string label;
    bool odd_resolution_required = false;  // tensor master equation: grid must avoid x = 0
};

namespace detail {

// Endpoint data of the u-equation: substitute h = t^sigma (2-t)^{sigma_far} u.
inline EndpointData strip_local(const EndpointData& d, double sigma, double sigma_far, int order) {
    // g1 = t G'/G and t^2 G''/G for G = t^sigma (2-t)^{sigma_far}
    Jet t = Jet::variable(0.0, order);
    Jet two_minus_t = 2.0 - t;
    Jet g1 = Jet::constant(sigma, order) - sigma_far * (t / two_minus_t);
    // G''/G = (G'/G)^2 + (G'/G)';  t^2 (G'/G)' = -sigma - sigma_far t^2/(2-t)^2
    Jet t2_gpp = g1 * g1 + Jet::constant(-sigma, order) -
                 sigma_far * ((t * t) / (two_minus_t * two_minus_t));
    EndpointData out;
    Jet t2s = d.T2.shift_down(2);  // analytic, nonzero at 0
    out.T2 = d.T2;
    out.T1 = 2.0 * (t2s.shift_up(1) * g1) + d.T1;             // 2 T2 G'/G + T1, ord >= 1
    out.T0 = t2s * t2_gpp + d.T1.shift_down(1) * g1 + d.T0;   // T2 G''/G + T1 G'/G + T0
    out.TL = d.TL;
    return out;
}

inline std::vector<double> frobenius_series(const NormalForm& nf, double lambda, int nterms) {
    std::vector<double> c(static_cast<size_t>(nterms) + 1, 0.0);
    c[0] = 1.0;
    auto at = [](const Jet& s, int k) { return k <= s.order() ? s[k] : 0.0; };
    for (int j = 1; j <= nterms; ++j) {
        double ij = j * (j - 1.0) + nf.pi[0] * j + nf.chi0[0];
        if (std::abs(ij) < 1e-10)
            throw std::runtime_error("frobenius_series: resonant recursion (log term required)");
        double s = 0.0;
        for (int m = 1; m <= j; ++m)
            s += (at(nf.pi, m) * (j - m) + at(nf.chi0, m) - lambda * at(nf.chiL, m)) * c[static_cast<size_t>(j - m)];
        c[static_cast<size_t>(j)] = -s / ij;
    }
    return c;
}

}  // namespace detail

// Robin data from the first subleading series coefficient. The lambda
// dependence of c_1 is exactly affine; computed at three lambda values both to
// extract (c0, c_lambda) and to assert affineness.
inline RobinBC robin_from_series(const EndpointData& stripped_local, Endpoint e) {
    auto nf = detail::normal_form(stripped_local);
    if (std::abs(nf.chi0[0]) > 1e-7 * (1.0 + std::abs(nf.chi0[1])))
        throw std::runtime_error("robin_from_series: stripped problem lacks the regular root");
    double c1_0 = detail::frobenius_series(nf, 0.0, 1)[1];
    double c1_p = detail::frobenius_series(nf, 1.0, 1)[1];
    double c1_m = detail::frobenius_series(nf, -1.0, 1)[1];
    if (std::abs(c1_p + c1_m - 2.0 * c1_0) > 1e-12 * (1.0 + std::abs(c1_0)))
        throw std::runtime_error("robin_from_series: boundary condition not affine in lambda");
    // u_t(0) = c1(lambda) u(0); with u'(+-1) = +-(c0 + lambda c_lambda) u(+-1)
    // both endpoints give c0 = -c1^0, c_lambda = -c1^lambda.
    RobinBC bc;
    bc.endpoint = e;
    bc.c0 = -c1_0;
    bc.c_lambda = -(c1_p - c1_m) / 2.0;
    return bc;
}

// Strip the singular factors off an OperatorOde. Branch selection is
// automatic per select_branch; supply the problem and get back the regular
// formulation with Robin data at both ends.
inline StrippedProblem strip(const OperatorOde& op, int order = 10) {
    auto [rl_lo, rl_hi] = indicial_exponents(op, Endpoint::Left, order);
    auto [rr_lo, rr_hi] = indicial_exponents(op, Endpoint::Right, order);
    double sig_l = select_branch(rl_lo, rl_hi);
    double sig_r = select_branch(rr_lo, rr_hi);

    StrippedProblem sp;
    sp.label = op.label;
    sp.p_left = -sig_l;   // divergence degree
    sp.p_right = -sig_r;

    // psi = phi'/phi with phi = (1+x)^{sig_l} (1-x)^{sig_r}
    auto psi = [sig_l, sig_r](double x) { return sig_l / (1.0 + x) - sig_r / (1.0 - x); };
    auto psip = [sig_l, sig_r](double x) { return -sig_l / ((1.0 + x) * (1.0 + x)) - sig_r / ((1.0 - x) * (1.0 - x)); };
    auto a2 = op.a2, a1 = op.a1, a0 = op.a0, b = op.bweight;
    sp.al2 = a2;
    sp.al1 = [a2, a1, psi](double x) { return 2.0 * a2(x) * psi(x) + a1(x); };
    sp.al0 = [a2, a1, a0, psi, psip](double x) {
        double ps = psi(x);
        return a2(x) * (ps * ps + psip(x)) + a1(x) * ps + a0(x);
    };
    sp.beta = b;
    sp.strip_factor = [sig_l, sig_r](double x) { return std::pow(1.0 + x, sig_l) * std::pow(1.0 - x, sig_r); };
    sp.reinstated_weight = [sig_l, sig_r, b](double x) {
        return std::pow(1.0 + x, 2.0 * sig_l) * std::pow(1.0 - x, 2.0 * sig_r) * b(x);
    };

    auto local = op.local;
    auto stripped_local = [local, sig_l, sig_r, order](Endpoint e, int ord) {
        double sig = (e == Endpoint::Right) ? sig_r : sig_l;
        double far = (e == Endpoint::Right) ? sig_l : sig_r;
        return detail::strip_local(local(e, ord + 2), sig, far, ord + 2);
    };
    sp.robin_left = robin_from_series(stripped_local(Endpoint::Left, order), Endpoint::Left);
    sp.robin_right = robin_from_series(stripped_local(Endpoint::Right, order), Endpoint::Right);
    sp.endpoint_series = [stripped_local](Endpoint e, double lambda, int nterms) {
        auto nf = detail::normal_form(stripped_local(e, nterms + 2));
        return detail::frobenius_series(nf, lambda, nterms);
    };
    return sp;
}

}  // namespace pagespec
