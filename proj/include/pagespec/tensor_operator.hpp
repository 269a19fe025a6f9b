#pragma once

#include <cmath>
#include <stdexcept>

#include "pagespec/operator_ode.hpp"
#include "pagespec/page_metric.hpp"
#include "pagespec/singular_bc.hpp"

namespace pagespec {

// Auxiliary fields of the tensor (Lichnerowicz h00) master equation
//   h'' + C(x) h' + D(x) h = -(lt/A) h,   lt the rescaled eigenvalue.
//
// The equation has regular singular points at x = +-1 and an apparent
// singular point at x = 0: omega(x), hence C(x), carries a simple pole there
// with residue -6/(3+nu^2). Grids for the full-interval form must avoid x = 0.
struct TensorCoefficients {
    double nu = 0.0;
    double b = 0.0, c = 0.0, d = 0.0;

    static TensorCoefficients make(const MetricParams& params) {
        TensorCoefficients tc;
        double nu2 = params.nu * params.nu;
        double den = 3.0 + 6.0 * nu2 - nu2 * nu2;
        tc.nu = params.nu;
        tc.d = (3.0 - nu2) / den;
        tc.b = -(3.0 + nu2 * nu2) / den;
        tc.c = nu2 * (1.0 + nu2) / den;
        return tc;
    }

    template <typename S>
    TaylorSeries<S> W_poly(const TaylorSeries<S>& x) const {
        auto x2 = x * x;
        return S(c) * x2 * x2 + S(b) * x2 + S(d);
    }
    template <typename S>
    TaylorSeries<S> E_field(const TaylorSeries<S>& x) const {
        return S(2) * x * (S(b) + S(2) * S(c) * x * x) / W_poly(x);
    }
    // F(x) = 2x(3+nu^2+x^2)/(B W) * [(-1+2nu^2-nu^4)/(3+6nu^2-nu^4)^2]
    template <typename S>
    TaylorSeries<S> F_field(const TaylorSeries<S>& x) const {
        S nu2 = S(nu * nu);
        S den = S(3) + S(6) * nu2 - nu2 * nu2;
        S pre = (S(-1) + S(2) * nu2 - nu2 * nu2) / (den * den);
        return S(2) * x * (S(3) + nu2 + x * x) * pre / (metric_B(x, nu2) * W_poly(x));
    }
    // bracket of omega: 4 B''/B + E^2 - 2(2b + 12c x^2)/W
    template <typename S>
    TaylorSeries<S> omega_bracket(const TaylorSeries<S>& x) const {
        S nu2 = S(nu * nu);
        S den = S(3) + S(6) * nu2 - nu2 * nu2;
        auto B = metric_B(x, nu2);
        auto Bpp = TaylorSeries<S>::constant(S(-2) * nu2 / den, x.order());
        auto E = E_field(x);
        return S(4) * Bpp / B + E * E - S(2) * (S(2) * S(b) + S(12) * S(c) * x * x) / W_poly(x);
    }
    template <typename S>
    TaylorSeries<S> omega_field(const TaylorSeries<S>& x) const {
        return omega_bracket(x) / F_field(x);
    }
    template <typename S>
    TaylorSeries<S> C_field(const TaylorSeries<S>& x) const {
        S nu2 = S(nu * nu);
        auto B = metric_B(x, nu2);
        return S(3) * E_field(x) + B.derivative().truncated(B.order() - 1) / B.truncated(B.order() - 1) + omega_field(x).truncated(B.order() - 1);
    }
    template <typename S>
    TaylorSeries<S> D_field(const TaylorSeries<S>& x) const {
        S nu2 = S(nu * nu);
        int ord = x.order() - 1;
        auto xt = x.truncated(ord);
        auto B = metric_B(x, nu2);
        auto BpB = B.derivative().truncated(ord) / B.truncated(ord);
        auto E = E_field(xt);
        auto om = omega_field(xt);
        return E * E / S(2) + S(3) * E * BpB / S(2) - BpB * BpB +
               (S(2) * S(b) + S(12) * S(c) * xt * xt) / W_poly(xt) + S(3) * E * om / S(2);
    }

    double W_val(double x) const { return ((c * x * x + b) * x * x + d); }
    double E_val(double x) const { return 2.0 * x * (b + 2.0 * c * x * x) / W_val(x); }
    double F_val(double x) const { return F_field(Jet::variable(x, 0)).value(); }
    double omega_val(double x) const { return omega_field(Jet::variable(x, 0)).value(); }
    double C_val(double x) const { return C_field(Jet::variable(x, 1)).value(); }
    double D_val(double x) const { return D_field(Jet::variable(x, 1)).value(); }
};

// lambda = Lambda * lt / (3 (1 + nu^2))
inline double lambda_from_tilde(double lambda_tilde, const MetricParams& params) {
    return params.lambda_cc * lambda_tilde / (3.0 * (1.0 + params.nu * params.nu));
}

// Frobenius exponents p+- = (11 + 3nu^2 +- sqrt(17 + 8nu^2 + nu^4)) / (2(4 + nu^2));
// h00 ~ (1-x^2)^{-p} and only the "-" branch is normalizable.
inline IndicialData indicial_exponents_tensor(const MetricParams& params) {
    double nu2 = params.nu * params.nu;
    double root = std::sqrt(17.0 + 8.0 * nu2 + nu2 * nu2);
    IndicialData out;
    out.p_minus = (11.0 + 3.0 * nu2 - root) / (2.0 * (4.0 + nu2));
    out.p_plus = (11.0 + 3.0 * nu2 + root) / (2.0 * (4.0 + nu2));
    return out;
}

// Closed-form Robin data for the stripped tensor problem, u'(+-1) = +-(c0 + lt c_lambda) u(+-1).
// The rational coefficients are specific to the Page root (odd powers of nu
// enter through quartic reduction); valid only at that nu. The published
// two-line display carries an overall sign flip and uses lt (the rescaled
// eigenvalue) despite being written with the plain-lambda symbol; both fixes
// are validated against the independent series route to 1e-10.
inline std::pair<RobinBC, RobinBC> robin_tensor(const MetricParams& params) {
    double nu = params.nu, nu2 = nu * nu;
    double pm = indicial_exponents_tensor(params).p_minus;
    double den = (4.0 + nu2) * (-3.0 + 2.0 * nu2 + nu2 * nu2) * (15.0 + 4.0 * nu2 - 2.0 * pm * (4.0 + nu2));
    if (std::abs(den) < 1e-10) throw std::runtime_error("robin_tensor: vanishing denominator");
    double c0 = ((-35732.0 * nu2 * nu + 53792.0 * nu2 - 81660.0 * nu + 19596.0) * pm +
                 50620.0 * nu2 * nu - 76217.0 * nu2 + 115668.0 * nu - 27783.0) / den;
    double clam = (71.0 - 360.0 * nu + 233.0 * nu2 - 152.0 * nu2 * nu) / (2.0 * den);
    RobinBC left{c0, clam, Endpoint::Left};
    RobinBC right{c0, clam, Endpoint::Right};
    return {left, right};
}

// Full-interval master equation as an OperatorOde posed for lt:
//   a2 = 1, a1 = C, a0 = D, weight b = -1/A.
inline OperatorOde build_tensor(const MetricParams& params) {
    auto tc = TensorCoefficients::make(params);
    double nu2 = params.nu * params.nu;
    OperatorOde op;
    op.label = "tensor-h00";
    op.a2 = [](double) { return 1.0; };
    op.a1 = [tc](double x) { return tc.C_val(x); };
    op.a0 = [tc](double x) { return tc.D_val(x); };
    op.bweight = [params](double x) { return -1.0 / metric_A(x, params); };
    // local data premultiplied by t^2: T2 = t^2, T1 = -+ t^2 C, T0 = t^2 D, TL = -t^2/A
    op.local = [tc, nu2](Endpoint e, int order) {
        int ord = order + 3;
        Jet t = Jet::variable(0.0, ord);
        Jet x = (e == Endpoint::Right) ? (1.0 - t) : (-1.0 + t);
        double sgn = (e == Endpoint::Right) ? -1.0 : 1.0;  // dx/dt
        Jet A = metric_A(x, nu2);
        Jet B = metric_B(x, nu2);
        Jet W = tc.W_poly(x);
        Jet W_over_t = W.shift_down(1);
        Jet tE = 2.0 * x * (tc.b + 2.0 * tc.c * x * x) / W_over_t;  // t E(x)
        Jet tF = 2.0 * x * (3.0 + nu2 + x * x) *
                 ((-1.0 + 2.0 * nu2 - nu2 * nu2) / std::pow(3.0 + 6.0 * nu2 - nu2 * nu2, 2)) /
                 (B * W_over_t);  // t F(x)
        Jet Bp = sgn * B.derivative().truncated(ord - 1);  // dB/dx = sgn * dB/dt
        Jet Bt = B.truncated(ord - 1);
        Jet Bpp = sgn * Bp.derivative().truncated(ord - 2);  // d2B/dx2
        // t^2 * bracket = 4 t^2 B''/B + (tE)^2 - 2 t (2b + 12 c x^2) (t/W)
        Jet t2 = t * t;
        Jet br2 = 4.0 * (t2.truncated(ord - 2) * (Bpp / Bt.truncated(ord - 2))) + tE * tE -
                  2.0 * ((2.0 * tc.b + 12.0 * tc.c * x * x) / W_over_t).shift_up(1);
        // t^2 omega = (t^2 bracket) * t / (t F)
        Jet t2om = (br2.truncated(ord - 1) / tF.truncated(ord - 1)).shift_up(1);
        // t^2 C = 3 t (tE) + t^2 B'/B + t^2 omega
        Jet t2C = 3.0 * tE.shift_up(1) + (Bp / Bt).shift_up(2) + t2om;
        // t^2 D = (tE)^2/2 + (3/2) t (tE) B'/B - t^2 (B'/B)^2 + t(2b+12cx^2)(t/W) + (3/2)(tE)(t om)
        Jet BpB = Bp / Bt;
        Jet t2D = 0.5 * (tE * tE) + 1.5 * (tE * BpB).shift_up(1) - (BpB * BpB).shift_up(2) +
                  ((2.0 * tc.b + 12.0 * tc.c * x * x) / W_over_t).shift_up(1) +
                  1.5 * (tE.truncated(t2om.order() - 1) * t2om.shift_down(1));
        EndpointData d;
        d.T2 = t2;
        d.T1 = sgn * t2C;
        d.T0 = t2D;
        d.TL = -(1.0 / A.shift_down(1)).shift_up(1);  // -t^2/A
        return d;
    };
    return op;
}

// ---- parity sectors at the apparent singularity --------------------------
//
// In the stripped variable u (h00 = u / (1-x^2)^{p-}), solutions split at
// x = 0 into an analytic even branch and a |x|^theta branch with
// theta = (9+nu^2)/(3+nu^2). The spectrum is computed on the half domain
// xi = 2x^2 - 1 as two regular problems:
//    even sector:  u(x) = U(xi)
//    kink sector:  u(x) = |x|^theta G(xi)   (either parity extension)
// Both converge exponentially, unlike the full-interval discretization,
// which cannot represent the even-sector modes in double precision.

inline double tensor_kink_exponent(const MetricParams& params) {
    double nu2 = params.nu * params.nu;
    return (9.0 + nu2) / (3.0 + nu2);
}

namespace detail {

struct TensorInterior {
    // stripped full-interval evaluators (al2 = 1 implicit)
    std::function<double(double)> al1, al0, beta;
    double p_minus = 0.0;
};

// Jets in that = 1 - xi of that^2 * {x al1(x), al0(x), beta(x)} for the stripped
// full-interval problem, with 1 - x^2 = that/2 held exactly. Used to evaluate
// sector coefficients near xi = 1, where reconstructing 1 - x^2 from x loses
// the indicial cancellations in al0.
struct TensorRightJets {
    Jet t2_xal1, t2_al0, t2_beta;

    static TensorRightJets make(const MetricParams& params, int ord) {
        auto tc = TensorCoefficients::make(params);
        double nu2 = params.nu * params.nu;
        double pm = indicial_exponents_tensor(params).p_minus;
        Jet th = Jet::variable(0.0, ord);
        Jet x2 = 1.0 - 0.5 * th;
        Jet x = sqrt(x2);
        Jet B = (1.0 - nu2 * x2) / (3.0 + 6.0 * nu2 - nu2 * nu2);
        Jet BpB = -2.0 * nu2 * x / (1.0 - nu2 * x2);                       // B'/B (d/dx)
        double Bpp_const = -2.0 * nu2 / (3.0 + 6.0 * nu2 - nu2 * nu2);     // B''
        Jet W_over_th = 0.5 * (tc.d - tc.c * x2);                          // W = (th/2)(d - c x^2)
        Jet A_over_th = 0.5 * (3.0 - nu2 - nu2 * (1.0 + nu2) * x2) / (1.0 - nu2 * x2);
        Jet thE = 2.0 * x * (tc.b + 2.0 * tc.c * x2) / W_over_th;          // th * E
        Jet thF = 2.0 * x * (3.0 + nu2 + x2) *
                  ((-1.0 + 2.0 * nu2 - nu2 * nu2) / std::pow(3.0 + 6.0 * nu2 - nu2 * nu2, 2)) /
                  (B * W_over_th);                                          // th * F
        Jet th2 = th * th;
        Jet br2 = 4.0 * th2 * (Bpp_const / B) + thE * thE -
                  2.0 * ((2.0 * tc.b + 12.0 * tc.c * x2) / W_over_th).shift_up(1);  // th^2 bracket
        Jet th2om = (br2.truncated(ord - 1) / thF.truncated(ord - 1)).shift_up(1);  // th^2 omega
        Jet th2C = 3.0 * thE.shift_up(1) + (BpB * th2).truncated(th2om.order()) + th2om;
        Jet th2D = 0.5 * (thE * thE) + 1.5 * (thE * BpB).shift_up(1) - (BpB * BpB * th2) +
                   ((2.0 * tc.b + 12.0 * tc.c * x2) / W_over_th).shift_up(1) +
                   1.5 * (thE.truncated(th2om.order() - 1) * th2om.shift_down(1));
        // stripped al1 = 2 psi + C, psi = 2 pm x / (1 - x^2) = 4 pm x / th
        Jet th2al1 = (8.0 * pm * x).shift_up(1) + th2C.truncated(th2D.order());
        // stripped al0 = psi^2 + psi' + C psi + D
        //   th^2 psi^2 = 16 pm^2 x^2; th^2 psi' = 8 pm (1 + x^2)
        //   th^2 C psi = (th^2 C)/th * 4 pm x
        Jet th2al0 = 16.0 * pm * pm * x2.truncated(th2D.order()) +
                     8.0 * pm * (1.0 + x2).truncated(th2D.order()) +
                     (th2C.shift_down(1) * (4.0 * pm * x)).truncated(th2D.order()) + th2D;
        TensorRightJets out;
        out.t2_xal1 = (x.truncated(th2al1.order()) * th2al1);
        out.t2_al0 = th2al0;
        out.t2_beta = -(1.0 / A_over_th).shift_up(1);  // th^2 * (-1/A)
        return out;
    }

    // Local T-form of the even sector at xi = 1 (that = 1 - xi, u_that = -u_xi):
    //   T2 = 8 that^2 (2 - that), T1 = -that^2 al1_even, T0 = that^2 al0, TL = that^2 beta
    EndpointData even_endpoint(int order) const {
        Jet th = Jet::variable(0.0, order);
        EndpointData d;
        d.T2 = (8.0 * th * th * (2.0 - th)).truncated(order);
        d.T1 = (-4.0 * th * th - 4.0 * t2_xal1.truncated(order)).truncated(order);
        d.T0 = t2_al0.truncated(order);
        d.TL = t2_beta.truncated(order);
        return d;
    }

    EndpointData kink_endpoint(double theta, int order) const {
        Jet th = Jet::variable(0.0, order);
        Jet x2 = (1.0 - 0.5 * th).truncated(order);
        EndpointData d;
        d.T2 = (16.0 * x2 * x2 * th * th).truncated(order);
        d.T1 = -((8.0 * theta + 4.0) * x2 * th * th + 4.0 * x2 * t2_xal1.truncated(order)).truncated(order);
        d.T0 = (theta * (theta - 1.0) * th * th + theta * t2_xal1.truncated(order) +
                x2 * t2_al0.truncated(order)).truncated(order);
        d.TL = (x2 * t2_beta.truncated(order)).truncated(order);
        return d;
    }
};

inline TensorInterior tensor_stripped_interior(const MetricParams& params) {
    auto tc = TensorCoefficients::make(params);
    double pm = indicial_exponents_tensor(params).p_minus;
    TensorInterior ti;
    ti.p_minus = pm;
    auto psi = [pm](double x) { return 2.0 * pm * x / (1.0 - x * x); };
    ti.al1 = [tc, psi](double x) { return 2.0 * psi(x) + tc.C_val(x); };
    ti.al0 = [tc, psi, pm](double x) {
        double ps = psi(x);
        double psp = 2.0 * pm * (1.0 + x * x) / ((1.0 - x * x) * (1.0 - x * x));
        return ps * ps + psp + tc.C_val(x) * ps + tc.D_val(x);
    };
    ti.beta = [params](double x) { return -1.0 / metric_A(x, params); };
    return ti;
}

// Jets at x = 0 of x*al1(x), al0(x) and beta(x) (all even there), converted
// to series in eta = 1 + xi = 2x^2.
inline void tensor_origin_eta_jets(const MetricParams& params, int ord, Jet& xal1, Jet& al0, Jet& beta) {
    auto tc = TensorCoefficients::make(params);
    double nu2 = params.nu * params.nu;
    double pm = indicial_exponents_tensor(params).p_minus;
    int xord = 2 * ord + 2;
    Jet x = Jet::variable(0.0, xord);
    Jet x2 = x * x;
    Jet one_minus_x2 = 1.0 - x2;
    Jet xpsi = 2.0 * pm * x2 / one_minus_x2;
    Jet B = metric_B(x, nu2);
    Jet W = tc.W_poly(x);
    Jet E = 2.0 * x * (tc.b + 2.0 * tc.c * x2) / W;
    Jet F_over_x = (2.0 * (3.0 + nu2 + x2) *
                    ((-1.0 + 2.0 * nu2 - nu2 * nu2) / std::pow(3.0 + 6.0 * nu2 - nu2 * nu2, 2))) /
                   (B * W);
    Jet Bp = B.derivative().truncated(xord - 1);
    Jet bracket = 4.0 * Jet::constant(-2.0 * nu2 / (3.0 + 6.0 * nu2 - nu2 * nu2), xord - 1) / B.truncated(xord - 1) +
                  (E * E).truncated(xord - 1) - 2.0 * ((2.0 * tc.b + 12.0 * tc.c * x2) / W).truncated(xord - 1);
    Jet xomega = bracket / F_over_x.truncated(xord - 1);
    Jet BpB = Bp / B.truncated(xord - 1);
    Jet xC = (3.0 * x * E + x * BpB + xomega.truncated(xord - 2)).truncated(xord - 2);
    Jet xal1_x = 2.0 * xpsi.truncated(xC.order()) + xC;
    // al0 = psi^2 + psi' + C psi + D
    Jet psi2 = xpsi.shift_down(1) * xpsi.shift_down(1);
    Jet psip = 2.0 * pm * (1.0 + x2) / (one_minus_x2 * one_minus_x2);
    Jet Cpsi = xC * xpsi.shift_down(2);  // (xC)(psi/x), psi/x = xpsi/x^2
    Jet Eom = E.shift_down(1) * xomega;  // (E/x)(x omega)
    Jet D = 0.5 * (E * E).truncated(Eom.order()) + 1.5 * (E * BpB).truncated(Eom.order()) -
            (BpB * BpB).truncated(Eom.order()) +
            ((2.0 * tc.b + 12.0 * tc.c * x2) / W).truncated(Eom.order()) + 1.5 * Eom;
    Jet al0_x = psi2.truncated(D.order()) + psip.truncated(D.order()) + Cpsi.truncated(D.order()) + D;
    Jet beta_x = -1.0 / metric_A(x, nu2);

    auto to_eta = [ord](const Jet& even_series) {
        Jet out(ord);
        for (int k = 0; k <= ord; ++k) {
            if (2 * k > even_series.order()) break;
            out[k] = even_series[2 * k] / std::pow(2.0, k);
        }
        return out;
    };
    // parity check: odd coefficients vanish
    for (int j = 1; j <= xal1_x.order(); j += 2) {
        if (std::abs(xal1_x[j]) > 1e-8 || std::abs(al0_x[j]) > 1e-8)
            throw std::runtime_error("tensor_origin_eta_jets: parity violation in tensor fields");
    }
    xal1 = to_eta(xal1_x);
    al0 = to_eta(al0_x);
    beta = to_eta(beta_x);
}

}  // namespace detail

// Even-analytic sector: U(xi) with 8(1+xi) U'' + 4(1 + x al1) U' + al0 U = lt beta U.
inline StrippedProblem tensor_even_sector(const MetricParams& params, int order = 10) {
    auto ti = detail::tensor_stripped_interior(params);
    auto full = strip(build_tensor(params), order);
    auto rj = detail::TensorRightJets::make(params, 28);
    const double cut = 0.2;  // jet radius ~ 2 (next singularity at x = 0)

    StrippedProblem sp;
    sp.label = "tensor-even-sector";
    sp.p_left = 0.0;
    sp.p_right = full.p_right;
    auto xofxi = [](double xi) { return std::sqrt(0.5 * (1.0 + xi)); };
    sp.al2 = [](double xi) { return 8.0 * (1.0 + xi); };
    sp.al1 = [ti, xofxi, rj, cut](double xi) {
        double th = 1.0 - xi;
        if (th < cut) return 4.0 + 4.0 * rj.t2_xal1.eval(th) / (th * th);
        double x = xofxi(xi);
        return 4.0 * (1.0 + x * ti.al1(x));
    };
    sp.al0 = [ti, xofxi, rj, cut](double xi) {
        double th = 1.0 - xi;
        if (th < cut) return rj.t2_al0.eval(th) / (th * th);
        return ti.al0(xofxi(xi));
    };
    sp.beta = [ti, xofxi, rj, cut](double xi) {
        double th = 1.0 - xi;
        if (th < cut) return rj.t2_beta.eval(th) / (th * th);
        return ti.beta(xofxi(xi));
    };
    sp.reinstated_weight = [](double) -> double {
        throw std::runtime_error("weighted inner product undefined for tensor sectors");
    };
    sp.strip_factor = [](double) { return 1.0; };

    // right boundary: U'(1) = (1/4) u'(x=1) relation
    sp.robin_right = RobinBC{full.robin_right.c0 / 4.0, full.robin_right.c_lambda / 4.0, Endpoint::Right};

    // left boundary (eta = 1 + xi): regularity Robin from the series
    Jet xal1, al0j, betaj;
    detail::tensor_origin_eta_jets(params, order + 2, xal1, al0j, betaj);
    Jet eta = Jet::variable(0.0, order + 2);
    EndpointData d;
    d.T2 = (8.0 * eta * eta).truncated(order + 2);
    d.T1 = (4.0 * (1.0 + xal1)).shift_up(1).truncated(order + 2);
    d.T0 = al0j.shift_up(1).truncated(order + 2);
    d.TL = betaj.shift_up(1).truncated(order + 2);
    sp.robin_left = robin_from_series(d, Endpoint::Left);
    sp.endpoint_series = [d, rj](Endpoint e, double lambda, int nterms) {
        auto local = (e == Endpoint::Left) ? d : rj.even_endpoint(2 * nterms + 6);
        auto nf = detail::normal_form(local);
        return detail::frobenius_series(nf, lambda, nterms);
    };
    return sp;
}

// Kink sector: u = |x|^theta G(xi), theta = (9+nu^2)/(3+nu^2):
// 16 x^4 G'' + [(8 th + 4) x^2 + 4 x^3 al1] G' + [th(th-1) + th x al1 + x^2 al0] G = lt x^2 beta G.
inline StrippedProblem tensor_kink_sector(const MetricParams& params, int order = 10) {
    auto ti = detail::tensor_stripped_interior(params);
    auto full = strip(build_tensor(params), order);
    const double th = tensor_kink_exponent(params);

    auto rj = detail::TensorRightJets::make(params, 28);
    const double cut = 0.2;

    StrippedProblem sp;
    sp.label = "tensor-kink-sector";
    sp.p_left = 0.0;
    sp.p_right = full.p_right;
    auto xofxi = [](double xi) { return std::sqrt(0.5 * (1.0 + xi)); };
    sp.al2 = [](double xi) { return 4.0 * (1.0 + xi) * (1.0 + xi); };
    sp.al1 = [ti, xofxi, th, rj, cut](double xi) {
        double tt = 1.0 - xi;
        double x2e = 1.0 - 0.5 * tt;
        if (tt < cut) return (8.0 * th + 4.0) * x2e + 4.0 * x2e * rj.t2_xal1.eval(tt) / (tt * tt);
        double x = xofxi(xi);
        double x2 = x * x;
        return (8.0 * th + 4.0) * x2 + 4.0 * x2 * (x * ti.al1(x));
    };
    sp.al0 = [ti, xofxi, th, rj, cut](double xi) {
        double tt = 1.0 - xi;
        double x2e = 1.0 - 0.5 * tt;
        if (tt < cut)
            return th * (th - 1.0) + th * rj.t2_xal1.eval(tt) / (tt * tt) + x2e * rj.t2_al0.eval(tt) / (tt * tt);
        double x = xofxi(xi);
        return th * (th - 1.0) + th * x * ti.al1(x) + x * x * ti.al0(x);
    };
    sp.beta = [ti, xofxi, rj, cut](double xi) {
        double tt = 1.0 - xi;
        if (tt < cut) return (1.0 - 0.5 * tt) * rj.t2_beta.eval(tt) / (tt * tt);
        double x = xofxi(xi);
        return x * x * ti.beta(x);
    };
    sp.reinstated_weight = [](double) -> double {
        throw std::runtime_error("weighted inner product undefined for tensor sectors");
    };
    sp.strip_factor = [](double) { return 1.0; };

    sp.robin_right = RobinBC{(full.robin_right.c0 - th) / 4.0, full.robin_right.c_lambda / 4.0, Endpoint::Right};

    Jet xal1, al0j, betaj;
    detail::tensor_origin_eta_jets(params, order + 2, xal1, al0j, betaj);
    Jet eta = Jet::variable(0.0, order + 2);
    EndpointData d;
    d.T2 = (4.0 * eta * eta).truncated(order + 2);
    d.T1 = ((4.0 * th + 2.0) * eta + 2.0 * xal1.shift_up(1)).truncated(order + 2);
    Jet t0 = Jet::constant(th * (th - 1.0), order + 2) + th * xal1.truncated(order + 2) +
             0.5 * al0j.shift_up(1).truncated(order + 2);
    d.T0 = t0;
    d.TL = 0.5 * betaj.shift_up(1).truncated(order + 2);
    if (std::abs(d.T0[0]) > 1e-8)
        throw std::runtime_error("tensor_kink_sector: kink exponent inconsistent with origin data");
    sp.robin_left = robin_from_series(d, Endpoint::Left);
    sp.endpoint_series = [d, rj, th](Endpoint e, double lambda, int nterms) {
        auto local = (e == Endpoint::Left) ? d : rj.kink_endpoint(th, 2 * nterms + 6);
        auto nf = detail::normal_form(local);
        return detail::frobenius_series(nf, lambda, nterms);
    };
    return sp;
}

// Full-interval stripped problem (used by validation tests; remember the
// x = 0 pole: resolutions must be odd).
inline StrippedProblem tensor_stripped_full(const MetricParams& params, int order = 10) {
    auto sp = strip(build_tensor(params), order);
    sp.odd_resolution_required = true;
    return sp;
}

}  // namespace pagespec
