#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "pagespec/legendre.hpp"
#include "pagespec/mode_numbers.hpp"
#include "pagespec/quadrature.hpp"
#include "pagespec/schrodinger.hpp"
#include "pagespec/taylor_series.hpp"

namespace pagespec {

// lambda^(0) = mu/4 + l(l+1), l = n + N
inline double lambda_zero(const ModeNumbers& m) {
    long l = m.ell_legendre;
    return double(m.mu) / 4.0 + double(l * (l + 1));
}

// First-order shift. The published general display carries an overall sign
// flip relative to both its own N = 0 reduction and the defining integral
// int deltaV y^2 ds; the sign here is fixed by the quadrature oracle.
inline double lambda_one(const ModeNumbers& m, double nu) {
    double n = double(m.n), k = double(m.k), N = double(m.overtone);
    double den = (2.0 * n + 2.0 * N - 1.0) * (2.0 * n + 2.0 * N + 3.0);
    double br = 4.0 * std::pow(N, 4) + (16.0 * n + 8.0) * std::pow(N, 3) +
                (-6.0 * k * k - 6.0 * k * (n + 1.0) + 20.0 * n * n + 21.0 * n + 1.0) * N * N +
                (2.0 * n + 1.0) * (-6.0 * k * k - 6.0 * k * (n + 1.0) + 4.0 * n * n + 5.0 * n - 3.0) * N -
                (2.0 * n - 1.0) * (2.0 * k * k * (n + 2.0) + 2.0 * k * (n * n + 3.0 * n + 2.0) - n * (n + 1.0));
    return -nu * nu * br / den;
}

// Closed form for the lowest modes (N = 0).
inline double lambda_lowest(long n_, long k_, double nu) {
    double n = double(n_), k = double(k_);
    double zero = 1.5 * n + n * n + k * n + k + k * k;
    double corr = (2.0 * k * k * (n + 2.0) + 2.0 * k * (n * n + 3.0 * n + 2.0) - n * (n + 1.0)) / (2.0 * n + 3.0);
    return zero + corr * nu * nu;
}

// The four intermediate integrals int f(s) y_{l,n}^2 ds in closed form,
// f = csc^2, cos(2s) csc^2, cos(4s) csc^2, s cot(s) csc^2. Require n >= 1.
struct IntermediateIntegrals {
    double csc2, cos2_csc2, cos4_csc2, s_cot_csc2;
};

inline IntermediateIntegrals intermediate_integrals(long l_, long n_) {
    if (n_ < 1) throw std::invalid_argument("intermediate_integrals: require n >= 1");
    if (l_ < n_) throw std::invalid_argument("intermediate_integrals: require l >= n");
    double l = double(l_), n = double(n_);
    IntermediateIntegrals out;
    out.csc2 = (2.0 * l + 1.0) / (2.0 * n);
    out.cos2_csc2 = (2.0 * l + 1.0 - 4.0 * n) / (2.0 * n);
    out.cos4_csc2 = (32.0 * n * n * n - 32.0 * n * l * l - 32.0 * n * l + 16.0 * n + 8.0 * l * l * l +
                     12.0 * l * l - 2.0 * l - 3.0) /
                    (2.0 * n * (2.0 * l - 1.0) * (2.0 * l + 3.0));
    out.s_cot_csc2 = (2.0 * l + 1.0) * (4.0 * n * n - 4.0 * n * l - 2.0 * n - 1.0) /
                     (2.0 * n * (2.0 * n - 1.0) * (2.0 * n + 1.0));
    return out;
}

// Defining integral of the first-order shift, by quadrature (n >= 1; the
// s cot s term makes the n = 0 integrand non-integrable at s = pi, where the
// closed form is the analytic continuation).
inline double lambda_one_quadrature(const ModeNumbers& m, double nu, double abs_tol = 1e-12) {
    if (m.n < 1) throw std::invalid_argument("lambda_one_quadrature: require n >= 1");
    int l = static_cast<int>(m.ell_legendre), n = static_cast<int>(m.n);
    long mu = m.mu;
    return integrate_0_pi_trig(
        [&](double s, double sin_s, double cos_s) {
            double y = y_mode_trig(sin_s, cos_s, l, n);
            return delta_v_trig(s, sin_s, cos_s, n, mu, nu) * y * y;
        },
        abs_tol);
}

// quadrature companions of the four closed forms
inline IntermediateIntegrals intermediate_integrals_quadrature(long l_, long n_, double abs_tol = 1e-12) {
    if (n_ < 1) throw std::invalid_argument("intermediate_integrals_quadrature: require n >= 1");
    int l = static_cast<int>(l_), n = static_cast<int>(n_);
    auto yq = [l, n](double sin_s, double cos_s) {
        double y = y_mode_trig(sin_s, cos_s, l, n);
        return y * y;
    };
    IntermediateIntegrals out;
    out.csc2 = integrate_0_pi_trig(
        [&](double, double sin_s, double cos_s) { return yq(sin_s, cos_s) / (sin_s * sin_s); }, abs_tol);
    out.cos2_csc2 = integrate_0_pi_trig(
        [&](double, double sin_s, double cos_s) {
            return (2.0 * cos_s * cos_s - 1.0) * yq(sin_s, cos_s) / (sin_s * sin_s);
        },
        abs_tol);
    out.cos4_csc2 = integrate_0_pi_trig(
        [&](double, double sin_s, double cos_s) {
            double c2 = 2.0 * cos_s * cos_s - 1.0;
            return (2.0 * c2 * c2 - 1.0) * yq(sin_s, cos_s) / (sin_s * sin_s);
        },
        abs_tol);
    out.s_cot_csc2 = integrate_0_pi_trig(
        [&](double s, double sin_s, double cos_s) {
            return s * cos_s / (sin_s * sin_s * sin_s) * yq(sin_s, cos_s);
        },
        abs_tol);
    return out;
}

// ---- high-order nu-series of the (0,0) ground mode -----------------------

struct GroundModeSeries {
    std::vector<double> coefficients;  // c_m of tau^m, tau = nu^2
    double value = 0.0;                // partial sum at the requested nu
};

namespace detail_pert {

using Cx = std::complex<double>;

struct PerturbationSample {
    Eigen::MatrixXcd dH;  // matrix elements of kappa V - V0 in the Legendre basis
    Cx kappa;
};

// g(u) = sqrt(w/p) dx/du with x = -cos u; the sin u factors cancel exactly:
// g = sqrt(S (1 - tau x^2) / (3 - tau - tau(1+tau) x^2)).
inline Cx g_of_u(double u, Cx tau) {
    Cx S = 3.0 * (1.0 + tau);
    double x = -std::cos(u);
    Cx x2{x * x, 0.0};
    return std::sqrt(S * (1.0 - tau * x2) / (3.0 - tau - tau * (1.0 + tau) * x2));
}

// wall-local jet of Delta(u) = kappa V(x(u)) - V0(sigma(u)), analytic and even
// about u = 0; used for |u| below the cut where direct evaluation cancels
// catastrophically against the csc^2 wall
inline CJet wall_delta_jet(Cx tau, Cx kappa, Cx sigma_scale, int ord) {
    // V(e) = Tv(e)/e in e = 1 + x
    CJet e = CJet::variable(Cx(0.0), ord + 4);
    CJet x = e - Cx(1.0);
    CJet x2 = x * x;
    Cx den = 3.0 + 6.0 * tau - tau * tau;
    CJet B = (Cx(1.0) - tau * x2) / den;
    CJet Ahat = (2.0 - e) * (3.0 - tau - tau * (1.0 + tau) * x2) / (Cx(1.0) - tau * x2);  // A/e
    Cx S = 3.0 * (1.0 + tau);
    CJet phat = Ahat * sqrt(B);
    CJet w = S * sqrt(B);
    CJet G = pow(phat * w, 0.25);
    CJet rpw = sqrt(phat / w);
    CJet G1 = rpw * (G * Cx(0.25) + (e * G.derivative().truncated(ord + 3)).truncated(ord + 3));
    CJet Tv = (rpw.truncated(ord + 2) * (-Cx(0.25) * G1.truncated(ord + 2) +
                                         (e.truncated(ord + 2) * G1.derivative().truncated(ord + 2))))
                  .truncated(ord + 2) /
              G.truncated(ord + 2);

    // e(u) = 1 - cos u; sigma(u) = sigma_scale * integral of g-jet
    CJet u = CJet::variable(Cx(0.0), ord + 2);
    CJet e_of_u = Cx(1.0) - cos(u);
    CJet xj = -cos(u);
    CJet gj = sqrt(S * (Cx(1.0) - tau * xj * xj) / (3.0 - tau - tau * (1.0 + tau) * xj * xj));
    CJet sj(ord + 2);
    for (int k = 1; k <= sj.order(); ++k) sj[k] = gj[k - 1] / double(k);
    CJet sigma = sigma_scale * sj;

    CJet u2V = compose(Tv.truncated(ord + 2), e_of_u) / e_of_u.shift_down(2, 1e-9);
    CJet ssig = sin(sigma);
    // u^2 V0 = -u^2/4 - (1/4) u^2 csc^2(sigma)
    CJet u2_inv_sin2 = Cx(1.0) / (ssig * ssig).shift_down(2, 1e-9);
    CJet u2 = u * u;
    CJet u2V0 = (-0.25 * u2).truncated(ord) - 0.25 * u2_inv_sin2.truncated(ord);
    CJet num = kappa * u2V.truncated(ord) - u2V0;
    double scale = 0.0;
    for (int k = 0; k <= num.order(); ++k) scale = std::max(scale, std::abs(num[k]));
    if (std::abs(num[0]) > 1e-8 * scale || std::abs(num[1]) > 1e-8 * scale)
        throw std::runtime_error("wall_delta_jet: wall cancellation failed (transform inconsistent)");
    num[0] = Cx(0.0);
    num[1] = Cx(0.0);
    return num.shift_down(2, 1e30);
}

inline PerturbationSample perturbation_sample(Cx tau, int basis, int quad_n, int k_cheb) {
    // spectral antiderivative of g for sigma(u)
    auto gs = cheb_interpolate<Cx>([tau](double u) { return g_of_u(u, tau); }, 0.0, M_PI, k_cheb);
    auto F = cheb_antiderivative(gs);
    Cx smax = F.eval(M_PI);
    Cx kappa = (smax / M_PI) * (smax / M_PI);
    Cx sigma_scale = M_PI / smax;

    CJet dwall = wall_delta_jet(tau, kappa, sigma_scale, 20);
    const double ucut = 0.15;

    std::vector<double> un, wn;
    gauss_legendre(quad_n, un, wn);

    PerturbationSample out;
    out.kappa = kappa;
    out.dH = Eigen::MatrixXcd::Zero(basis, basis);
    std::vector<Cx> y(static_cast<size_t>(basis));
    for (int iq = 0; iq < quad_n; ++iq) {
        double u = 0.5 * M_PI * (un[static_cast<size_t>(iq)] + 1.0);
        double wq = 0.5 * M_PI * wn[static_cast<size_t>(iq)];
        Cx sig = sigma_scale * F.eval(u);
        Cx dsig = sigma_scale * g_of_u(u, tau);
        double umir = std::min(u, M_PI - u);
        Cx delta;
        if (umir < ucut) {
            delta = dwall.eval(Cx(umir));
        } else {
            double x = -std::cos(u);
            // V by local Taylor of p = A sqrt(B), w = S sqrt(B) at x (complex tau)
            CJet xj = CJet::variable(Cx(x), 4);
            CJet x2 = xj * xj;
            Cx den = 3.0 + 6.0 * tau - tau * tau;
            CJet B = (Cx(1.0) - tau * x2) / den;
            CJet A = (3.0 - tau - tau * (1.0 + tau) * x2) * (Cx(1.0) - x2) / (Cx(1.0) - tau * x2);
            CJet p = A * sqrt(B);
            CJet w = (3.0 * (1.0 + tau)) * sqrt(B);
            Cx V = schrodinger_potential_local(p, w, Cx(0.0));
            Cx sn = std::sin(sig);
            Cx V0 = -0.25 - 0.25 / (sn * sn);
            delta = kappa * V - V0;
        }
        auto P = legendre_table<Cx>(basis - 1, std::cos(sig));
        Cx rs = std::sqrt(std::sin(sig));
        for (int l = 0; l < basis; ++l)
            y[static_cast<size_t>(l)] = std::sqrt((2.0 * l + 1.0) / 2.0) * rs * P[static_cast<size_t>(l)];
        Cx base = delta * dsig * wq;
        for (int i = 0; i < basis; ++i) {
            Cx yi = y[static_cast<size_t>(i)] * base;
            for (int j = i; j < basis; ++j) {
                Cx v = yi * y[static_cast<size_t>(j)];
                out.dH(i, j) += v;
                if (j > i) out.dH(j, i) += v;
            }
        }
    }
    return out;
}

}  // namespace detail_pert

// Rayleigh-Schrodinger coefficients of the (n,k) = (0,0) first excited mode
// lambda_{1,0,0}(nu) as a series in tau = nu^2, computed in a truncated basis
// of unperturbed Legendre modes. The tau-Taylor data of the matrix elements is
// extracted by sampling on a complex circle |tau| = rho (one-sided real
// differencing cannot reach the required accuracy at order nu^10 in doubles).
inline GroundModeSeries ground_mode_series(double nu, int order, int basis = 60, int circle_m = 16,
                                           double rho = 0.15) {
    if (order < 2 || order > 10 || order % 2 != 0)
        throw std::invalid_argument("ground_mode_series: order must be even, 2..10");
    const int mm = order / 2;
    using Cx = detail_pert::Cx;

    std::vector<detail_pert::PerturbationSample> samples;
    samples.reserve(static_cast<size_t>(circle_m));
    for (int j = 0; j < circle_m; ++j) {
        Cx tau = rho * std::exp(Cx(0.0, 2.0 * M_PI * j / circle_m));
        samples.push_back(detail_pert::perturbation_sample(tau, basis, 500, 256));
    }
    // DFT -> Taylor coefficients of dH and kappa
    std::vector<Eigen::MatrixXd> Hm(static_cast<size_t>(mm) + 1);
    std::vector<double> kap(static_cast<size_t>(mm) + 1, 0.0);
    for (int m = 0; m <= mm; ++m) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(basis, basis);
        Cx kacc = 0.0;
        for (int j = 0; j < circle_m; ++j) {
            Cx ph = std::exp(Cx(0.0, -2.0 * M_PI * j * m / circle_m)) / double(circle_m);
            acc += ph * samples[static_cast<size_t>(j)].dH;
            kacc += ph * samples[static_cast<size_t>(j)].kappa;
        }
        acc /= std::pow(rho, m);
        kacc /= std::pow(rho, m);
        Hm[static_cast<size_t>(m)] = acc.real();
        kap[static_cast<size_t>(m)] = kacc.real();
        if (acc.imag().cwiseAbs().maxCoeff() > 1e-7)
            throw std::runtime_error("ground_mode_series: complex leakage in Taylor extraction");
    }
    if (Hm[0].cwiseAbs().maxCoeff() > 1e-9)
        throw std::runtime_error("ground_mode_series: perturbation does not vanish at nu = 0");
    if (std::abs(kap[0] - 1.0) > 1e-10)
        throw std::runtime_error("ground_mode_series: domain scale does not reduce at nu = 0");

    // Rayleigh-Schrodinger recursion for the target l = 1 (E0 = 2)
    const int i0 = 1;
    Eigen::VectorXd E0(basis);
    for (int l = 0; l < basis; ++l) E0(l) = double(l) * (l + 1.0);
    for (int l = 1; l < basis; ++l)
        if (std::abs(E0(l) - E0(i0)) < 1e-9 && l != i0)
            throw std::runtime_error("ground_mode_series: vanishing unperturbed gap");
    std::vector<Eigen::VectorXd> psi;
    psi.push_back(Eigen::VectorXd::Zero(basis));
    psi[0](i0) = 1.0;
    std::vector<double> lam(static_cast<size_t>(mm) + 1, 0.0);
    lam[0] = E0(i0);
    for (int m = 1; m <= mm; ++m) {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis);
        for (int j = 1; j <= m; ++j) {
            rhs -= Hm[static_cast<size_t>(j)] * psi[static_cast<size_t>(m - j)];
            if (j < m) rhs += lam[static_cast<size_t>(j)] * psi[static_cast<size_t>(m - j)];
        }
        lam[static_cast<size_t>(m)] = -rhs(i0);  // E_m = e0^T sum_j H_j psi_{m-j}
        // solve components
        Eigen::VectorXd pm = Eigen::VectorXd::Zero(basis);
        for (int l = 0; l < basis; ++l) {
            if (l == i0) continue;
            pm(l) = rhs(l) / (E0(l) - E0(i0));
        }
        psi.push_back(pm);
    }
    // Lambda-hat series -> lambda series: divide by kappa series
    std::vector<double> c(static_cast<size_t>(mm) + 1, 0.0);
    for (int m = 0; m <= mm; ++m) {
        double s = lam[static_cast<size_t>(m)];
        for (int j = 1; j <= m; ++j) s -= kap[static_cast<size_t>(j)] * c[static_cast<size_t>(m - j)];
        c[static_cast<size_t>(m)] = s / kap[0];
    }
    GroundModeSeries out;
    out.coefficients = c;
    double tau = nu * nu;
    double acc = 0.0;
    for (int m = mm; m >= 0; --m) acc = acc * tau + c[static_cast<size_t>(m)];
    out.value = acc;
    return out;
}

// ---- large-overtone asymptotics -------------------------------------------

struct AsymptoticFit {
    double a_coeff = 0.0;
    double constant = 0.0;
    double residual = 0.0;  // rms about the fit
    int window_lo = 0, window_hi = 0;
};

// Least squares of lambda_N against a N(N + 2n + 1) + const over the window.
inline AsymptoticFit asymptotic_fit(const std::vector<double>& lambdas, long n_fiber, int window_lo,
                                    int window_hi) {
    if (window_hi <= window_lo || window_hi >= static_cast<int>(lambdas.size()))
        throw std::invalid_argument("asymptotic_fit: insufficient converged overtones for the window");
    double sz = 0.0, sl = 0.0, szz = 0.0, szl = 0.0;
    int cnt = 0;
    for (int N = window_lo; N <= window_hi; ++N) {
        double z = double(N) * (double(N) + 2.0 * double(n_fiber) + 1.0);
        double l = lambdas[static_cast<size_t>(N)];
        sz += z; sl += l; szz += z * z; szl += z * l;
        ++cnt;
    }
    double det = cnt * szz - sz * sz;
    AsymptoticFit out;
    out.a_coeff = (cnt * szl - sz * sl) / det;
    out.constant = (szz * sl - sz * szl) / det;
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    double rss = 0.0;
    for (int N = window_lo; N <= window_hi; ++N) {
        double z = double(N) * (double(N) + 2.0 * double(n_fiber) + 1.0);
        double r = lambdas[static_cast<size_t>(N)] - out.a_coeff * z - out.constant;
        rss += r * r;
    }
    out.residual = std::sqrt(rss / cnt);
    return out;
}

}  // namespace pagespec
