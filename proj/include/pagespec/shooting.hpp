#pragma once

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pagespec/singular_bc.hpp"

namespace pagespec {

struct ShootingResult {
    double eigenvalue = 0.0;
    double match_residual = 0.0;
    int iterations = 0;
    std::pair<double, double> bracket{0.0, 0.0};
};

namespace detail {

struct ShootState {
    std::array<double, 2> y{0.0, 0.0};  // u, u'
};

// integrate from x0 to x1 with dopri5; renormalize when |u| grows large
// (only the direction of (u, u') matters for the Wronskian zero)
inline std::array<double, 2> integrate_side(const StrippedProblem& sp, double lambda,
                                            double x0, double x1, std::array<double, 2> y0) {
    namespace odeint = boost::numeric::odeint;
    auto rhs = [&sp, lambda](const std::array<double, 2>& y, std::array<double, 2>& dydx, double x) {
        double a2 = sp.al2(x);
        dydx[0] = y[1];
        dydx[1] = -(sp.al1(x) * y[1] + (sp.al0(x) - lambda * sp.beta(x)) * y[0]) / a2;
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<std::array<double, 2>>>(1e-14, 1e-13);
    double x = x0;
    double h = (x1 > x0 ? 1.0 : -1.0) * 1e-4;
    std::array<double, 2> y = y0;
    int guard = 0;
    while ((x1 > x0) ? (x < x1) : (x > x1)) {
        if ((x1 > x0) ? (x + h > x1) : (x + h < x1)) h = x1 - x;
        auto res = stepper.try_step(rhs, y, x, h);
        if (res == odeint::fail) {
            if (std::abs(h) < 1e-15) throw std::runtime_error("shooting: integrator step collapse");
        }
        double mag = std::max(std::abs(y[0]), std::abs(y[1]));
        if (mag > 1e6) { y[0] /= mag; y[1] /= mag; }
        if (++guard > 2000000) throw std::runtime_error("shooting: too many steps");
    }
    return y;
}

inline std::array<double, 2> series_seed(const StrippedProblem& sp, Endpoint e, double lambda, double eps) {
    auto c = sp.endpoint_series(e, lambda, 3);
    double u = 0.0, ut = 0.0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) u = u * eps + c[static_cast<size_t>(j)];
    for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) ut = ut * eps + double(j) * c[static_cast<size_t>(j)];
    // u' in x: right endpoint t = 1-x so du/dx = -du/dt; left t = 1+x
    double ux = (e == Endpoint::Right) ? -ut : ut;
    return {u, ux};
}

}  // namespace detail

// Scaled Wronskian u_L u_R' - u_R u_L' of the two one-sided solutions at the
// matching point; vanishes exactly at eigenvalues.
inline double shoot_residual(const StrippedProblem& sp, double lambda_trial, double x_match = 0.0,
                             double eps = 1e-6) {
    auto yl = detail::integrate_side(sp, lambda_trial, -1.0 + eps, x_match,
                                     detail::series_seed(sp, Endpoint::Left, lambda_trial, eps));
    auto yr = detail::integrate_side(sp, lambda_trial, 1.0 - eps, x_match,
                                     detail::series_seed(sp, Endpoint::Right, lambda_trial, eps));
    double nl = std::hypot(yl[0], yl[1]);
    double nr = std::hypot(yr[0], yr[1]);
    return (yl[0] * yr[1] - yr[0] * yl[1]) / (nl * nr);
}

// Bracketed root refinement of the shooting residual (TOMS 748).
inline ShootingResult refine(const StrippedProblem& sp, std::pair<double, double> bracket,
                             double tol = 1e-10, double x_match = 0.0) {
    double fa = shoot_residual(sp, bracket.first, x_match);
    double fb = shoot_residual(sp, bracket.second, x_match);
    if (fa * fb > 0.0) throw std::runtime_error("refine: no sign change on the bracket");
    boost::uintmax_t max_iter = 100;
    auto r = boost::math::tools::toms748_solve(
        [&](double lam) { return shoot_residual(sp, lam, x_match); }, bracket.first, bracket.second,
        fa, fb, [tol](double a, double b) { return std::abs(b - a) <= tol; }, max_iter);
    ShootingResult out;
    out.eigenvalue = 0.5 * (r.first + r.second);
    out.match_residual = shoot_residual(sp, out.eigenvalue, x_match);
    out.iterations = static_cast<int>(max_iter);
    out.bracket = bracket;
    return out;
}

}  // namespace pagespec
