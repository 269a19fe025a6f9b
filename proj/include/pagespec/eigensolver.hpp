#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pagespec/chebyshev.hpp"
#include "pagespec/singular_bc.hpp"

#include <lapacke.h>

namespace pagespec {

struct DiscretizedProblem {
    CollocationGrid grid;
    Eigen::MatrixXd H;
    Eigen::MatrixXd W;
    std::string label;
};

struct RawEigenpair {
    std::complex<double> value;
    Eigen::VectorXd vector;  // valid for (numerically) real eigenvalues
    bool infinite = false;
};

struct EigenPair {
    double eigenvalue = 0.0;
    std::vector<double> u_values;
    int resolution = 0;
    bool converged = false;
    double convergence_residual = std::numeric_limits<double>::quiet_NaN();
    double imag_discard = 0.0;
    bool normalization_fallback = false;
};

struct Spectrum {
    std::vector<EigenPair> pairs;          // ascending eigenvalue; index = overtone N
    std::vector<int> resolutions_used;
};

// Collocate the stripped problem and replace the boundary rows with the Robin
// conditions: lambda-free parts go to H, lambda-linear parts to W.
inline DiscretizedProblem assemble(const StrippedProblem& sp, int n_res) {
    if (sp.odd_resolution_required && n_res % 2 == 0)
        throw std::invalid_argument("assemble: " + sp.label + " requires odd resolution (interior pole at x = 0)");
    auto grid = gauss_lobatto(n_res);
    Eigen::MatrixXd d1 = diff_matrix(grid);
    const int n = n_res;

    DiscretizedProblem dp;
    dp.grid = grid;
    dp.label = sp.label;
    dp.H = Eigen::MatrixXd::Zero(n + 1, n + 1);
    dp.W = Eigen::MatrixXd::Zero(n + 1, n + 1);

    Eigen::MatrixXd d2 = d1 * d1;
    for (int i = 1; i < n; ++i) {
        double x = grid.points[static_cast<size_t>(i)];
        double a2 = sp.al2(x), a1 = sp.al1(x), a0 = sp.al0(x), b = sp.beta(x);
        double rs = (b < 0.0) ? -1.0 : 1.0;  // keep interior weight entries positive
        dp.H.row(i) = rs * (a2 * d2.row(i) + a1 * d1.row(i));
        dp.H(i, i) += rs * a0;
        dp.W(i, i) = rs * b;
    }
    // row 0: condition at x = +1,  u' = +(c0 + lambda c_lambda) u
    dp.H.row(0) = d1.row(0);
    dp.H(0, 0) -= sp.robin_right.c0;
    dp.W(0, 0) = sp.robin_right.c_lambda;
    // row n: condition at x = -1,  u' = -(c0 + lambda c_lambda) u
    dp.H.row(n) = d1.row(n);
    dp.H(n, n) += sp.robin_left.c0;
    dp.W(n, n) = -sp.robin_left.c_lambda;
    return dp;
}

// Dense generalized eigenproblem H u = lambda W u via LAPACK dggevx (QZ with
// balancing; the collocation matrices are badly row-scaled near the singular
// endpoints). beta ~ 0 pairs are flagged infinite rather than discarded here.
inline std::vector<RawEigenpair> solve_generalized(const DiscretizedProblem& dp, bool want_vectors = true) {
    const int n = static_cast<int>(dp.H.rows());
    Eigen::MatrixXd a = dp.H, b = dp.W;
    std::vector<double> ar(static_cast<size_t>(n)), ai(static_cast<size_t>(n)), be(static_cast<size_t>(n));
    std::vector<double> lscale(static_cast<size_t>(n)), rscale(static_cast<size_t>(n));
    double abnrm = 0.0, bbnrm = 0.0;
    lapack_int ilo = 0, ihi = 0;
    Eigen::MatrixXd vr;
    lapack_int info;
    if (want_vectors) {
        vr.resize(n, n);
        info = LAPACKE_dggevx(LAPACK_COL_MAJOR, 'B', 'N', 'V', 'N', n, a.data(), n, b.data(), n,
                              ar.data(), ai.data(), be.data(), nullptr, 1, vr.data(), n,
                              &ilo, &ihi, lscale.data(), rscale.data(), &abnrm, &bbnrm, nullptr, nullptr);
    } else {
        info = LAPACKE_dggevx(LAPACK_COL_MAJOR, 'B', 'N', 'N', 'N', n, a.data(), n, b.data(), n,
                              ar.data(), ai.data(), be.data(), nullptr, 1, nullptr, 1,
                              &ilo, &ihi, lscale.data(), rscale.data(), &abnrm, &bbnrm, nullptr, nullptr);
    }
    if (info != 0) throw std::runtime_error("solve_generalized: dggevx failed, info = " + std::to_string(info));

    std::vector<RawEigenpair> out(static_cast<size_t>(n));
    const double tiny = 100.0 * std::numeric_limits<double>::min();
    for (int j = 0; j < n; ++j) {
        auto& rp = out[static_cast<size_t>(j)];
        double scale = std::max(std::abs(ar[static_cast<size_t>(j)]), std::abs(ai[static_cast<size_t>(j)]));
        if (std::abs(be[static_cast<size_t>(j)]) <= tiny * (1.0 + scale) ||
            std::abs(be[static_cast<size_t>(j)]) < 1e-14 * scale) {
            rp.infinite = true;
            rp.value = std::numeric_limits<double>::infinity();
            continue;
        }
        rp.value = std::complex<double>(ar[static_cast<size_t>(j)], ai[static_cast<size_t>(j)]) / be[static_cast<size_t>(j)];
        if (want_vectors && ai[static_cast<size_t>(j)] == 0.0) rp.vector = vr.col(j);
    }
    return out;
}

// Rescale so u(x=1) = 1 (grid point 0); falls back to max-abs normalization
// when the right endpoint value is negligible.
inline EigenPair normalize_and_report(EigenPair pair) {
    double maxabs = 0.0;
    for (double v : pair.u_values) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs == 0.0) return pair;
    double u1 = pair.u_values.empty() ? 0.0 : pair.u_values.front();
    if (std::abs(u1) < 1e-10 * maxabs) {
        pair.normalization_fallback = true;
        for (auto& v : pair.u_values) v /= maxabs;
    } else {
        for (auto& v : pair.u_values) v /= u1;
    }
    return pair;
}

// Keep numerically real, resolution-bounded eigenvalues; sort ascending.
inline Spectrum filter_spectrum(const std::vector<RawEigenpair>& raw, int resolution,
                                double realness_tol = 1e-10, double magnitude_cap = -1.0) {
    if (magnitude_cap < 0.0) magnitude_cap = double(resolution) * double(resolution);
    Spectrum spec;
    spec.resolutions_used = {resolution};
    for (const auto& rp : raw) {
        if (rp.infinite) continue;
        if (std::abs(rp.value.imag()) > realness_tol * (1.0 + std::abs(rp.value.real()))) continue;
        if (std::abs(rp.value.real()) > magnitude_cap) continue;
        EigenPair ep;
        ep.eigenvalue = rp.value.real();
        ep.imag_discard = std::abs(rp.value.imag());
        ep.resolution = resolution;
        if (rp.vector.size() > 0) {
            ep.u_values.assign(rp.vector.data(), rp.vector.data() + rp.vector.size());
            ep = normalize_and_report(std::move(ep));
        }
        spec.pairs.push_back(std::move(ep));
    }
    std::sort(spec.pairs.begin(), spec.pairs.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.eigenvalue < b.eigenvalue; });
    return spec;
}

// Convergence filter across resolutions: nearest-value pairing within a
// window 0.1(1+|lambda|); a mode is retained when every successive pair of
// resolutions agrees to tol(1+|lambda|). The returned eigenfunction is the
// highest-resolution one.
inline Spectrum converge(const StrippedProblem& sp, std::vector<int> resolutions, double tol = 1e-10,
                         double realness_tol = 1e-10, double magnitude_cap = -1.0) {
    if (resolutions.size() < 2) throw std::invalid_argument("converge: need at least two resolutions");
    std::sort(resolutions.begin(), resolutions.end());
    if (sp.odd_resolution_required)
        for (auto& r : resolutions)
            if (r % 2 == 0) ++r;

    std::vector<Spectrum> specs;
    for (size_t i = 0; i < resolutions.size(); ++i) {
        bool last = (i + 1 == resolutions.size());
        auto dp = assemble(sp, resolutions[i]);
        specs.push_back(filter_spectrum(solve_generalized(dp, last), resolutions[i], realness_tol, magnitude_cap));
    }

    Spectrum out;
    out.resolutions_used = resolutions;
    const auto& base = specs.front();
    for (const auto& ep0 : base.pairs) {
        double lam = ep0.eigenvalue;
        double residual = 0.0;
        const EigenPair* match = nullptr;
        bool ok = true;
        for (size_t i = 1; i < specs.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            const EigenPair* cand = nullptr;
            for (const auto& ep : specs[i].pairs) {
                double d = std::abs(ep.eigenvalue - lam);
                if (d < best) { best = d; cand = &ep; }
            }
            if (!cand || best > 0.1 * (1.0 + std::abs(lam))) { ok = false; break; }
            residual = std::abs(cand->eigenvalue - lam);
            if (residual > tol * (1.0 + std::abs(lam))) { ok = false; break; }
            lam = cand->eigenvalue;
            match = cand;
        }
        if (!ok || !match) continue;
        EigenPair kept = *match;
        kept.converged = true;
        kept.convergence_residual = residual;
        out.pairs.push_back(std::move(kept));
    }
    if (out.pairs.empty())
        throw std::runtime_error("converge: no eigenvalue converged for " + sp.label +
                                 " (check boundary-row assembly)");
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.eigenvalue < b.eigenvalue; });
    // deduplicate near-identical values (paired sectors, defensive)
    std::vector<EigenPair> dedup;
    for (auto& ep : out.pairs) {
        if (!dedup.empty() && std::abs(ep.eigenvalue - dedup.back().eigenvalue) <= 1e-9 * (1.0 + std::abs(ep.eigenvalue)))
            continue;
        dedup.push_back(std::move(ep));
    }
    out.pairs = std::move(dedup);
    return out;
}

// Clenshaw-Curtis approximation of int u v w_phys dx with the stripping
// factors reinstated, so orthogonality is that of the physical eigenfunctions.
inline double weighted_inner_product(const std::vector<double>& u, const std::vector<double>& v,
                                     const StrippedProblem& sp, const CollocationGrid& grid) {
    if (u.size() != grid.points.size() || v.size() != grid.points.size())
        throw std::invalid_argument("weighted_inner_product: size mismatch");
    auto wq = clenshaw_curtis_weights(grid.resolution);
    double acc = 0.0;
    for (size_t i = 1; i + 1 < u.size(); ++i) {  // endpoint weight factors vanish there
        double x = grid.points[i];
        acc += wq[i] * u[i] * v[i] * sp.reinstated_weight(x);
    }
    return acc;
}

// Merge sector spectra into a single ascending spectrum.
inline Spectrum merge_spectra(const Spectrum& a, const Spectrum& b) {
    Spectrum out;
    out.resolutions_used = a.resolutions_used;
    for (int r : b.resolutions_used) out.resolutions_used.push_back(r);
    out.pairs = a.pairs;
    out.pairs.insert(out.pairs.end(), b.pairs.begin(), b.pairs.end());
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const EigenPair& x, const EigenPair& y) { return x.eigenvalue < y.eigenvalue; });
    return out;
}

}  // namespace pagespec
