#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pagespec/eigensolver.hpp"
#include "pagespec/scalar_operator.hpp"
#include "pagespec/shooting.hpp"
#include "pagespec/tensor_operator.hpp"

namespace pagespec {

struct SolveOptions {
    std::vector<int> resolutions;  // ascending; two or more entries
    double convergence_tol = 1e-10;
    double realness_tol = 1e-10;
    double magnitude_cap = -1.0;

    static SolveOptions from_base(int n_res) {
        SolveOptions o;
        o.resolutions = {n_res, n_res + 25, n_res + 50};
        return o;
    }
};

inline Spectrum scalar_spectrum(const ModeNumbers& modes, const MetricParams& params,
                                const SolveOptions& opt) {
    auto sp = strip(build_scalar(modes, params).as_operator());
    return converge(sp, opt.resolutions, opt.convergence_tol, opt.realness_tol, opt.magnitude_cap);
}

inline Spectrum nu_zero_spectrum(const ModeNumbers& modes, const SolveOptions& opt) {
    auto sp = strip(build_nu_zero_reference(modes).as_operator());
    return converge(sp, opt.resolutions, opt.convergence_tol, opt.realness_tol, opt.magnitude_cap);
}

// Tensor eigenvalues (in the rescaled lt units of the master equation).
//
// The collocated tensor problem carries an ill-conditioned eigenvalue
// perturbation from the nearly admissible (1-xi)^{-(p+ - p-)} endpoint branch,
// which plain double-precision QZ cannot push below ~1e-7 relative. The
// spectral solve therefore locates and identifies the modes (and supplies the
// eigenfunctions), after which each eigenvalue is polished to machine accuracy
// by the two-sided shooting residual on the same sector problem.
inline Spectrum tensor_spectrum_tilde(const MetricParams& params, const SolveOptions& opt,
                                      bool polish = true) {
    auto even = tensor_even_sector(params);
    auto kink = tensor_kink_sector(params);
    double loc_tol = std::max(opt.convergence_tol, 1e-6);
    auto polish_spec = [&](const StrippedProblem& sp, Spectrum spec) {
        if (!polish) return spec;
        for (auto& ep : spec.pairs) {
            double lam = ep.eigenvalue;
            double width = std::max(4.0 * ep.convergence_residual, 3e-6 * (1.0 + std::abs(lam)));
            bool ok = false;
            for (int attempt = 0; attempt < 3 && !ok; ++attempt, width *= 10.0) {
                try {
                    auto r = refine(sp, {lam - width, lam + width}, 1e-13 * (1.0 + std::abs(lam)));
                    ep.convergence_residual = std::abs(r.eigenvalue - ep.eigenvalue);
                    ep.eigenvalue = r.eigenvalue;
                    ok = true;
                } catch (const std::runtime_error&) {
                }
            }
            ep.converged = ok;
        }
        return spec;
    };
    auto even_spec = polish_spec(even, converge(even, opt.resolutions, loc_tol, opt.realness_tol, opt.magnitude_cap));
    auto kink_spec = polish_spec(kink, converge(kink, opt.resolutions, loc_tol, opt.realness_tol, opt.magnitude_cap));
    return merge_spectra(even_spec, kink_spec);
}

}  // namespace pagespec
