#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pagespec/perturbation.hpp"
#include "pagespec/spectra.hpp"

namespace pagespec::cli {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunConfig {
    std::string problem = "scalar";
    long n = 0, k = 0;
    int overtones = 5;
    std::vector<int> resolutions;
    double tol_convergence = 1e-10;
    double tol_realness = 1e-10;
    double tol_shooting = 1e-10;
    std::string format = "csv";
    std::string out_path;
    double lambda_cc = 1.0;
    bool eigenfunctions = false;
};

namespace detail {

inline void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

inline SolveOptions options_from(const RunConfig& cfg) {
    SolveOptions opt;
    opt.resolutions = cfg.resolutions;
    if (opt.resolutions.empty()) opt.resolutions = {250};
    if (opt.resolutions.size() == 1) {
        int base = opt.resolutions[0];
        opt.resolutions = {base, base + 25, base + 50};
    }
    opt.convergence_tol = cfg.tol_convergence;
    opt.realness_tol = cfg.tol_realness;
    return opt;
}

struct ComputedRow {
    long n, k, N;
    int resolution;
    double eigenvalue;  // lambda for scalar problems, lt for tensor
    double residual;
    double lambda_physical;  // tensor only
    const std::vector<double>* u = nullptr;
};

}  // namespace detail

inline int cmd_compute(const RunConfig& cfg) {
    auto params = MetricParams::page(cfg.lambda_cc);
    auto opt = detail::options_from(cfg);
    Spectrum spec;
    bool tensor = (cfg.problem == "tensor");
    if (cfg.problem == "scalar") {
        spec = scalar_spectrum(ModeNumbers::make(cfg.n, cfg.k), params, opt);
        // eigenvalues scale linearly with Lambda
    } else if (cfg.problem == "nu-zero-reference") {
        spec = nu_zero_spectrum(ModeNumbers::make(cfg.n, cfg.k), opt);
    } else if (tensor) {
        spec = tensor_spectrum_tilde(params, opt);
    } else {
        throw CLI::ValidationError("--problem must be scalar, tensor or nu-zero-reference");
    }

    int count = std::min<int>(cfg.overtones, static_cast<int>(spec.pairs.size()));
    int top_res = spec.resolutions_used.empty() ? 0 : spec.resolutions_used.back();
    auto grid = gauss_lobatto(top_res);

    std::vector<detail::ComputedRow> rows;
    for (int N = 0; N < count; ++N) {
        const auto& ep = spec.pairs[static_cast<size_t>(N)];
        detail::ComputedRow r{};
        r.n = cfg.n; r.k = cfg.k; r.N = N;
        r.resolution = ep.resolution;
        r.residual = ep.convergence_residual;
        if (tensor) {
            r.eigenvalue = ep.eigenvalue;  // lt, as published
            r.lambda_physical = lambda_from_tilde(ep.eigenvalue, params);
        } else {
            r.eigenvalue = ep.eigenvalue * cfg.lambda_cc;  // lambda scales with Lambda
            r.lambda_physical = 0.0;
        }
        r.u = &ep.u_values;
        rows.push_back(r);
    }

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "problem,n,k,N,resolution,eigenvalue,residual";
        if (tensor) os << ",lambda";
        os << "\n";
        for (const auto& r : rows) {
            os << cfg.problem << ',' << r.n << ',' << r.k << ',' << r.N << ',' << r.resolution << ','
               << fmt_g17(r.eigenvalue) << ',' << fmt_g17(r.residual);
            if (tensor) os << ',' << fmt_g17(r.lambda_physical);
            os << "\n";
        }
        detail::atomic_write(cfg.out_path, os.str());
        if (cfg.eigenfunctions) {
            for (const auto& r : rows) {
                if (!r.u || r.u->empty()) continue;
                std::ostringstream ef;
                ef << "x,u\n";
                for (size_t i = 0; i < r.u->size(); ++i)
                    ef << fmt_g17(grid.points[i]) << ',' << fmt_g17((*r.u)[i]) << "\n";
                detail::atomic_write(cfg.out_path + ".ef" + std::to_string(r.N) + ".csv", ef.str());
            }
        }
    } else if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["problem"] = cfg.problem;
        j["lambda_cc"] = cfg.lambda_cc;
        j["units"] = "Lambda = " + fmt_g17(cfg.lambda_cc);
        j["modes"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json m;
            m["n"] = r.n;
            m["k"] = r.k;
            m["N"] = r.N;
            m["resolution"] = r.resolution;
            m["eigenvalue"] = r.eigenvalue;
            m["residual"] = r.residual;
            if (tensor) m["lambda"] = r.lambda_physical;
            if (cfg.eigenfunctions && r.u && !r.u->empty()) {
                m["eigenfunction"]["x"] = grid.points;
                m["eigenfunction"]["u"] = *r.u;
            }
            j["modes"].push_back(std::move(m));
        }
        detail::atomic_write(cfg.out_path, j.dump(2) + "\n");
    } else {
        throw CLI::ValidationError("--format must be csv or json");
    }
    return 0;
}

inline int cmd_validate(const std::string& suite, std::ostream& os) {
    auto params = MetricParams::page();
    bool all = (suite == "all");
    bool ok = true;

    if (all || suite == "nu-zero") {
        double worst = 0.0;
        for (long n = 0; n <= 3; ++n)
            for (long k = 0; k <= 3; ++k) {
                auto m = ModeNumbers::make(n, k);
                auto spec = nu_zero_spectrum(m, SolveOptions::from_base(64));
                for (long N = 0; N < 10; ++N) {
                    double expect = nu_zero_eigenvalue(m, N);
                    worst = std::max(worst, std::abs(spec.pairs[static_cast<size_t>(N)].eigenvalue - expect) /
                                                (1.0 + expect));
                }
            }
        bool pass = worst < 1e-10;
        ok = ok && pass;
        os << (pass ? "PASS" : "FAIL") << " nu-zero exactness: max relative residual " << fmt_g17(worst) << "\n";
    }
    if (all || suite == "integrals") {
        double worst = 0.0;
        for (auto [l, n] : {std::pair<long, long>{1, 1}, {2, 1}, {3, 2}, {4, 3}, {5, 1}}) {
            auto closed = intermediate_integrals(l, n);
            auto quad = intermediate_integrals_quadrature(l, n);
            worst = std::max(worst, std::abs(quad.csc2 - closed.csc2));
            worst = std::max(worst, std::abs(quad.cos2_csc2 - closed.cos2_csc2));
            worst = std::max(worst, std::abs(quad.cos4_csc2 - closed.cos4_csc2));
            worst = std::max(worst, std::abs(quad.s_cot_csc2 - closed.s_cot_csc2));
        }
        bool pass = worst < 1e-10;
        ok = ok && pass;
        os << (pass ? "PASS" : "FAIL") << " intermediate integrals: max abs deviation " << fmt_g17(worst) << "\n";
    }
    if (all || suite == "perturbation") {
        double worst = 0.0;
        long wn = -1, wk = -1, wN = -1;
        for (long n = 0; n <= 5; ++n)
            for (long k = 0; k <= 5; ++k) {
                auto spec = scalar_spectrum(ModeNumbers::make(n, k), params, SolveOptions::from_base(120));
                long top = std::min<long>(50, static_cast<long>(spec.pairs.size()) - 1);
                for (long N = 0; N <= top; ++N) {
                    auto m = ModeNumbers::make(n, k, N);
                    double got = spec.pairs[static_cast<size_t>(N)].eigenvalue;
                    if (std::abs(got) < 1e-8) continue;
                    double rel = std::abs(lambda_zero(m) + lambda_one(m, params.nu) - got) / std::abs(got);
                    if (rel > worst) { worst = rel; wn = n; wk = k; wN = N; }
                }
            }
        bool pass = worst <= 0.007;
        ok = ok && pass;
        os << (pass ? "PASS" : "FAIL") << " perturbation accuracy: max relative error " << fmt_g17(worst)
           << " at (N,n,k) = (" << wN << "," << wn << "," << wk << ")\n";
    }
    if (all || suite == "shooting") {
        auto sp = strip(build_scalar(ModeNumbers::make(0, 0), params).as_operator());
        auto spec = converge(sp, {140, 170});
        double worst = 0.0;
        for (size_t i = 1; i <= 5; ++i) {
            double lam = spec.pairs[i].eigenvalue;
            auto r = refine(sp, {lam - 1e-3 * (1.0 + lam), lam + 1e-3 * (1.0 + lam)}, 1e-11);
            worst = std::max(worst, std::abs(r.eigenvalue - lam) / (1.0 + std::abs(lam)));
        }
        auto even = tensor_even_sector(params);
        auto tspec = tensor_spectrum_tilde(params, SolveOptions::from_base(120), false);
        auto r0 = refine(even, {-7.0, -6.0}, 1e-12);
        worst = std::max(worst, std::abs(r0.eigenvalue - tspec.pairs[0].eigenvalue) /
                                    (1.0 + std::abs(r0.eigenvalue)));
        bool pass = worst <= 1e-8;
        ok = ok && pass;
        os << (pass ? "PASS" : "FAIL") << " shooting vs spectral: max scaled deviation " << fmt_g17(worst) << "\n";
    }
    return ok ? 0 : 1;
}

inline int cmd_fit(long n, long k, int window_lo, int window_hi, int resolution, std::ostream& os) {
    auto params = MetricParams::page();
    SolveOptions opt;
    opt.resolutions = {resolution, resolution + 25};
    opt.convergence_tol = 1e-8;  // high overtones carry larger relative scan residuals
    auto spec = scalar_spectrum(ModeNumbers::make(n, k), params, opt);
    std::vector<double> lam;
    lam.reserve(spec.pairs.size());
    for (const auto& ep : spec.pairs) lam.push_back(ep.eigenvalue);
    auto fit = asymptotic_fit(lam, n, window_lo, window_hi);
    double pred = 1.0 - params.nu * params.nu;
    os << "fit lambda_N ~ a N(N + 2n + 1) + c, (n,k) = (" << n << "," << k << "), N in ["
       << window_lo << "," << window_hi << "]\n";
    os << "a = " << fmt_g17(fit.a_coeff) << "\n";
    os << "c = " << fmt_g17(fit.constant) << "\n";
    os << "rms residual = " << fmt_g17(fit.residual) << "\n";
    os << "perturbative prediction 1 - nu^2 = " << fmt_g17(pred) << "\n";
    return 0;
}

inline int run(std::vector<std::string> args) {
    CLI::App app{"Spectra of the scalar Laplacian and the Lichnerowicz tensor operator on the Page metric"};
    app.set_config("--config");
    app.require_subcommand(1);

    RunConfig cfg;
    auto* compute = app.add_subcommand("compute", "compute a spectrum and write it to a file");
    compute->add_option("--problem", cfg.problem, "scalar | tensor | nu-zero-reference");
    compute->add_option("--n", cfg.n, "fiber mode number (n >= 0)");
    compute->add_option("--k", cfg.k, "angular quantum number (k >= 0)");
    compute->add_option("--overtones", cfg.overtones, "number of overtones to report")->check(CLI::PositiveNumber);
    compute->add_option("--resolution", cfg.resolutions, "collocation resolution(s)")->delimiter(',');
    compute->add_option("--format", cfg.format, "csv | json");
    compute->add_option("--out", cfg.out_path, "output path")->required();
    compute->add_option("--lambda-cc", cfg.lambda_cc, "cosmological constant Lambda (default 1)");
    compute->add_option("--tol-convergence", cfg.tol_convergence, "convergence filter tolerance");
    compute->add_option("--tol-realness", cfg.tol_realness, "realness filter tolerance");
    compute->add_option("--tol-shooting", cfg.tol_shooting, "shooting refinement tolerance");
    compute->add_flag("--eigenfunctions", cfg.eigenfunctions, "export eigenfunction data");

    std::string suite = "all";
    auto* validate = app.add_subcommand("validate", "run the cross-check suites");
    validate->add_option("--suite", suite, "perturbation | shooting | nu-zero | integrals | all")
        ->check(CLI::IsMember({"perturbation", "shooting", "nu-zero", "integrals", "all"}));

    long fn = 0, fk = 0;
    std::string window = "200:500";
    int fres = 800;
    auto* fit = app.add_subcommand("fit", "large-overtone asymptotic fit");
    fit->add_option("--n", fn, "fiber mode number");
    fit->add_option("--k", fk, "angular quantum number");
    fit->add_option("--window", window, "overtone window Nmin:Nmax");
    fit->add_option("--resolution", fres, "collocation resolution");

    std::vector<const char*> argv;
    argv.push_back("pagespec");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        nlohmann::ordered_json err;
        err["error"]["type"] = "invalid-input";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (compute->parsed()) {
            if (cfg.n < 0) cfg.n = -cfg.n;  // spectrum depends on |n| only
            if (cfg.k < 0) throw CLI::ValidationError("--k must be >= 0");
            if (cfg.lambda_cc <= 0.0) throw CLI::ValidationError("--lambda-cc must be positive");
            if (cfg.tol_convergence <= 0 || cfg.tol_realness <= 0 || cfg.tol_shooting <= 0)
                throw CLI::ValidationError("tolerances must be positive");
            for (size_t i = 1; i < cfg.resolutions.size(); ++i)
                if (cfg.resolutions[i] <= cfg.resolutions[i - 1])
                    throw CLI::ValidationError("--resolution list must be ascending");
            return cmd_compute(cfg);
        }
        if (validate->parsed()) return cmd_validate(suite, std::cout);
        if (fit->parsed()) {
            auto pos = window.find(':');
            if (pos == std::string::npos) throw CLI::ValidationError("--window must be Nmin:Nmax");
            int wlo = std::stoi(window.substr(0, pos));
            int whi = std::stoi(window.substr(pos + 1));
            return cmd_fit(fn, fk, wlo, whi, fres, std::cout);
        }
    } catch (const CLI::ValidationError& e) {
        nlohmann::ordered_json err;
        err["error"]["type"] = "invalid-input";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        nlohmann::ordered_json err;
        err["error"]["type"] = "invalid-input";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::ordered_json err;
        err["error"]["type"] = "numerical-failure";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace pagespec::cli
