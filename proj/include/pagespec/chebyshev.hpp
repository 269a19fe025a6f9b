#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pagespec {

// Chebyshev extrema x_i = cos(i pi / N), i = 0..N, descending from +1 to -1.
inline std::vector<double> chebyshev_points(int n_res) {
    std::vector<double> x(static_cast<size_t>(n_res) + 1);
    for (int i = 0; i <= n_res; ++i) x[static_cast<size_t>(i)] = std::cos(M_PI * i / n_res);
    x[0] = 1.0;
    x[static_cast<size_t>(n_res)] = -1.0;
    if (n_res % 2 == 0) x[static_cast<size_t>(n_res / 2)] = 0.0;
    return x;
}

// Collocation grid on [-1,1].
struct CollocationGrid {
    int resolution = 0;  // N
    std::vector<double> points;
};

inline CollocationGrid gauss_lobatto(int n_res) {
    if (n_res < 4) throw std::invalid_argument("gauss_lobatto: resolution must be >= 4");
    return CollocationGrid{n_res, chebyshev_points(n_res)};
}

// Dense Chebyshev differentiation matrix on the extrema grid (Trefethen,
// Spectral Methods in MATLAB, with the negative-sum diagonal trick).
inline Eigen::MatrixXd diff_matrix(const CollocationGrid& grid) {
    const int n = grid.resolution;
    const auto& x = grid.points;
    Eigen::MatrixXd d(n + 1, n + 1);
    auto c = [&](int i) { return (i == 0 || i == n) ? 2.0 : 1.0; };
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            d(i, j) = (c(i) / c(j)) * sign / (x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
        }
    }
    for (int i = 0; i <= n; ++i) {
        double s = 0.0;
        for (int j = 0; j <= n; ++j)
            if (j != i) s += d(i, j);
        d(i, i) = -s;
    }
    return d;
}

// Clenshaw-Curtis quadrature weights on the extrema grid (Waldvogel's
// closed form via the even cosine sums), exact for degree <= N.
inline std::vector<double> clenshaw_curtis_weights(int n_res) {
    const int n = n_res;
    std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double s = 1.0;
        for (int k = 1; k <= n / 2; ++k) {
            double bk = (2 * k == n) ? 1.0 : 2.0;
            s -= bk * std::cos(2.0 * k * i * M_PI / n) / (4.0 * k * k - 1.0);
        }
        double ci = (i == 0 || i == n) ? 1.0 : 2.0;
        w[static_cast<size_t>(i)] = ci * s / n;
    }
    return w;
}

// --- Chebyshev series utilities on a general interval [a,b] ---------------
// Used for spectrally accurate antiderivatives (the s(x) coordinate of the
// Schrodinger transform). Templated so the perturbation module can run them
// with complex-valued samples of a real-variable function.

template <typename T>
struct ChebSeries {
    double a = -1.0, b = 1.0;
    std::vector<T> coef;  // f(x) = sum coef[k] T_k(z), z = (2x-a-b)/(b-a)

    T eval(double x) const {
        double z = (2.0 * x - a - b) / (b - a);
        // Clenshaw
        T bk1 = T(0), bk2 = T(0);
        for (int k = static_cast<int>(coef.size()) - 1; k >= 1; --k) {
            T bk = T(2.0 * z) * bk1 - bk2 + coef[static_cast<size_t>(k)];
            bk2 = bk1;
            bk1 = bk;
        }
        return T(z) * bk1 - bk2 + coef[0];
    }
};

// Interpolate f at the K+1 extrema points of [a,b]; coefficients by discrete
// cosine sums (direct O(K^2), K is a few hundred at most here).
template <typename T, typename F>
ChebSeries<T> cheb_interpolate(F&& f, double a, double b, int K) {
    std::vector<T> fv(static_cast<size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) {
        double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(M_PI * j / K);
        fv[static_cast<size_t>(j)] = f(x);
    }
    ChebSeries<T> s;
    s.a = a;
    s.b = b;
    s.coef.assign(static_cast<size_t>(K) + 1, T(0));
    for (int k = 0; k <= K; ++k) {
        T acc = T(0);
        for (int j = 0; j <= K; ++j) {
            double cj = (j == 0 || j == K) ? 0.5 : 1.0;
            acc += T(cj * std::cos(M_PI * k * j / K)) * fv[static_cast<size_t>(j)];
        }
        double ck = (k == 0 || k == K) ? 1.0 : 2.0;
        s.coef[static_cast<size_t>(k)] = acc * T(ck / K);
    }
    return s;
}

// Antiderivative with F(a) = 0.
template <typename T>
ChebSeries<T> cheb_antiderivative(const ChebSeries<T>& s) {
    const int K = static_cast<int>(s.coef.size()) - 1;
    ChebSeries<T> out;
    out.a = s.a;
    out.b = s.b;
    out.coef.assign(static_cast<size_t>(K) + 2, T(0));
    const double scale = 0.5 * (s.b - s.a);
    auto c = [&](int k) { return (k >= 0 && k <= K) ? s.coef[static_cast<size_t>(k)] : T(0); };
    for (int k = 1; k <= K + 1; ++k)
        out.coef[static_cast<size_t>(k)] = T(scale / (2.0 * k)) * (c(k - 1) - c(k + 1));
    out.coef[1] = out.coef[1] + T(0.5 * scale) * c(0);
    out.coef[0] = T(0);
    out.coef[0] = -out.eval(s.a);
    return out;
}

}  // namespace pagespec
