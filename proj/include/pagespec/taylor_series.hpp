#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace pagespec {

// Truncated power series about a point, used as a drop-in "jet" scalar:
// arithmetic on TaylorSeries evaluates a closed-form expression together
// with its derivatives (scaled as Taylor coefficients) to the stored order.
// The scalar type T is double for assembly and std::complex<double> for the
// analytic continuation used by the perturbation series.
template <typename T>
class TaylorSeries {
public:
    TaylorSeries() = default;

    explicit TaylorSeries(int order, T value = T(0)) : c_(order + 1, T(0)) {
        c_[0] = value;
    }

    // the independent variable: value + t
    static TaylorSeries variable(T value, int order) {
        TaylorSeries s(order, value);
        if (order >= 1) s.c_[1] = T(1);
        return s;
    }

    static TaylorSeries constant(T value, int order) { return TaylorSeries(order, value); }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const T& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    T& operator[](int k) { return c_[static_cast<size_t>(k)]; }
    T value() const { return c_[0]; }

    // series / t^k; the k leading coefficients must vanish to tolerance
    TaylorSeries shift_down(int k, double tol = 1e-7) const {
        double scale = 0.0;
        for (const T& a : c_) scale = std::max(scale, std::abs(a));
        for (int j = 0; j < k; ++j) {
            if (std::abs(c_[static_cast<size_t>(j)]) > tol * (1.0 + scale))
                throw std::runtime_error("TaylorSeries::shift_down: nonvanishing low-order coefficient");
        }
        TaylorSeries out(order() - k);
        for (int j = 0; j <= out.order(); ++j) out.c_[static_cast<size_t>(j)] = c_[static_cast<size_t>(j + k)];
        return out;
    }

    // series * t^k
    TaylorSeries shift_up(int k) const {
        TaylorSeries out(order() + k);
        for (int j = 0; j <= order(); ++j) out.c_[static_cast<size_t>(j + k)] = c_[static_cast<size_t>(j)];
        return out;
    }

    TaylorSeries truncated(int new_order) const {
        TaylorSeries out(new_order);
        for (int j = 0; j <= std::min(order(), new_order); ++j) out.c_[static_cast<size_t>(j)] = c_[static_cast<size_t>(j)];
        return out;
    }

    // d/dt
    TaylorSeries derivative() const {
        if (order() == 0) return TaylorSeries(0, T(0));
        TaylorSeries out(order() - 1);
        for (int j = 1; j <= order(); ++j) out.c_[static_cast<size_t>(j - 1)] = T(double(j)) * c_[static_cast<size_t>(j)];
        return out;
    }

    T eval(T t) const {
        T acc = T(0);
        for (int j = order(); j >= 0; --j) acc = acc * t + c_[static_cast<size_t>(j)];
        return acc;
    }

    friend TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
        TaylorSeries out(std::min(a.order(), b.order()));
        for (int j = 0; j <= out.order(); ++j) out.c_[static_cast<size_t>(j)] = a[j] + b[j];
        return out;
    }
    friend TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
        TaylorSeries out(std::min(a.order(), b.order()));
        for (int j = 0; j <= out.order(); ++j) out.c_[static_cast<size_t>(j)] = a[j] - b[j];
        return out;
    }
    friend TaylorSeries operator-(const TaylorSeries& a) {
        TaylorSeries out = a;
        for (auto& v : out.c_) v = -v;
        return out;
    }
    friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
        TaylorSeries out(std::min(a.order(), b.order()));
        for (int j = 0; j <= out.order(); ++j) {
            T s = T(0);
            for (int m = 0; m <= j; ++m) s += a[m] * b[j - m];
            out.c_[static_cast<size_t>(j)] = s;
        }
        return out;
    }
    friend TaylorSeries operator/(const TaylorSeries& a, const TaylorSeries& b) {
        if (std::abs(b[0]) == 0.0) throw std::runtime_error("TaylorSeries: division by series with zero constant term");
        TaylorSeries out(std::min(a.order(), b.order()));
        for (int j = 0; j <= out.order(); ++j) {
            T s = a[j];
            for (int m = 1; m <= j; ++m) s -= out[j - m] * b[m];
            out.c_[static_cast<size_t>(j)] = s / b[0];
        }
        return out;
    }

    friend TaylorSeries operator+(const TaylorSeries& a, T s) { TaylorSeries o = a; o.c_[0] += s; return o; }
    friend TaylorSeries operator+(T s, const TaylorSeries& a) { return a + s; }
    friend TaylorSeries operator-(const TaylorSeries& a, T s) { TaylorSeries o = a; o.c_[0] -= s; return o; }
    friend TaylorSeries operator-(T s, const TaylorSeries& a) { return (-a) + s; }
    friend TaylorSeries operator*(const TaylorSeries& a, T s) {
        TaylorSeries o = a;
        for (auto& v : o.c_) v *= s;
        return o;
    }
    friend TaylorSeries operator*(T s, const TaylorSeries& a) { return a * s; }
    friend TaylorSeries operator/(const TaylorSeries& a, T s) { return a * (T(1) / s); }
    friend TaylorSeries operator/(T s, const TaylorSeries& a) { return TaylorSeries::constant(s, a.order()) / a; }

private:
    std::vector<T> c_;
};

// sqrt of a series with positive-real leading coefficient
template <typename T>
TaylorSeries<T> sqrt(const TaylorSeries<T>& a) {
    using std::sqrt;
    TaylorSeries<T> out(a.order());
    out[0] = sqrt(a[0]);
    for (int j = 1; j <= a.order(); ++j) {
        T s = a[j];
        for (int m = 1; m < j; ++m) s -= out[m] * out[j - m];
        out[j] = s / (T(2) * out[0]);
    }
    return out;
}

// a^p for real exponent p, leading coefficient away from zero.
// Solves (a^p)' * a = p * a' * a^p coefficientwise.
template <typename T>
TaylorSeries<T> pow(const TaylorSeries<T>& a, double p) {
    using std::pow;
    TaylorSeries<T> out(a.order());
    out[0] = pow(a[0], T(p));
    for (int j = 1; j <= a.order(); ++j) {
        T s = T(0);
        for (int m = 1; m <= j; ++m) {
            double w = p * m - (j - m);
            s += T(w) * a[m] * out[j - m];
        }
        out[j] = s / (T(double(j)) * a[0]);
    }
    return out;
}

template <typename T>
TaylorSeries<T> pow(const TaylorSeries<T>& a, int n) {
    TaylorSeries<T> out = TaylorSeries<T>::constant(T(1), a.order());
    for (int i = 0; i < n; ++i) out = out * a;
    return out;
}

// compose f(g(t)) for a series g with vanishing constant term
template <typename T>
TaylorSeries<T> compose(const TaylorSeries<T>& f, const TaylorSeries<T>& g) {
    if (std::abs(g[0]) > 1e-13) throw std::runtime_error("compose: inner series must vanish at 0");
    TaylorSeries<T> out(g.order());
    for (int j = std::min(f.order(), g.order()); j >= 0; --j) out = out * g + f[j];
    return out;
}

// sin/cos of a series with vanishing constant term (Maclaurin composition)
template <typename T>
TaylorSeries<T> sin(const TaylorSeries<T>& g) {
    int n = g.order();
    TaylorSeries<T> mac(n);
    double fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        if (k % 2 == 1) mac[k] = T(((k / 2) % 2 == 0 ? 1.0 : -1.0) / fact);
    }
    return compose(mac, g);
}

template <typename T>
TaylorSeries<T> cos(const TaylorSeries<T>& g) {
    int n = g.order();
    TaylorSeries<T> mac(n);
    mac[0] = T(1);
    double fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        if (k % 2 == 0) mac[k] = T(((k / 2) % 2 == 0 ? 1.0 : -1.0) / fact);
    }
    return compose(mac, g);
}


using Jet = TaylorSeries<double>;
using CJet = TaylorSeries<std::complex<double>>;

}  // namespace pagespec