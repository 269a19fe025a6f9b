#pragma once

#include <cstdlib>
#include <stdexcept>

namespace pagespec {

// Charged-sphere eigenvalue mu = l(l+2) - n^2 with fiber degree l = 2k + |n|.
inline long mu_of(long n, long k) {
    if (k < 0) throw std::invalid_argument("mu_of: k must be >= 0");
    long lf = 2 * k + std::labs(n);
    return lf * (lf + 2) - n * n;
}

// Quantum numbers of a separable mode. Two distinct "l" labels exist and are
// kept apart deliberately: ell_fiber enters mu; ell_legendre = n + N labels the
// unperturbed Legendre mode used by the perturbative formulas.
struct ModeNumbers {
    long n = 0;
    long k = 0;
    long overtone = 0;  // N
    long ell_fiber = 0;
    long mu = 0;
    long ell_legendre = 0;

    static ModeNumbers make(long n, long k, long overtone = 0) {
        if (k < 0) throw std::invalid_argument("ModeNumbers: k must be >= 0");
        if (overtone < 0) throw std::invalid_argument("ModeNumbers: overtone must be >= 0");
        ModeNumbers m;
        m.n = std::labs(n);  // spectrum depends on |n| only
        m.k = k;
        m.overtone = overtone;
        m.ell_fiber = 2 * k + m.n;
        m.mu = mu_of(m.n, k);
        m.ell_legendre = m.n + overtone;
        return m;
    }
};

}  // namespace pagespec
