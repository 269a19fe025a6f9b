#pragma once

#include <functional>
#include <string>

#include "pagespec/taylor_series.hpp"

namespace pagespec {

enum class Endpoint { Left, Right };  // x = -1 and x = +1

// Analytic endpoint data for a second-order operator, written in the local
// coordinate t (t = 1-x at the right endpoint, t = 1+x at the left, so t >= 0
// points into the interior and d/dx = -d/dt on the right):
//
//     T2(t) u_tt + T1(t) u_t + (T0(t) - lambda TL(t)) u = 0
//
// premultiplied by a power of t so that all four series are analytic and
// ord(T2) = 2 exactly. TL must vanish at t = 0 (the indicial equation is
// lambda-free for the problems in scope).
struct EndpointData {
    Jet T2, T1, T0, TL;
};

// General eigenproblem  a2 h'' + a1 h' + a0 h = lambda b h  on (-1,1).
// Interior evaluators may be singular at the endpoints (and, for the tensor
// master equation, at the apparent interior point x = 0); callers only
// evaluate them at interior collocation nodes.
struct OperatorOde {
    std::function<double(double)> a2, a1, a0, bweight;
    std::function<EndpointData(Endpoint, int order)> local;
    std::string label;
};

// Sturm-Liouville problem -(p u')' + q u = lambda w u, the form taken by the
// scalar reductions. p(+-1) = 0 (singular endpoints); q may blow up there.
struct SLProblem {
    std::function<double(double)> p, q, w;
    std::function<double(double)> p_prime;  // exact derivative of p
    std::function<Jet(double, int)> p_jet, w_jet;  // local Taylor data at interior points
    std::function<EndpointData(Endpoint, int order)> local;
    std::string label;

    OperatorOde as_operator() const {
        OperatorOde op;
        op.a2 = [pp = p](double x) { return -pp(x); };
        op.a1 = [dp = p_prime](double x) { return -dp(x); };
        op.a0 = q;
        op.bweight = w;
        op.local = local;
        op.label = label;
        return op;
    }
};

}  // namespace pagespec
