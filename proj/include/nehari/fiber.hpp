#pragma once

#include "nehari/problem.hpp"
#include "nehari/scaling.hpp"

namespace nehari {

enum class FiberMethod { ClosedForm, BisectionNewton };

/// Solved fiber time for one (state, energy) pair.
struct FiberSolution {
    double t = 0.0;        // unique positive root of H(c, .)
    double residual = 0.0; // H(c, t) at the returned t
    FiberMethod method = FiberMethod::ClosedForm;
};

struct FiberOptions {
    double tol_abs = 1e-12;      // on |H|, scaled by (1 + |c| s)
    int max_doublings = 60;      // bracket growth cap: upper end 2^(max-20)
    int max_bisections = 200;
    int max_newton = 60;
};

/// H(c, t) = (s - q) t^q F - (r - s) t^r G + c s, whose positive root is the
/// fiber time. Strictly monotone in t in every admissible sign case.
inline double fiber_residual_values(const ScalingExponents& e, double F, double G, double c,
                                    double t) {
    return (e.s - e.q) * std::pow(t, e.q) * F - (e.r - e.s) * std::pow(t, e.r) * G + c * e.s;
}

/// Root of H(c, .): closed form in the pure cases, bracketed bisection with a
/// Newton polish in the mixed ones. Requires c inside the open admissible
/// interval and (F, G) signs matching the case.
FiberSolution solve_fiber_time_values(const ScalingExponents& e, SignCase sc, double F, double G,
                                      double c, const FiberOptions& opts = {});

/// fiber_residual on a problem state: H evaluated at the state's (F, G).
inline double fiber_residual(const ScaledProblem& p, const State& u, double c, double t) {
    return fiber_residual_values(p.exponents(), p.eval_F(u), p.eval_G(u), c, t);
}

/// Fiber time for a sphere state u (I(u) = 1 expected).
inline FiberSolution solve_fiber_time(const ScaledProblem& p, const State& u, double c,
                                      const FiberOptions& opts = {}) {
    return solve_fiber_time_values(p.exponents(), p.sign_case(), p.eval_F(u), p.eval_G(u), c,
                                   opts);
}

/// Scale u by the solved fiber time, then polish t on the actual re-evaluated
/// functionals so the returned state satisfies the discrete Nehari constraint
/// to near roundoff (resampling actions perturb the power laws slightly).
State scale_to_nehari(const ScaledProblem& p, const State& u, double c, double* t_out = nullptr);

} // namespace nehari
