#include "nehari/fiber.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/formulas.hpp"

namespace nehari {

namespace {

// dH/dt = q (s - q) t^(q-1) F - r (r - s) t^(r-1) G; nonzero on (0, inf) in
// every admissible case.
double fiber_slope(const ScalingExponents& e, double F, double G, double t) {
    return e.q * (e.s - e.q) * std::pow(t, e.q - 1.0) * F -
           e.r * (e.r - e.s) * std::pow(t, e.r - 1.0) * G;
}

} // namespace

FiberSolution solve_fiber_time_values(const ScalingExponents& e, SignCase sc, double F, double G,
                                      double c, const FiberOptions& opts) {
    require_admissible_energy(sc, c);
    require_signs(sc, F, G);

    const double tol = opts.tol_abs * (1.0 + std::abs(c) * e.s);
    auto H = [&](double t) { return fiber_residual_values(e, F, G, c, t); };

    FiberSolution sol;
    switch (sc) {
        case SignCase::I:
        case SignCase::II:
            // G = 0: (s - q) t^q F = -c s
            sol.t = std::pow(-c * e.s / ((e.s - e.q) * F), 1.0 / e.q);
            sol.method = FiberMethod::ClosedForm;
            sol.residual = H(sol.t);
            return sol;
        case SignCase::III:
        case SignCase::IV:
            // F = 0: (r - s) t^r G = c s
            sol.t = std::pow(c * e.s / ((e.r - e.s) * G), 1.0 / e.r);
            sol.method = FiberMethod::ClosedForm;
            sol.residual = H(sol.t);
            return sol;
        default:
            break;
    }

    // Mixed cases: H is strictly monotone, increasing in V and decreasing in VI.
    double lo = std::ldexp(1.0, -20);
    double hi = 1.0;
    double h_lo = H(lo);
    double h_hi = H(hi);
    int doublings = 0;
    while (h_lo * h_hi > 0.0) {
        if (++doublings > opts.max_doublings)
            throw NoConvergenceError("fiber bracket not found below t = 2^40");
        lo = hi;
        h_lo = h_hi;
        hi *= 2.0;
        h_hi = H(hi);
    }
    if (h_lo == 0.0) return {lo, 0.0, FiberMethod::BisectionNewton};
    if (h_hi == 0.0) return {hi, 0.0, FiberMethod::BisectionNewton};

    // Bisect to a narrow relative bracket, then Newton.
    for (int i = 0; i < opts.max_bisections && (hi - lo) > 1e-3 * lo; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = H(mid);
        if (h_mid == 0.0) return {mid, 0.0, FiberMethod::BisectionNewton};
        if (h_mid * h_lo > 0.0) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
            h_hi = h_mid;
        }
    }

    double t = 0.5 * (lo + hi);
    double h_t = H(t);
    for (int i = 0; i < opts.max_newton && std::abs(h_t) > tol; ++i) {
        const double slope = fiber_slope(e, F, G, t);
        double t_next = t - h_t / slope;
        if (!(t_next > lo && t_next < hi)) t_next = 0.5 * (lo + hi); // fall back to bisection
        const double h_next = H(t_next);
        if (h_next * h_lo > 0.0) {
            lo = t_next;
            h_lo = h_next;
        } else {
            hi = t_next;
            h_hi = h_next;
        }
        t = t_next;
        h_t = h_next;
    }
    if (std::abs(h_t) > tol)
        throw NoConvergenceError("fiber residual " + std::to_string(h_t) +
                                 " above tolerance after Newton polish");
    return {t, h_t, FiberMethod::BisectionNewton};
}

State scale_to_nehari(const ScaledProblem& p, const State& u, double c, double* t_out) {
    const auto& e = p.exponents();
    const FiberSolution fib = solve_fiber_time(p, u, c);

    // Secant polish of t on the re-evaluated constraint; for exact scaling
    // actions the first evaluation already lands at roundoff.
    auto res_at = [&](double t) {
        const State v = p.scale(u, t);
        return nehari_residual_values(e, p.eval_F(v), p.eval_G(v), c);
    };
    double t0 = fib.t;
    double r0 = res_at(t0);
    const double scale_ref =
        (e.s - e.q) * std::abs(p.eval_F(u)) * std::pow(t0, e.q) +
        (e.r - e.s) * std::abs(p.eval_G(u)) * std::pow(t0, e.r) + std::abs(c) * e.s;
    const double tol = 1e-13 * (scale_ref > 0.0 ? scale_ref : 1.0);

    if (std::abs(r0) > tol) {
        double t1 = t0 * (1.0 + 1e-6);
        double r1 = res_at(t1);
        for (int i = 0; i < 40 && std::abs(r1) > tol && r1 != r0; ++i) {
            const double t2 = t1 - r1 * (t1 - t0) / (r1 - r0);
            if (!(t2 > 0.0) || !std::isfinite(t2)) break;
            t0 = t1;
            r0 = r1;
            t1 = t2;
            r1 = res_at(t1);
        }
        t0 = std::abs(r1) < std::abs(r0) ? t1 : t0;
    }
    if (t_out) *t_out = t0;
    return p.scale(u, t0);
}

} // namespace nehari
