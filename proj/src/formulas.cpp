#include "nehari/formulas.hpp"

#include <cmath>

namespace nehari {

double closed_form_lambda_tilde_values(const ScalingExponents& e, SignCase sc,
                                       const FunctionalValues& v, double c) {
    require_admissible_energy(sc, c);
    require_signs(sc, v.f, v.g);
    const double psi = v.i_s / v.j_s;
    const double s = e.s, q = e.q, r = e.r;
    switch (sc) {
        case SignCase::I:
            return psi - (q / s) * std::pow((s - q) / (std::abs(c) * s), (s - q) / q) *
                             std::pow(v.f, s / q) / v.j_s;
        case SignCase::II:
            return psi * (1.0 + (q / s) * std::pow((s - q) / (c * s), (s - q) / q) *
                                    std::pow(std::abs(v.f), s / q));
        case SignCase::III:
            return psi - (r / s) * std::pow(c * s / (r - s), (r - s) / r) *
                             std::pow(v.g, s / r) / v.j_s;
        case SignCase::IV:
            return psi * (1.0 + (r / s) * std::pow(std::abs(c) * s / (r - s), (r - s) / r) *
                                    std::pow(std::abs(v.g), s / r));
        default:
            throw CaseMismatchError("closed-form lambda-tilde requires a pure case, got " +
                                    to_string(sc));
    }
}

std::pair<double, State> project_to_sphere(const ScaledProblem& p, const State& u) {
    const double I = p.eval_I(u);
    if (!(I > kZeroStateTol)) throw ZeroStateError("cannot project: I(u) <= 0");
    const double t_u = std::pow(I, -1.0 / p.exponents().s);
    return {t_u, p.scale(u, t_u)};
}

State normalize_to_sphere(const ScaledProblem& p, const State& u, double tol, int max_iter) {
    State v = u;
    for (int i = 0; i < max_iter; ++i) {
        const double I = p.eval_I(v);
        if (!(I > kZeroStateTol)) throw ZeroStateError("cannot normalize: I(u) <= 0");
        if (std::abs(I - 1.0) <= tol) return v;
        v = p.scale(v, std::pow(I, -1.0 / p.exponents().s));
    }
    if (std::abs(p.eval_I(v) - 1.0) > tol)
        throw NoConvergenceError("sphere normalization stalled at |I - 1| = " +
                                 std::to_string(std::abs(p.eval_I(v) - 1.0)));
    return v;
}

double lambda_c_value(const ScaledProblem& p, const State& u, double c) {
    const FunctionalValues v = p.eval_all(u);
    require_nonzero(v);
    return lambda_c_from_values(v, c);
}

double big_lambda_c(const ScaledProblem& p, const State& v, double c, double tol_nehari) {
    const FunctionalValues vals = p.eval_all(v);
    require_nonzero(vals);
    const auto& e = p.exponents();
    const double res = nehari_residual_values(e, vals.f, vals.g, c);
    const double scale = (e.s - e.q) * std::abs(vals.f) + (e.r - e.s) * std::abs(vals.g) +
                         std::abs(c) * e.s;
    if (std::abs(res) > tol_nehari * (scale > 0.0 ? scale : 1.0))
        throw NotOnNehariError("Nehari residual " + std::to_string(res) +
                               " exceeds tolerance; state is not on the manifold");
    return big_lambda_from_values(e, vals, c);
}

std::pair<double, FiberSolution> lambda_tilde(const ScaledProblem& p, const State& u, double c) {
    const FunctionalValues v = p.eval_all(u);
    require_nonzero(v);
    const FiberSolution fib =
        solve_fiber_time_values(p.exponents(), p.sign_case(), v.f, v.g, c);
    return {lambda_tilde_full(p.exponents(), v, c, fib.t), fib};
}

double dlambda_tilde_dc(const ScaledProblem& p, const State& u, double c) {
    const FunctionalValues v = p.eval_all(u);
    require_nonzero(v);
    const FiberSolution fib =
        solve_fiber_time_values(p.exponents(), p.sign_case(), v.f, v.g, c);
    return -std::pow(fib.t, -p.exponents().s) / v.j_s;
}

double closed_form_lambda_tilde(const ScaledProblem& p, const State& u, double c) {
    const FunctionalValues v = p.eval_all(u);
    require_nonzero(v);
    if (std::abs(v.i_s - 1.0) > 1e-5)
        throw Error("closed-form lambda-tilde requires a sphere state, |I - 1| = " +
                    std::to_string(std::abs(v.i_s - 1.0)));
    return closed_form_lambda_tilde_values(p.exponents(), p.sign_case(), v, c);
}

double nehari_residual(const ScaledProblem& p, const State& v, double c) {
    return nehari_residual_values(p.exponents(), p.eval_F(v), p.eval_G(v), c);
}

double psi_tilde(const ScaledProblem& p, const State& u, double sphere_tol) {
    const FunctionalValues v = p.eval_all(u);
    require_nonzero(v);
    if (std::abs(v.i_s - 1.0) > sphere_tol)
        throw Error("psi_tilde requires a sphere state, |I - 1| = " +
                    std::to_string(std::abs(v.i_s - 1.0)));
    return 1.0 / v.j_s;
}

double psi_quotient(const ScaledProblem& p, const State& u) {
    const FunctionalValues v = p.eval_all(u);
    require_nonzero(v);
    return v.i_s / v.j_s;
}

double pohozaev_residual(const ScaledProblem& p, const State& u, double alpha, double beta,
                         double gamma, double delta) {
    return pohozaev_from_values(p.exponents(), p.eval_all(u), alpha, beta, gamma, delta);
}

double phi_lambda(const ScaledProblem& p, const State& u, double lambda) {
    return phi_lambda_from_values(p.eval_all(u), lambda);
}

State grad_lambda_c(const ScaledProblem& p, const State& u, double c) {
    const FunctionalValues v = p.eval_all(u);
    require_nonzero(v);
    const double lam = lambda_c_from_values(v, c);
    const State dual =
        (p.dual_A(u) - lam * p.dual_B(u) - p.dual_f(u) - p.dual_g(u)) / v.j_s;
    return dual.cwiseQuotient(p.mass());
}

double h_pairing(const ScaledProblem& p, const State& u) {
    const auto& e = p.exponents();
    return (e.s - e.q) * p.pair_f(u, u) - (e.r - e.s) * p.pair_g(u, u);
}

} // namespace nehari
