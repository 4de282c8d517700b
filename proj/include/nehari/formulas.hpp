#pragma once

#include <utility>

#include "nehari/fiber.hpp"
#include "nehari/problem.hpp"

namespace nehari {

// ---------------------------------------------------------------------------
// Value layer: every curve quantity as a pure function of functional values.
// ---------------------------------------------------------------------------

/// lambda such that Phi_lambda(u) = c, i.e. (I - F - G - c) / J.
inline double lambda_c_from_values(const FunctionalValues& v, double c) {
    return (v.i_s - v.f - v.g - c) / v.j_s;
}

/// Phi_lambda(u) = I - lambda J - F - G.
inline double phi_lambda_from_values(const FunctionalValues& v, double lambda) {
    return v.i_s - lambda * v.j_s - v.f - v.g;
}

/// Nehari constraint value (s - q) F - (r - s) G + c s; zero on the manifold.
inline double nehari_residual_values(const ScalingExponents& e, double F, double G, double c) {
    return (e.s - e.q) * F - (e.r - e.s) * G + c * e.s;
}

/// lambda_c rewritten through the Nehari constraint:
/// ((r - s) I - (r - q) F - c r) / ((r - s) J). Coincides with
/// lambda_c_from_values exactly on the constraint set.
inline double big_lambda_from_values(const ScalingExponents& e, const FunctionalValues& v,
                                     double c) {
    return ((e.r - e.s) * v.i_s - (e.r - e.q) * v.f - c * e.r) / ((e.r - e.s) * v.j_s);
}

/// Pohozaev-type combination s a I - s b J - q g F - r d G; vanishes at any
/// solution of a A(u) = b B(u) + g f(u) + d g(u).
inline double pohozaev_from_values(const ScalingExponents& e, const FunctionalValues& v,
                                   double alpha, double beta, double gamma, double delta) {
    return e.s * alpha * v.i_s - e.s * beta * v.j_s - e.q * gamma * v.f - e.r * delta * v.g;
}

/// Lambda-tilde at a solved fiber time t, direct form:
/// (I - t^(q-s) F - t^(r-s) G - c t^(-s)) / J.
inline double lambda_tilde_full(const ScalingExponents& e, const FunctionalValues& v, double c,
                                double t) {
    return (v.i_s - std::pow(t, e.q - e.s) * v.f - std::pow(t, e.r - e.s) * v.g -
            c * std::pow(t, -e.s)) /
           v.j_s;
}

/// Same value with the G-term eliminated through the fiber equation:
/// ((r - s) I - (r - q) t^(q-s) F - c r t^(-s)) / ((r - s) J).
inline double lambda_tilde_no_g(const ScalingExponents& e, const FunctionalValues& v, double c,
                                double t) {
    return ((e.r - e.s) * v.i_s - (e.r - e.q) * std::pow(t, e.q - e.s) * v.f -
            c * e.r * std::pow(t, -e.s)) /
           ((e.r - e.s) * v.j_s);
}

/// Same value with the c-term eliminated through the fiber equation:
/// (s I - q t^(q-s) F - r t^(r-s) G) / (s J).
inline double lambda_tilde_no_c(const ScalingExponents& e, const FunctionalValues& v, double t) {
    return (e.s * v.i_s - e.q * std::pow(t, e.q - e.s) * v.f -
            e.r * std::pow(t, e.r - e.s) * v.g) /
           (e.s * v.j_s);
}

/// Closed-form lambda-tilde for the pure cases (no root solve). A sphere
/// formula: expects i_s = 1, where psi = i_s / j_s reduces to 1 / j_s.
double closed_form_lambda_tilde_values(const ScalingExponents& e, SignCase sc,
                                       const FunctionalValues& v, double c);

// ---------------------------------------------------------------------------
// Problem layer.
// ---------------------------------------------------------------------------

inline constexpr double kZeroStateTol = 1e-300;

inline void require_nonzero(const FunctionalValues& v) {
    if (!(v.i_s > kZeroStateTol) || !(v.j_s > kZeroStateTol)) throw ZeroStateError();
}

/// Projection onto the sphere {I = 1}: t_u = I(u)^(-1/s), pi(u) = scale(u, t_u).
std::pair<double, State> project_to_sphere(const ScaledProblem& p, const State& u);

/// Iterated projection; drives |I(u) - 1| below tol even for resampling
/// actions whose degree laws hold only approximately.
State normalize_to_sphere(const ScaledProblem& p, const State& u, double tol = 1e-12,
                          int max_iter = 30);

/// lambda_c(u) = (I - F - G - c) / J.
double lambda_c_value(const ScaledProblem& p, const State& u, double c);

/// lambda_c through the Nehari-reduced expression; requires u on the manifold.
double big_lambda_c(const ScaledProblem& p, const State& v, double c,
                    double tol_nehari = 1e-8);

/// Envelope value Lambda-tilde_c(u) = lambda_c(u_{t_c(u)}) with its fiber data.
std::pair<double, FiberSolution> lambda_tilde(const ScaledProblem& p, const State& u, double c);

/// d/dc of lambda_tilde: -t_c(u)^(-s) / J(u), strictly negative.
double dlambda_tilde_dc(const ScaledProblem& p, const State& u, double c);

/// Closed-form envelope value; pure cases only.
double closed_form_lambda_tilde(const ScaledProblem& p, const State& u, double c);

/// Nehari constraint value of a state.
double nehari_residual(const ScaledProblem& p, const State& v, double c);

/// 1 / J(u) on the sphere (requires |I(u) - 1| <= tol).
double psi_tilde(const ScaledProblem& p, const State& u, double sphere_tol = 1e-6);

/// Scale-invariant quotient I(u) / J(u); equals psi_tilde on the sphere.
double psi_quotient(const ScaledProblem& p, const State& u);

/// Pohozaev combination for arbitrary coefficients.
double pohozaev_residual(const ScaledProblem& p, const State& u, double alpha, double beta,
                         double gamma, double delta);

/// Phi_lambda(u).
double phi_lambda(const ScaledProblem& p, const State& u, double lambda);

/// Riesz representative (in the problem's L2 metric) of the derivative of
/// lambda_c at u: [A(u) - lambda_c(u) B(u) - f(u) - g(u)] / J(u).
State grad_lambda_c(const ScaledProblem& p, const State& u, double c);

/// (s - q) f(u)u - (r - s) g(u)u, the pairing used for the degeneracy check.
double h_pairing(const ScaledProblem& p, const State& u);

} // namespace nehari
