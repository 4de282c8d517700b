#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nehari/fiber.hpp"
#include "nehari/problem.hpp"

namespace nehari {

struct SolverConfig {
    int max_iters = 5000;
    double grad_tol = 1e-8;   // on the tangent gradient, relative to max(1, |value|)
    double step = 1.0;        // initial trial step
    double backtrack = 0.5;   // Armijo backtracking factor in (0, 1)
    double armijo_c = 1e-4;
    int restarts = 8;
    std::uint64_t rng_seed = 12345;
    int workers = 1;
    double coercivity_ceiling = 1e6; // native-norm guard while the value stays bounded
    int stall_iters = 50;            // consecutive negligible decreases before giving up
    double stall_rel = 1e-13;
    bool record_history = false;

    void validate() const;
};

struct MinimizeReport {
    State minimizer;      // sphere state
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    int restarts_used = 0;
    std::vector<std::string> diagnostics;
    std::vector<double> history; // per-iteration values when recorded
};

/// Smallest value of 1/J on the sphere {I = 1} by projected descent of the
/// quotient I/J, multistart over random smooth initial states.
MinimizeReport minimize_psi(const ScaledProblem& p, const SolverConfig& cfg);

/// Smallest envelope value Lambda-tilde_c on the sphere. The gradient uses the
/// envelope property: the fiber time is stationary, so only the explicit
/// dependence on u differentiates. An optional warm start seeds the first
/// restart (the remaining ones stay random).
MinimizeReport minimize_lambda_tilde(const ScaledProblem& p, double c, const SolverConfig& cfg,
                                     const std::optional<State>& warm_start = std::nullopt);

struct VerifyTolerances {
    double weak = 1e-5;
    double nehari = 1e-5;
    double pohozaev = 1e-5;
    double energy = 1e-5;
    double h_floor = 1e-10;
};

/// Candidate critical point with its residual diagnostics. Residuals are
/// stored with the scale they are measured against; acceptance compares
/// residual <= tol * scale.
struct SolutionReport {
    State state;
    double lambda = 0.0;
    double c = 0.0;
    double weak_residual = 0.0;
    double weak_scale = 0.0;
    double nehari_residual = 0.0;
    double nehari_scale = 0.0;
    double pohozaev_residual = 0.0;
    double pohozaev_scale = 0.0;
    double energy_residual = 0.0;
    double energy_scale = 0.0;
    double h_pairing = 0.0;
    bool accepted = false;
    std::vector<std::string> flags;
};

/// Residual battery for a claimed solution pair (lambda, c) at state v:
/// weak form over the full hat-probe basis plus v itself, Nehari constraint,
/// Pohozaev combination, prescribed energy, and the degeneracy pairing.
SolutionReport verify_solution(const ScaledProblem& p, const State& v, double lambda, double c,
                               const VerifyTolerances& tol = {});

} // namespace nehari
