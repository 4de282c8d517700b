#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nehari/optimizer.hpp"
#include "nehari/problem.hpp"

namespace nehari {

struct CurvePoint {
    double c = 0.0;
    double lambda = 0.0;   // smallest envelope value at this energy
    double grad_norm = 0.0;
    double fiber_t = 0.0;  // fiber time of the minimizer
    int minimizer_ref = -1;
    bool ok = false;
    std::string status;
};

struct Curve {
    SignCase sign_case = SignCase::I;
    std::string problem_fingerprint;
    std::vector<CurvePoint> points; // ordered by c ascending
    std::vector<State> states;      // minimizer snapshots, indexed by minimizer_ref
    std::vector<int> monotonicity_violations;

    int ok_count() const {
        int k = 0;
        for (const auto& pt : points) k += pt.ok;
        return k;
    }
};

/// Sweep the energy grid, minimizing at each c with continuation warm starts.
/// The sweep runs from the benign end of the admissible interval toward the
/// degenerate boundary; failed points are marked and skipped. Adjacent pairs
/// violating monotonicity beyond tol_mono_coeff (1 + |lambda|) are recorded.
Curve trace_curve(const ScaledProblem& p, const std::vector<double>& c_grid,
                  const SolverConfig& cfg, double tol_mono_coeff = 1e-4);

enum class IntersectStatus { Found, CertifiedNonexistence, OutOfRange };

struct IntersectResult {
    IntersectStatus status = IntersectStatus::OutOfRange;
    double c_star = 0.0;
    double lambda_achieved = 0.0;
    State minimizer;     // sphere state at c_star
    double fiber_t = 0.0;
    double grad_norm = 0.0;
    int probes = 0;
    std::string message;
};

/// Locate c with lambda_{c,1} = lambda_target by bisection on c, re-solving at
/// each probe. Returns CertifiedNonexistence when the target lies at or below
/// the curve infimum in the cases whose curves stay above the first
/// eigenvalue; OutOfRange when the sampled sweep does not bracket the target.
IntersectResult intersect_with_lambda(const ScaledProblem& p, const Curve& curve,
                                      double lambda_target, const SolverConfig& cfg,
                                      double tol_lambda = 1e-8);

struct AsymptoteFit {
    double limit = 0.0;          // fitted asymptotic level (0 for divergent fits)
    double rate = 0.0;           // fitted |d log gap / d log c|
    double predicted_rate = 0.0; // case prediction, 0 when none exists
    bool target_available = false;
    int tail_points = 0;
    double fit_residual = 0.0;   // rms residual of the log-log fit
};

/// Least-squares fit of log|lambda - limit| against log|c| on the asymptotic
/// tail. Pure cases fit the finite limit and compare against the predicted
/// exponent ((s-q)/q or (r-s)/r); mixed cases fit the divergence rate only.
AsymptoteFit fit_asymptote(const Curve& curve, const ScalingExponents& e);

struct ScanResult {
    bool empty = false;        // constraint set certified empty at this energy
    bool corroborated = false; // sampling agreed with the sign analysis
};

/// Nehari-set emptiness test at energy c: empty outside the open admissible
/// interval (the constraint is sign-definite there), corroborated by sampling;
/// inside, a member is constructed through the fiber map.
ScanResult nonexistence_scan(const ScaledProblem& p, double c, int samples = 100,
                             std::uint64_t seed = 12345);

} // namespace nehari
