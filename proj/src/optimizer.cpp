#include "nehari/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "nehari/formulas.hpp"
#include "nehari/rng.hpp"

namespace nehari {

void SolverConfig::validate() const {
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(grad_tol > 0.0)) throw ConfigError("grad_tol must be positive");
    if (!(backtrack > 0.0 && backtrack < 1.0)) throw ConfigError("backtrack factor in (0, 1)");
    if (restarts < 1) throw ConfigError("restarts must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
}

namespace {

// Objective on the sphere: value and the dual (nodal) derivative vector.
struct Objective {
    virtual ~Objective() = default;
    virtual double value(const FunctionalValues& v) const = 0;
    virtual State dual(const ScaledProblem& p, const State& u, const FunctionalValues& v,
                       double value) const = 0;
};

struct PsiObjective final : Objective {
    double value(const FunctionalValues& v) const override { return v.i_s / v.j_s; }
    State dual(const ScaledProblem& p, const State& u, const FunctionalValues& v,
               double val) const override {
        return (p.dual_A(u) - val * p.dual_B(u)) / v.j_s;
    }
};

struct LambdaTildeObjective final : Objective {
    explicit LambdaTildeObjective(double c_) : c(c_) {}
    double c;
    mutable double t = 1.0; // fiber time of the latest evaluation

    double value(const FunctionalValues& v) const override {
        const auto& e = exps;
        t = solve_fiber_time_values(e, sc, v.f, v.g, c).t;
        return lambda_tilde_full(e, v, c, t);
    }
    State dual(const ScaledProblem& p, const State& u, const FunctionalValues& v,
               double val) const override {
        // envelope derivative: the t-variation vanishes at the fiber root
        const auto& e = exps;
        State d = p.dual_A(u) - val * p.dual_B(u);
        if (v.f != 0.0) d -= std::pow(t, e.q - e.s) * p.dual_f(u);
        if (v.g != 0.0) d -= std::pow(t, e.r - e.s) * p.dual_g(u);
        return d / v.j_s;
    }

    ScalingExponents exps;
    SignCase sc = SignCase::I;
};

struct RestartResult {
    MinimizeReport report;
    bool valid = false;
};

RestartResult run_descent(const ScaledProblem& p, const Objective& obj, const State& init,
                          const SolverConfig& cfg) {
    RestartResult out;
    MinimizeReport& rep = out.report;

    State u;
    try {
        u = normalize_to_sphere(p, init, 1e-11);
    } catch (const Error&) {
        return out;
    }

    FunctionalValues vals = p.eval_all(u);
    double f = obj.value(vals);
    State rho = obj.dual(p, u, vals, f);
    State nd = p.dual_A(u); // constraint normal in the dual

    double alpha = cfg.step;
    double alpha_ref = cfg.step;
    State prev_u, prev_rho;
    bool have_prev = false;
    bool coercivity_flagged = false;
    int stalled = 0;

    if (cfg.record_history) rep.history.push_back(f);

    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        // tangent projection of the metric gradient
        const State g = p.metric_solve(rho);
        const State n = p.metric_solve(nd);
        const double nn = nd.dot(n);
        if (!(nn > 0.0)) break;
        const State gt = g - (nd.dot(g) / nn) * n;
        const double gn2 = std::max(0.0, rho.dot(gt));
        const double gn = std::sqrt(gn2);
        rep.grad_norm = gn;

        if (gn <= cfg.grad_tol * std::max(1.0, std::abs(f))) {
            rep.converged = true;
            break;
        }

        // BB step from the previous accepted move, Armijo backtracking; growth
        // is capped relative to the last accepted step so a wild proposal
        // cannot burn the whole backtracking budget
        if (have_prev) {
            const State du = u - prev_u;
            const State drho = rho - prev_rho;
            const double num = drho.dot(du);
            const double den = drho.dot(p.metric_solve(drho));
            if (num > 0.0 && den > 0.0) alpha = std::clamp(num / den, 1e-12, 1e6);
        }
        alpha = std::min(alpha, 1e3 * alpha_ref);

        bool accepted = false;
        State u_trial;
        double f_trial = f;
        FunctionalValues vals_trial;
        for (int bt = 0; bt < 60; ++bt) {
            try {
                u_trial = normalize_to_sphere(p, u - alpha * gt, 1e-11);
                vals_trial = p.eval_all(u_trial);
                f_trial = obj.value(vals_trial);
            } catch (const Error&) {
                alpha *= cfg.backtrack;
                continue;
            }
            if (f_trial <= f - cfg.armijo_c * alpha * gn2) {
                accepted = true;
                break;
            }
            alpha *= cfg.backtrack;
        }
        if (!accepted) break; // line search exhausted at this accuracy
        alpha_ref = std::max(alpha, 1e-14);

        const double decrease = f - f_trial;
        if (decrease <= cfg.stall_rel * (1.0 + std::abs(f))) {
            if (++stalled >= cfg.stall_iters) {
                rep.diagnostics.push_back("descent stalled before reaching the tolerance");
                break;
            }
        } else {
            stalled = 0;
        }

        prev_u = u;
        prev_rho = rho;
        have_prev = true;
        u = u_trial;
        vals = vals_trial;
        f = f_trial;
        rho = obj.dual(p, u, vals, f);
        nd = p.dual_A(u);

        if (cfg.record_history) rep.history.push_back(f);
        if (!coercivity_flagged && p.norm_native(u) > cfg.coercivity_ceiling &&
            std::abs(f) < 1e12) {
            rep.diagnostics.push_back("coercivity guard: iterate norm exceeded ceiling while "
                                      "the objective stayed bounded");
            coercivity_flagged = true;
        }
    }

    rep.minimizer = u;
    rep.value = f;
    rep.iterations = iter;
    out.valid = true;
    return out;
}

MinimizeReport minimize_multistart(const ScaledProblem& p, const Objective& obj,
                                   const SolverConfig& cfg,
                                   const std::optional<State>& warm_start) {
    cfg.validate();

    auto make_init = [&](int r) -> State {
        if (warm_start && r == 0) return *warm_start;
        Rng rng(cfg.rng_seed + 1000003ULL * static_cast<std::uint64_t>(r));
        return p.random_smooth_state(rng);
    };

    std::vector<RestartResult> results(cfg.restarts);
    if (cfg.workers > 1) {
        std::vector<std::future<RestartResult>> futs;
        futs.reserve(cfg.restarts);
        for (int r = 0; r < cfg.restarts; ++r)
            futs.push_back(std::async(std::launch::async,
                                      [&, r] { return run_descent(p, obj, make_init(r), cfg); }));
        for (int r = 0; r < cfg.restarts; ++r) results[r] = futs[r].get();
    } else {
        for (int r = 0; r < cfg.restarts; ++r) results[r] = run_descent(p, obj, make_init(r), cfg);
    }

    // best value among converged restarts; stalled ones only contribute a note
    int best = -1;
    double loose_best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < cfg.restarts; ++r) {
        if (!results[r].valid) continue;
        const auto& rep = results[r].report;
        loose_best = std::min(loose_best, rep.value);
        if (!rep.converged) continue;
        if (best < 0 || rep.value < results[best].report.value) best = r;
    }
    if (best < 0)
        throw NoConvergenceError("no restart met the gradient tolerance (best stalled value " +
                                 std::to_string(loose_best) + ")");

    MinimizeReport rep = std::move(results[best].report);
    rep.restarts_used = cfg.restarts;
    if (loose_best < rep.value - 1e-10 * (1.0 + std::abs(rep.value)))
        rep.diagnostics.push_back("a non-converged restart reported a lower value");
    return rep;
}

} // namespace

MinimizeReport minimize_psi(const ScaledProblem& p, const SolverConfig& cfg) {
    PsiObjective obj;
    return minimize_multistart(p, obj, cfg, std::nullopt);
}

MinimizeReport minimize_lambda_tilde(const ScaledProblem& p, double c, const SolverConfig& cfg,
                                     const std::optional<State>& warm_start) {
    require_admissible_energy(p.sign_case(), c);
    LambdaTildeObjective obj(c);
    obj.exps = p.exponents();
    obj.sc = p.sign_case();
    return minimize_multistart(p, obj, cfg, warm_start);
}

namespace {

// max_w |d . w| / ||w|| over the hat probes and the state itself
double probe_dual_norm(const ScaledProblem& p, const State& d, const State& v, double v_norm) {
    const Eigen::VectorXd& m = p.mass();
    double best = (d.array().abs() / m.array().sqrt()).maxCoeff();
    if (v_norm > 0.0) best = std::max(best, std::abs(d.dot(v)) / v_norm);
    return best;
}

} // namespace

SolutionReport verify_solution(const ScaledProblem& p, const State& v, double lambda, double c,
                               const VerifyTolerances& tol) {
    SolutionReport rep;
    rep.state = v;
    rep.lambda = lambda;
    rep.c = c;

    const FunctionalValues vals = p.eval_all(v);
    if (!(vals.i_s > kZeroStateTol) || !(vals.j_s > kZeroStateTol)) {
        rep.flags.push_back("ZeroState");
        return rep;
    }
    const auto& e = p.exponents();
    const double v_norm = p.norm(v);

    const State da = p.dual_A(v);
    const State db = p.dual_B(v);
    const State df = p.dual_f(v);
    const State dg = p.dual_g(v);
    const State weak = da - lambda * db - df - dg;
    rep.weak_residual = probe_dual_norm(p, weak, v, v_norm);
    rep.weak_scale = probe_dual_norm(p, da, v, v_norm) +
                     std::abs(lambda) * probe_dual_norm(p, db, v, v_norm) +
                     probe_dual_norm(p, df, v, v_norm) + probe_dual_norm(p, dg, v, v_norm);

    rep.nehari_residual = std::abs(nehari_residual_values(e, vals.f, vals.g, c));
    rep.nehari_scale = (e.s - e.q) * std::abs(vals.f) + (e.r - e.s) * std::abs(vals.g) +
                       std::abs(c) * e.s;

    rep.pohozaev_residual = std::abs(pohozaev_from_values(e, vals, 1.0, lambda, 1.0, 1.0));
    rep.pohozaev_scale = e.s * std::abs(vals.i_s) + e.s * std::abs(lambda) * vals.j_s +
                         e.q * std::abs(vals.f) + e.r * std::abs(vals.g);

    rep.energy_residual = std::abs(phi_lambda_from_values(vals, lambda) - c);
    rep.energy_scale = std::abs(vals.i_s) + std::abs(lambda) * vals.j_s + std::abs(vals.f) +
                       std::abs(vals.g) + std::abs(c);

    rep.h_pairing = (e.s - e.q) * df.dot(v) - (e.r - e.s) * dg.dot(v);

    const bool weak_ok = rep.weak_residual <= tol.weak * rep.weak_scale;
    const bool nehari_ok = rep.nehari_residual <= tol.nehari * std::max(rep.nehari_scale, 1e-30);
    const bool poho_ok = rep.pohozaev_residual <= tol.pohozaev * rep.pohozaev_scale;
    const bool energy_ok = rep.energy_residual <= tol.energy * rep.energy_scale;
    const bool h_ok = std::abs(rep.h_pairing) > tol.h_floor * v_norm;
    if (!weak_ok) rep.flags.push_back("WeakResidual");
    if (!nehari_ok) rep.flags.push_back("NehariResidual");
    if (!poho_ok) rep.flags.push_back("PohozaevResidual");
    if (!energy_ok) rep.flags.push_back("EnergyResidual");
    if (!h_ok) rep.flags.push_back("DegeneratePairing");
    rep.accepted = weak_ok && nehari_ok && poho_ok && energy_ok && h_ok;
    return rep;
}

} // namespace nehari
