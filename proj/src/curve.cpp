#include "nehari/curve.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/fiber.hpp"
#include "nehari/formulas.hpp"
#include "nehari/rng.hpp"

namespace nehari {

namespace {

// Sweep starts at the end where minimizers resemble the unconstrained
// eigen-minimizer and walks toward the degenerate boundary.
bool sweep_ascending(SignCase sc) {
    switch (sc) {
        case SignCase::II:
        case SignCase::IV: return false;
        default: return true;
    }
}

} // namespace

Curve trace_curve(const ScaledProblem& p, const std::vector<double>& c_grid,
                  const SolverConfig& cfg, double tol_mono_coeff) {
    if (c_grid.empty()) throw ConfigError("empty energy grid");
    std::vector<double> cs = c_grid;
    std::sort(cs.begin(), cs.end());
    if (std::adjacent_find(cs.begin(), cs.end()) != cs.end())
        throw ConfigError("energy grid entries must be distinct");
    const EnergyInterval interval = p.admissible_energies();
    for (double c : cs)
        if (!interval.contains(c))
            throw ConfigError("energy " + std::to_string(c) +
                              " outside the open admissible interval of case " +
                              to_string(p.sign_case()));

    Curve curve;
    curve.sign_case = p.sign_case();
    curve.problem_fingerprint = p.fingerprint();
    curve.points.resize(cs.size());

    const bool ascending = sweep_ascending(p.sign_case());
    std::optional<State> warm;
    SolverConfig warm_cfg = cfg;
    warm_cfg.restarts = 1;

    for (std::size_t k = 0; k < cs.size(); ++k) {
        const std::size_t idx = ascending ? k : cs.size() - 1 - k;
        const double c = cs[idx];
        CurvePoint& pt = curve.points[idx];
        pt.c = c;
        try {
            MinimizeReport rep;
            if (warm) {
                try {
                    rep = minimize_lambda_tilde(p, c, warm_cfg, warm);
                } catch (const NoConvergenceError&) {
                    rep = minimize_lambda_tilde(p, c, cfg); // fresh multistart fallback
                }
            } else {
                rep = minimize_lambda_tilde(p, c, cfg);
            }
            pt.lambda = rep.value;
            pt.grad_norm = rep.grad_norm;
            pt.fiber_t = solve_fiber_time(p, rep.minimizer, c).t;
            pt.minimizer_ref = static_cast<int>(curve.states.size());
            curve.states.push_back(rep.minimizer);
            pt.ok = true;
            pt.status = "ok";
            warm = rep.minimizer;
        } catch (const Error& err) {
            pt.ok = false;
            pt.status = err.what();
        }
    }

    const CurvePoint* prev = nullptr;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const CurvePoint& pt = curve.points[i];
        if (!pt.ok) continue;
        if (prev) {
            const double tol = tol_mono_coeff * (1.0 + std::abs(prev->lambda));
            if (pt.lambda > prev->lambda + tol)
                curve.monotonicity_violations.push_back(static_cast<int>(i));
        }
        prev = &pt;
    }
    return curve;
}

IntersectResult intersect_with_lambda(const ScaledProblem& p, const Curve& curve,
                                      double lambda_target, const SolverConfig& cfg,
                                      double tol_lambda) {
    std::vector<const CurvePoint*> ok;
    for (const auto& pt : curve.points)
        if (pt.ok) ok.push_back(&pt);
    if (ok.size() < 2) throw ConfigError("intersection needs a curve with at least two points");

    IntersectResult res;
    const double tol = tol_lambda * (1.0 + std::abs(lambda_target));

    double lam_min = ok.front()->lambda, lam_max = ok.front()->lambda;
    for (const auto* pt : ok) {
        lam_min = std::min(lam_min, pt->lambda);
        lam_max = std::max(lam_max, pt->lambda);
    }

    if (lambda_target < lam_min - tol) {
        const SignCase sc = curve.sign_case;
        if (sc == SignCase::II || sc == SignCase::IV) {
            // these curves stay above the first eigenvalue; below it no
            // nontrivial critical point exists at any admissible energy
            res.status = IntersectStatus::CertifiedNonexistence;
            res.message = "target below the curve infimum in case " + to_string(sc) +
                          "; no nontrivial solution with this lambda";
            return res;
        }
        res.status = IntersectStatus::OutOfRange;
        res.message = "target below the sampled curve; extend the sweep toward the "
                      "divergent end";
        return res;
    }
    if (lambda_target > lam_max + tol) {
        res.status = IntersectStatus::OutOfRange;
        res.message = "target above every sampled curve value";
        return res;
    }

    // adjacent bracket: lambda decreases along ascending c
    const CurvePoint* left = nullptr;
    const CurvePoint* right = nullptr;
    for (std::size_t i = 0; i + 1 < ok.size(); ++i) {
        const double hi = ok[i]->lambda, lo = ok[i + 1]->lambda;
        if (lambda_target <= hi + tol && lambda_target >= lo - tol) {
            left = ok[i];
            right = ok[i + 1];
            break;
        }
    }
    if (!left) {
        res.status = IntersectStatus::OutOfRange;
        res.message = "no adjacent sampled pair brackets the target";
        return res;
    }

    SolverConfig warm_cfg = cfg;
    warm_cfg.restarts = 1;
    double c_lo = left->c, c_hi = right->c;
    State warm = curve.states[left->minimizer_ref];
    MinimizeReport rep;
    double c_mid = 0.5 * (c_lo + c_hi);
    for (int it = 0; it < 200; ++it) {
        c_mid = 0.5 * (c_lo + c_hi);
        rep = minimize_lambda_tilde(p, c_mid, warm_cfg, warm);
        ++res.probes;
        warm = rep.minimizer;
        if (std::abs(rep.value - lambda_target) <= tol) break;
        if (rep.value > lambda_target)
            c_lo = c_mid; // lambda decreases in c: move right
        else
            c_hi = c_mid;
        if (std::abs(c_hi - c_lo) <= 1e-14 * std::max(1.0, std::abs(c_mid))) break;
    }
    if (std::abs(rep.value - lambda_target) > tol)
        throw NoConvergenceError("bisection on c stalled at |lambda - target| = " +
                                 std::to_string(std::abs(rep.value - lambda_target)));

    res.status = IntersectStatus::Found;
    res.c_star = c_mid;
    res.lambda_achieved = rep.value;
    res.minimizer = rep.minimizer;
    res.grad_norm = rep.grad_norm;
    res.fiber_t = solve_fiber_time(p, rep.minimizer, c_mid).t;
    res.message = "ok";
    return res;
}

AsymptoteFit fit_asymptote(const Curve& curve, const ScalingExponents& e) {
    std::vector<const CurvePoint*> ok;
    for (const auto& pt : curve.points)
        if (pt.ok) ok.push_back(&pt);
    const int n_tail = std::max<int>(6, static_cast<int>(ok.size()) / 2);
    if (static_cast<int>(ok.size()) < 6)
        throw InsufficientTailError("need at least 6 curve points for an asymptotic fit");

    const SignCase sc = curve.sign_case;
    // asymptotic side: toward |c| -> inf in cases I, II; toward 0 in III, IV;
    // the divergent boundary in the mixed cases
    bool tail_at_front; // front = smallest c after ascending sort
    switch (sc) {
        case SignCase::I: tail_at_front = true; break;   // c -> -inf
        case SignCase::II: tail_at_front = false; break; // c -> +inf
        case SignCase::III: tail_at_front = true; break; // c -> 0+
        case SignCase::IV: tail_at_front = false; break; // c -> 0-
        case SignCase::V: tail_at_front = false; break;  // c -> 0-, divergent
        default: tail_at_front = false; break;           // VI: c -> inf, divergent
    }
    std::vector<const CurvePoint*> tail;
    if (tail_at_front)
        tail.assign(ok.begin(), ok.begin() + n_tail);
    else
        tail.assign(ok.end() - n_tail, ok.end());

    AsymptoteFit fit;
    fit.tail_points = n_tail;

    // gap sign toward the limit: below it in I and III, above it in II and IV
    const bool from_below = (sc == SignCase::I || sc == SignCase::III);
    const bool pure = is_pure_case(sc);
    fit.target_available = pure;
    if (pure)
        fit.predicted_rate = (sc == SignCase::I || sc == SignCase::II)
                                 ? (e.s - e.q) / e.q
                                 : (e.r - e.s) / e.r;

    auto loglog_fit = [&](double limit, double* slope_out) {
        // least squares of log|lambda - limit| on log|c|
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (const auto* pt : tail) {
            const double gap = from_below ? limit - pt->lambda : pt->lambda - limit;
            if (!(gap > 0.0)) return 1e300;
            const double x = std::log(std::abs(pt->c));
            const double y = std::log(gap);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        const double denom = m * sxx - sx * sx;
        if (std::abs(denom) < 1e-30) return 1e300;
        const double b = (m * sxy - sx * sy) / denom;
        const double a = (sy - b * sx) / m;
        double ss = 0.0;
        for (const auto* pt : tail) {
            const double gap = from_below ? limit - pt->lambda : pt->lambda - limit;
            const double d = std::log(gap) - (a + b * std::log(std::abs(pt->c)));
            ss += d * d;
        }
        if (slope_out) *slope_out = b;
        return std::sqrt(ss / m);
    };

    if (!pure) {
        // divergent tail: fit log|lambda| against log|c| directly
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (const auto* pt : tail) {
            if (std::abs(pt->lambda) < 1e-12) continue;
            const double x = std::log(std::abs(pt->c));
            const double y = std::log(std::abs(pt->lambda));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        if (m < 4) throw InsufficientTailError("divergent tail too short for a rate fit");
        const double denom = m * sxx - sx * sx;
        if (std::abs(denom) < 1e-30)
            throw InsufficientTailError("degenerate abscissa in the divergent tail");
        fit.rate = std::abs((m * sxy - sx * sy) / denom);
        fit.limit = 0.0;
        return fit;
    }

    // bracket the limit beyond the most asymptotic value
    double lam_near = from_below ? -1e300 : 1e300; // best (closest to limit) tail value
    double lam_far = from_below ? 1e300 : -1e300;
    for (const auto* pt : tail) {
        if (from_below) {
            lam_near = std::max(lam_near, pt->lambda);
            lam_far = std::min(lam_far, pt->lambda);
        } else {
            lam_near = std::min(lam_near, pt->lambda);
            lam_far = std::max(lam_far, pt->lambda);
        }
    }
    const double span = std::abs(lam_near - lam_far);
    if (span <= 1e-9 * (1.0 + std::abs(lam_near)))
        throw InsufficientTailError("tail is flat; no asymptotic rate is identifiable");

    const double eps = 1e-9 * (1.0 + std::abs(lam_near));
    double lo = from_below ? lam_near + eps : lam_near - 10.0 * span;
    double hi = from_below ? lam_near + 10.0 * span : lam_near - eps;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = loglog_fit(x1, nullptr), f2 = loglog_fit(x2, nullptr);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * (1.0 + std::abs(lam_near)); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = loglog_fit(x1, nullptr);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = loglog_fit(x2, nullptr);
        }
    }
    fit.limit = 0.5 * (lo + hi);
    double slope = 0.0;
    fit.fit_residual = loglog_fit(fit.limit, &slope);
    if (fit.fit_residual >= 1e299)
        throw InsufficientTailError("no admissible limit produced a finite fit");
    fit.rate = std::abs(slope);
    return fit;
}

ScanResult nonexistence_scan(const ScaledProblem& p, double c, int samples, std::uint64_t seed) {
    ScanResult res;
    const EnergyInterval interval = p.admissible_energies();
    res.empty = !interval.contains(c);
    Rng rng(seed);
    if (res.empty) {
        // constraint is sign-definite: every sampled state agrees in sign
        int pos = 0, neg = 0;
        for (int k = 0; k < samples; ++k) {
            const double r = nehari_residual(p, p.random_smooth_state(rng), c);
            (r > 0.0 ? pos : neg)++;
        }
        res.corroborated = (pos == samples) || (neg == samples);
    } else {
        // inside the admissible interval the fiber map produces a member
        try {
            const State u = normalize_to_sphere(p, p.random_smooth_state(rng));
            const State v = scale_to_nehari(p, u, c);
            const auto& e = p.exponents();
            const double scale = (e.s - e.q) * std::abs(p.eval_F(v)) +
                                 (e.r - e.s) * std::abs(p.eval_G(v)) + std::abs(c) * e.s;
            res.corroborated = std::abs(nehari_residual(p, v, c)) <= 1e-8 * scale;
        } catch (const Error&) {
            res.corroborated = false;
        }
    }
    return res;
}

} // namespace nehari
