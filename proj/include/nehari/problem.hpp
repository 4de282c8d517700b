#pragma once

#include <Eigen/Core>
#include <string>

#include "nehari/scaling.hpp"

namespace nehari {

/// Discretized function: nodal values on the problem's grid.
using State = Eigen::VectorXd;

/// A scaled variational problem: four potentials (I, J, F, G) with homogeneity
/// degrees (s, s, q, r) under a scaling action, their derivative operators, and
/// the discrete inner product. Immutable after construction; all evaluations
/// are pure, so instances can be shared across threads.
///
/// Derivatives are "dual vectors": nodal coefficients d with dI(u)[v] = d.dot(v)
/// for every direction v. They are exact derivatives of the discrete functionals,
/// not discretizations of continuum operators, so finite-difference checks hold
/// to roundoff.
class ScaledProblem {
public:
    virtual ~ScaledProblem() = default;

    const ScalingExponents& exponents() const { return exps_; }
    SignCase sign_case() const { return case_; }
    EnergyInterval admissible_energies() const { return admissible_energy_interval(case_); }

    virtual int dim() const = 0;
    virtual std::string name() const = 0;
    /// Stable textual identity of problem + discretization (for sidecar files).
    virtual std::string fingerprint() const = 0;
    /// Grid coordinates and their CSV column label ("r" or "x").
    virtual const Eigen::VectorXd& coordinates() const = 0;
    virtual std::string coordinate_label() const = 0;

    virtual double eval_I(const State& u) const = 0;
    virtual double eval_J(const State& u) const = 0;
    virtual double eval_F(const State& u) const = 0;
    virtual double eval_G(const State& u) const = 0;
    virtual FunctionalValues eval_all(const State& u) const {
        return {eval_I(u), eval_J(u), eval_F(u), eval_G(u)};
    }

    virtual State dual_A(const State& u) const = 0;
    virtual State dual_B(const State& u) const = 0;
    virtual State dual_f(const State& u) const = 0;
    virtual State dual_g(const State& u) const = 0;

    double pair_A(const State& u, const State& v) const { return dual_A(u).dot(v); }
    double pair_B(const State& u, const State& v) const { return dual_B(u).dot(v); }
    double pair_f(const State& u, const State& v) const { return dual_f(u).dot(v); }
    double pair_g(const State& u, const State& v) const { return dual_g(u).dot(v); }

    /// Scaling action (u, t) -> u_t, linear in u, with u_1 = u and u_0 = 0.
    virtual State scale(const State& u, double t) const = 0;

    /// Declared relative tolerance of the degree identities under scale():
    /// zero interpolation error for exact actions, resampling error otherwise.
    virtual double scaling_rel_tol() const = 0;

    /// Diagonal quadrature masses defining the discrete L2 inner product.
    virtual const Eigen::VectorXd& mass() const = 0;

    double inner(const State& a, const State& b) const {
        return (mass().array() * a.array() * b.array()).sum();
    }
    double norm(const State& a) const { return std::sqrt(inner(a, a)); }

    /// Riesz representative of a dual vector in the optimizer's descent metric
    /// (a discrete H1 product by default in the implementations).
    virtual State metric_solve(const State& dual) const = 0;

    /// Norm used for coercivity diagnostics (the model's native energy norm).
    virtual double norm_native(const State& u) const { return norm(u); }

    /// Random smooth nonzero state, used by samplers and multistart.
    virtual State random_smooth_state(class Rng& rng) const = 0;

protected:
    ScaledProblem(ScalingExponents exps, SignCase sc) : exps_(exps), case_(sc) {}

    ScalingExponents exps_;
    SignCase case_;
};

} // namespace nehari
