#pragma once

#include <Eigen/SparseCholesky>
#include <memory>

#include "nehari/problem.hpp"
#include "nehari/radial_grid.hpp"

namespace nehari {

/// Local nonlinearity configuration: exponent windows sigma in (18/7, 3),
/// tau in (3, 6); a zero sign marks the term as absent. Exactly the six
/// admissible sign patterns are accepted.
struct SpsNonlinearity {
    double sigma = 2.7;
    double tau = 4.0;
    int sign_sigma = +1;
    int sign_tau = 0;

    SignCase sign_case() const;
    void validate() const;
};

/// Radial Schrodinger-Poisson-Slater model on a log grid. The scaling action
/// is u_t(x) = t^2 u(t x); degrees are s = 3, q = 2 sigma - 3, r = 2 tau - 3.
/// I carries the gradient and Coulomb energies, J the cubic term, F and G the
/// signed local nonlinearities.
class SpsProblem : public ScaledProblem {
public:
    SpsProblem(SpsNonlinearity nl, std::shared_ptr<const RadialGrid> grid);
    SpsProblem(SpsNonlinearity nl, int n = 1024, double r_min = 1e-3, double r_max = 60.0);

    const RadialGrid& grid() const { return *grid_; }
    const SpsNonlinearity& nonlinearity() const { return nl_; }

    int dim() const override { return grid_->size(); }
    std::string name() const override { return "sps"; }
    std::string fingerprint() const override;
    const Eigen::VectorXd& coordinates() const override { return grid_->nodes(); }
    std::string coordinate_label() const override { return "r"; }

    /// int |grad u|^2 dx over R^3 for the radial state.
    double dirichlet_energy(const State& u) const;
    /// Double Coulomb integral D(u) = iint u^2(x) u^2(y) / |x - y|.
    double coulomb_energy(const State& u) const;
    /// Energy-space norm [int |grad u|^2 + D(u)^(1/2)]^(1/2).
    double norm_E(const State& u) const;

    double eval_I(const State& u) const override;
    double eval_J(const State& u) const override;
    double eval_F(const State& u) const override;
    double eval_G(const State& u) const override;
    FunctionalValues eval_all(const State& u) const override;

    State dual_A(const State& u) const override;
    State dual_B(const State& u) const override;
    State dual_f(const State& u) const override;
    State dual_g(const State& u) const override;

    State scale(const State& u, double t) const override;
    double scaling_rel_tol() const override { return scaling_rel_tol_; }

    const Eigen::VectorXd& mass() const override { return grid_->volume_weights(); }
    State metric_solve(const State& dual) const override;
    double norm_native(const State& u) const override { return norm_E(u); }
    State random_smooth_state(Rng& rng) const override;

    /// Residuals of the tested-with-u identity and of the rescaling identity
    /// for the four-coefficient equation alpha A(u) = beta B(u)
    /// + gamma |u|^(sigma-2) u + delta |u|^(tau-2) u (raw coefficients).
    std::pair<double, double> pohozaev_check(const State& u, double alpha, double beta,
                                             double gamma, double delta) const;

private:
    void check_dim(const State& u) const;

    SpsNonlinearity nl_;
    std::shared_ptr<const RadialGrid> grid_;
    double scaling_rel_tol_;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> metric_llt_;
};

} // namespace nehari
