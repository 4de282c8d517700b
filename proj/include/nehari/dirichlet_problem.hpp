#pragma once

#include <Eigen/SparseCholesky>
#include <utility>

#include "nehari/problem.hpp"

namespace nehari {

/// One-dimensional Dirichlet model -u'' = lambda u + mu |u|^(sigma-2) u
/// + nu |u|^(tau-2) u on (0, 1), discretized on n interior nodes with the
/// standard scaling (u, t) -> t u. Degrees are s = 2, q = sigma, r = tau;
/// the scaling action is exact, so every degree identity holds to roundoff.
struct DirichletParams {
    double sigma = 1.5;
    double tau = 4.0;
    double mu = 1.0;
    double nu = 0.0;
    double tau_cap = 6.0;

    SignCase sign_case() const;
    void validate() const;
};

class DirichletProblem : public ScaledProblem {
public:
    explicit DirichletProblem(DirichletParams prm, int n_interior = 511);

    int dim() const override { return n_; }
    double spacing() const { return h_; }
    std::string name() const override { return "dirichlet-1d"; }
    std::string fingerprint() const override;
    const Eigen::VectorXd& coordinates() const override { return x_; }
    std::string coordinate_label() const override { return "x"; }
    const DirichletParams& params() const { return prm_; }

    double eval_I(const State& u) const override;
    double eval_J(const State& u) const override;
    double eval_F(const State& u) const override;
    double eval_G(const State& u) const override;

    State dual_A(const State& u) const override;
    State dual_B(const State& u) const override;
    State dual_f(const State& u) const override;
    State dual_g(const State& u) const override;

    State scale(const State& u, double t) const override;
    double scaling_rel_tol() const override { return 1e-13; }

    const Eigen::VectorXd& mass() const override { return mass_; }
    State metric_solve(const State& dual) const override;
    State random_smooth_state(Rng& rng) const override;

    /// Pohozaev combination with the model's exponents; for the standard
    /// scaling this is the tested-with-u identity.
    double pohozaev_check(const State& u, double alpha, double beta, double gamma,
                          double delta) const;

private:
    void check_dim(const State& u) const;

    DirichletParams prm_;
    int n_;
    double h_;
    Eigen::VectorXd x_;
    Eigen::VectorXd mass_;
    Eigen::SparseMatrix<double> K_;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> metric_llt_;
};

/// Smallest Rayleigh quotient (int u'^2) / (int u^2) of the discrete Dirichlet
/// Laplacian, by dense symmetric eigensolve. Returns the eigenvalue and the
/// unit-norm eigenvector.
std::pair<double, State> rayleigh_lambda1(const DirichletProblem& p);

} // namespace nehari
