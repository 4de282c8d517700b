#include "nehari/dirichlet_problem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "nehari/formulas.hpp"
#include "nehari/rng.hpp"

namespace nehari {

namespace {

constexpr double kInactiveSigma = 1.5;
constexpr double kInactiveTau = 4.0;

ScalingExponents dirichlet_exponents(const DirichletParams& p) {
    const double q = p.mu != 0.0 ? p.sigma : kInactiveSigma;
    const double r = p.nu != 0.0 ? p.tau : kInactiveTau;
    return {2.0, q, r};
}

} // namespace

SignCase DirichletParams::sign_case() const {
    if (mu > 0.0 && nu == 0.0) return SignCase::I;
    if (mu < 0.0 && nu == 0.0) return SignCase::II;
    if (mu == 0.0 && nu > 0.0) return SignCase::III;
    if (mu == 0.0 && nu < 0.0) return SignCase::IV;
    if (mu > 0.0 && nu < 0.0) return SignCase::V;
    if (mu < 0.0 && nu > 0.0) return SignCase::VI;
    throw ConfigError("coefficients (mu, nu) must be nonzero with mu nu <= 0");
}

void DirichletParams::validate() const {
    sign_case();
    if (mu * nu > 0.0) throw ConfigError("need mu nu <= 0");
    if (mu != 0.0 && !(sigma > 1.0 && sigma < 2.0))
        throw ConfigError("sigma=" + std::to_string(sigma) + " outside (1, 2)");
    if (nu != 0.0 && !(tau > 2.0 && tau <= tau_cap))
        throw ConfigError("tau=" + std::to_string(tau) + " outside (2, " +
                          std::to_string(tau_cap) + "]");
}

DirichletProblem::DirichletProblem(DirichletParams prm, int n_interior)
    : ScaledProblem(dirichlet_exponents(prm), prm.sign_case()), prm_(prm), n_(n_interior) {
    prm_.validate();
    if (n_ < 63) throw ConfigError("interval grid needs n >= 63 interior nodes");
    h_ = 1.0 / (n_ + 1);
    x_.resize(n_);
    for (int i = 0; i < n_; ++i) x_(i) = (i + 1) * h_;
    mass_ = Eigen::VectorXd::Constant(n_, h_);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * n_);
    for (int i = 0; i < n_; ++i) {
        trip.emplace_back(i, i, 2.0 / h_);
        if (i > 0) trip.emplace_back(i, i - 1, -1.0 / h_);
        if (i + 1 < n_) trip.emplace_back(i, i + 1, -1.0 / h_);
    }
    K_.resize(n_, n_);
    K_.setFromTriplets(trip.begin(), trip.end());

    Eigen::SparseMatrix<double> H = K_;
    for (int i = 0; i < n_; ++i) H.coeffRef(i, i) += h_;
    metric_llt_.compute(H);
}

std::string DirichletProblem::fingerprint() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "dirichlet-1d;sigma=%.17g;tau=%.17g;mu=%.17g;nu=%.17g;n=%d", prm_.sigma,
                  prm_.tau, prm_.mu, prm_.nu, n_);
    return buf;
}

void DirichletProblem::check_dim(const State& u) const {
    if (u.size() != n_)
        throw GridMismatchError("state has " + std::to_string(u.size()) + " nodes, grid has " +
                                std::to_string(n_));
}

double DirichletProblem::eval_I(const State& u) const {
    check_dim(u);
    double s = u(0) * u(0) + u(n_ - 1) * u(n_ - 1); // boundary panels against u = 0
    for (int i = 0; i + 1 < n_; ++i) {
        const double d = u(i + 1) - u(i);
        s += d * d;
    }
    return 0.5 * s / h_;
}

double DirichletProblem::eval_J(const State& u) const {
    check_dim(u);
    return 0.5 * h_ * u.squaredNorm();
}

double DirichletProblem::eval_F(const State& u) const {
    if (prm_.mu == 0.0) return 0.0;
    check_dim(u);
    return prm_.mu / prm_.sigma * h_ * u.array().abs().pow(prm_.sigma).sum();
}

double DirichletProblem::eval_G(const State& u) const {
    if (prm_.nu == 0.0) return 0.0;
    check_dim(u);
    return prm_.nu / prm_.tau * h_ * u.array().abs().pow(prm_.tau).sum();
}

State DirichletProblem::dual_A(const State& u) const {
    check_dim(u);
    return K_ * u;
}

State DirichletProblem::dual_B(const State& u) const {
    check_dim(u);
    return h_ * u;
}

State DirichletProblem::dual_f(const State& u) const {
    if (prm_.mu == 0.0) return State::Zero(n_);
    check_dim(u);
    return (prm_.mu * h_ * u.array().abs().pow(prm_.sigma - 1.0) * u.array().sign()).matrix();
}

State DirichletProblem::dual_g(const State& u) const {
    if (prm_.nu == 0.0) return State::Zero(n_);
    check_dim(u);
    return (prm_.nu * h_ * u.array().abs().pow(prm_.tau - 1.0) * u.array().sign()).matrix();
}

State DirichletProblem::scale(const State& u, double t) const {
    check_dim(u);
    if (t < 0.0) throw Error("scaling parameter must be nonnegative");
    return t * u;
}

State DirichletProblem::metric_solve(const State& dual) const {
    return metric_llt_.solve(dual);
}

State DirichletProblem::random_smooth_state(Rng& rng) const {
    State u = State::Zero(n_);
    for (int k = 1; k <= 5; ++k) {
        const double a = rng.uniform(-1.0, 1.0) / (k * k);
        u.array() += a * (k * std::numbers::pi * x_.array()).sin();
    }
    if (u.cwiseAbs().maxCoeff() < 1e-8) u.array() += (std::numbers::pi * x_.array()).sin();
    return u;
}

double DirichletProblem::pohozaev_check(const State& u, double alpha, double beta, double gamma,
                                        double delta) const {
    return pohozaev_from_values(exponents(), eval_all(u), alpha, beta, gamma, delta);
}

std::pair<double, State> rayleigh_lambda1(const DirichletProblem& p) {
    const int n = p.dim();
    const double h = p.spacing();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = 2.0 / (h * h);
        if (i > 0) A(i, i - 1) = -1.0 / (h * h);
        if (i + 1 < n) A(i, i + 1) = -1.0 / (h * h);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw NoConvergenceError("dense eigensolve failed");
    State v = es.eigenvectors().col(0);
    if (v(n / 2) < 0.0) v = -v; // fix the sign for reproducibility
    return {es.eigenvalues()(0), v};
}

} // namespace nehari
