#include <doctest.h>

#include <cmath>

#include "nehari/dirichlet_problem.hpp"
#include "nehari/fiber.hpp"
#include "nehari/formulas.hpp"
#include "nehari/rng.hpp"
#include "nehari/sps_problem.hpp"
#include "test_util.hpp"

using namespace nehari;
using testutil::bisect_fiber_oracle;
using testutil::rel_err;

TEST_CASE("admissible energy intervals per sign case") {
    CHECK(admissible_energy_interval(SignCase::I).is_negative_axis());
    CHECK(admissible_energy_interval(SignCase::IV).is_negative_axis());
    CHECK(admissible_energy_interval(SignCase::V).is_negative_axis());
    CHECK_FALSE(admissible_energy_interval(SignCase::II).is_negative_axis());
    CHECK_FALSE(admissible_energy_interval(SignCase::III).is_negative_axis());
    CHECK_FALSE(admissible_energy_interval(SignCase::VI).is_negative_axis());

    CHECK(admissible_energy_interval(SignCase::I).contains(-1.0));
    CHECK_FALSE(admissible_energy_interval(SignCase::I).contains(0.0));
    CHECK_FALSE(admissible_energy_interval(SignCase::I).contains(0.5));
    CHECK(admissible_energy_interval(SignCase::III).contains(0.5));
    CHECK(admissible_energy_interval(SignCase::VI).contains(2.0));
    CHECK_FALSE(admissible_energy_interval(SignCase::VI).contains(-2.0));
}

TEST_CASE("sign constraints of the six cases") {
    CHECK(signs_consistent(SignCase::I, 1.0, 0.0));
    CHECK_FALSE(signs_consistent(SignCase::I, -1.0, 0.0));
    CHECK_FALSE(signs_consistent(SignCase::I, 1.0, 0.5));
    CHECK(signs_consistent(SignCase::II, -1.0, 0.0));
    CHECK(signs_consistent(SignCase::III, 0.0, 2.0));
    CHECK(signs_consistent(SignCase::IV, 0.0, -2.0));
    CHECK(signs_consistent(SignCase::V, 0.3, -0.4));
    CHECK(signs_consistent(SignCase::VI, -0.3, 0.4));
    CHECK_FALSE(signs_consistent(SignCase::V, 0.3, 0.4));
}

TEST_CASE("scaling exponent ordering is enforced") {
    CHECK_NOTHROW(ScalingExponents(3.0, 2.4, 5.0));
    CHECK_THROWS_AS(ScalingExponents(3.0, 3.5, 5.0), ConfigError);
    CHECK_THROWS_AS(ScalingExponents(3.0, 2.4, 2.9), ConfigError);
    CHECK_THROWS_AS(ScalingExponents(3.0, -1.0, 5.0), ConfigError);
}

TEST_CASE("fiber residual closed values") {
    const ScalingExponents e{3.0, 2.4, 5.0};
    CHECK(fiber_residual_values(e, 1.0, 0.0, -0.2, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fiber_residual_values(e, 0.0, 1.0, 2.0 / 3.0, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fiber_residual_values(e, 0.0, 0.0, 0.0, 7.3) == 0.0);
}

TEST_CASE("fiber time closed forms at unit root") {
    const ScalingExponents e{3.0, 2.4, 5.0};
    auto sol1 = solve_fiber_time_values(e, SignCase::I, 1.0, 0.0, -0.2);
    CHECK(sol1.t == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sol1.method == FiberMethod::ClosedForm);
    CHECK(std::abs(sol1.residual) <= 1e-12 * (1.0 + 0.2 * 3.0));

    auto sol3 = solve_fiber_time_values(e, SignCase::III, 0.0, 1.0, 2.0 / 3.0);
    CHECK(sol3.t == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(sol3.residual) <= 1e-12 * 3.0);
}

TEST_CASE("fiber time mixed case matches the bisection oracle") {
    const ScalingExponents e{3.0, 2.4, 5.0};
    // H(1) = 0.6 + 2 - 3 < 0 and H(1.1) > 0, so the root lies in (1.0, 1.1).
    auto sol = solve_fiber_time_values(e, SignCase::V, 1.0, -1.0, -1.0);
    CHECK(sol.method == FiberMethod::BisectionNewton);
    CHECK(sol.t > 1.0);
    CHECK(sol.t < 1.1);
    CHECK(std::abs(sol.residual) <= 1e-12 * 4.0);
    const double oracle = bisect_fiber_oracle(e, 1.0, -1.0, -1.0, 1.0, 1.1);
    CHECK(std::abs(sol.t - oracle) <= 1e-12);

    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const double F = rng.uniform(0.1, 3.0);
        const double G = -rng.uniform(0.1, 3.0);
        const double c = -rng.uniform(0.05, 5.0);
        auto s = solve_fiber_time_values(e, SignCase::V, F, G, c);
        CHECK(std::abs(s.residual) <= 1e-12 * (1.0 + std::abs(c) * 3.0));
        const double orc = bisect_fiber_oracle(e, F, G, c, s.t * 0.5, s.t * 2.0);
        CHECK(std::abs(s.t - orc) <= 1e-12 * std::max(1.0, s.t));
    }
    for (int i = 0; i < 50; ++i) {
        const double F = -rng.uniform(0.1, 3.0);
        const double G = rng.uniform(0.1, 3.0);
        const double c = rng.uniform(0.05, 5.0);
        auto s = solve_fiber_time_values(e, SignCase::VI, F, G, c);
        CHECK(std::abs(s.residual) <= 1e-12 * (1.0 + std::abs(c) * 3.0));
        const double orc = bisect_fiber_oracle(e, F, G, c, s.t * 0.5, s.t * 2.0);
        CHECK(std::abs(s.t - orc) <= 1e-12 * std::max(1.0, s.t));
    }
}

TEST_CASE("fiber time rejects inadmissible energies and wrong signs") {
    const ScalingExponents e{3.0, 2.4, 5.0};
    CHECK_THROWS_AS(solve_fiber_time_values(e, SignCase::I, 1.0, 0.0, 0.5), CaseMismatchError);
    CHECK_THROWS_AS(solve_fiber_time_values(e, SignCase::I, 1.0, 0.0, 0.0), CaseMismatchError);
    CHECK_THROWS_AS(solve_fiber_time_values(e, SignCase::I, -1.0, 0.0, -0.5), CaseMismatchError);
    CHECK_THROWS_AS(solve_fiber_time_values(e, SignCase::V, 1.0, 0.2, -0.5), CaseMismatchError);
}

TEST_CASE("lambda_c closed values and the shift identity") {
    FunctionalValues v{1.0, 0.5, 0.25, 0.0};
    CHECK(lambda_c_from_values(v, -0.5) == doctest::Approx(2.5).epsilon(1e-15));
    FunctionalValues w{2.0, 0.7, 0.0, 0.0};
    CHECK(lambda_c_from_values(w, 0.0) == doctest::Approx(2.0 / 0.7).epsilon(1e-15));

    // lambda_c(u) = (Phi_lambda(u) - c)/J + lambda for every lambda
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        FunctionalValues z{rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), rng.uniform(-1.0, 1.0),
                           rng.uniform(-1.0, 1.0)};
        const double c = rng.uniform(-2.0, 2.0);
        const double lam = rng.uniform(-3.0, 3.0);
        const double lhs = lambda_c_from_values(z, c);
        const double rhs = (phi_lambda_from_values(z, lam) - c) / z.j_s + lam;
        CHECK(rel_err(lhs, rhs) <= 1e-12);
        // prescribing c = Phi_lambda(u) recovers lambda
        const double c_star = phi_lambda_from_values(z, lam);
        CHECK(rel_err(lambda_c_from_values(z, c_star), lam) <= 1e-11);
    }
}

TEST_CASE("phi_lambda closed values") {
    FunctionalValues v{1.0, 0.5, 0.25, 0.0};
    CHECK(phi_lambda_from_values(v, 2.0) == doctest::Approx(-0.25).epsilon(1e-15));
    FunctionalValues zero{0.0, 0.0, 0.0, 0.0};
    CHECK(phi_lambda_from_values(zero, 3.7) == 0.0);
}

TEST_CASE("nehari-reduced lambda agrees with lambda_c on the constraint set") {
    const ScalingExponents e{3.0, 2.4, 5.0};
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        // draw values satisfying the constraint exactly
        const double F = rng.uniform(0.1, 2.0);
        const double c = -rng.uniform(0.05, 3.0);
        const double G = ((e.s - e.q) * F + c * e.s) / (e.r - e.s);
        FunctionalValues v{rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0), F, G};
        CHECK(std::abs(nehari_residual_values(e, F, G, c)) <= 1e-14);
        CHECK(rel_err(big_lambda_from_values(e, v, c), lambda_c_from_values(v, c)) <= 1e-12);
    }
}

TEST_CASE("lambda-tilde: the three expressions coincide") {
    const ScalingExponents e{3.0, 2.4, 5.0};

    // unit fiber, pure F case: value 0.4 by direct arithmetic
    FunctionalValues v1{1.0, 0.5, 1.0, 0.0};
    CHECK(lambda_tilde_full(e, v1, -0.2, 1.0) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(lambda_tilde_no_g(e, v1, -0.2, 1.0) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(lambda_tilde_no_c(e, v1, 1.0) == doctest::Approx(0.4).epsilon(1e-14));

    // unit fiber, pure G case: value -2/3
    FunctionalValues v3{1.0, 1.0, 0.0, 1.0};
    CHECK(lambda_tilde_full(e, v3, 2.0 / 3.0, 1.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(lambda_tilde_no_c(e, v3, 1.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));

    // random admissible samples across mixed cases
    Rng rng(13);
    for (int i = 0; i < 60; ++i) {
        const bool caseV = (i % 2 == 0);
        const double F = caseV ? rng.uniform(0.1, 2.0) : -rng.uniform(0.1, 2.0);
        const double G = caseV ? -rng.uniform(0.1, 2.0) : rng.uniform(0.1, 2.0);
        const double c = caseV ? -rng.uniform(0.05, 4.0) : rng.uniform(0.05, 4.0);
        const auto sc = caseV ? SignCase::V : SignCase::VI;
        const auto sol = solve_fiber_time_values(e, sc, F, G, c);
        FunctionalValues v{rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0), F, G};
        const double a = lambda_tilde_full(e, v, c, sol.t);
        const double b = lambda_tilde_no_g(e, v, c, sol.t);
        const double d = lambda_tilde_no_c(e, v, sol.t);
        CHECK(rel_err(a, b) <= 1e-9);
        CHECK(rel_err(a, d) <= 1e-9);
        CHECK(rel_err(b, d) <= 1e-9);
    }
}

TEST_CASE("closed-form lambda-tilde in the pure cases") {
    const ScalingExponents e{3.0, 2.4, 5.0};

    FunctionalValues v1{1.0, 0.5, 1.0, 0.0};
    CHECK(closed_form_lambda_tilde_values(e, SignCase::I, v1, -0.2) ==
          doctest::Approx(0.4).epsilon(1e-13));

    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        // sphere samples: the closed forms live on {I = 1}
        const double c_neg = -rng.uniform(0.05, 5.0);
        const double c_pos = rng.uniform(0.05, 5.0);
        FunctionalValues a{1.0, rng.uniform(0.3, 2.0), rng.uniform(0.1, 2.0), 0.0};
        FunctionalValues b{a.i_s, a.j_s, -a.f, 0.0};
        FunctionalValues g{a.i_s, a.j_s, 0.0, rng.uniform(0.1, 2.0)};
        FunctionalValues gm{a.i_s, a.j_s, 0.0, -g.g};
        const double psiA = a.i_s / a.j_s;

        // agreement with the implicit-solve route
        auto t1 = solve_fiber_time_values(e, SignCase::I, a.f, 0.0, c_neg);
        CHECK(rel_err(closed_form_lambda_tilde_values(e, SignCase::I, a, c_neg),
                      lambda_tilde_full(e, a, c_neg, t1.t)) <= 1e-9);
        auto t2 = solve_fiber_time_values(e, SignCase::II, b.f, 0.0, c_pos);
        CHECK(rel_err(closed_form_lambda_tilde_values(e, SignCase::II, b, c_pos),
                      lambda_tilde_full(e, b, c_pos, t2.t)) <= 1e-9);
        auto t3 = solve_fiber_time_values(e, SignCase::III, 0.0, g.g, c_pos);
        CHECK(rel_err(closed_form_lambda_tilde_values(e, SignCase::III, g, c_pos),
                      lambda_tilde_full(e, g, c_pos, t3.t)) <= 1e-9);
        auto t4 = solve_fiber_time_values(e, SignCase::IV, 0.0, gm.g, c_neg);
        CHECK(rel_err(closed_form_lambda_tilde_values(e, SignCase::IV, gm, c_neg),
                      lambda_tilde_full(e, gm, c_neg, t4.t)) <= 1e-9);

        // case-correct inequality against the unconstrained quotient
        CHECK(closed_form_lambda_tilde_values(e, SignCase::I, a, c_neg) <= psiA);
        CHECK(closed_form_lambda_tilde_values(e, SignCase::II, b, c_pos) >= psiA);
        CHECK(closed_form_lambda_tilde_values(e, SignCase::III, g, c_pos) <= psiA);
        CHECK(closed_form_lambda_tilde_values(e, SignCase::IV, gm, c_neg) >= psiA);
    }

    // gap decays with the exact power law in |c|
    FunctionalValues v{1.0, 0.5, 1.2, 0.0};
    const double psi = v.i_s / v.j_s;
    const double g1 = psi - closed_form_lambda_tilde_values(e, SignCase::I, v, -10.0);
    const double g2 = psi - closed_form_lambda_tilde_values(e, SignCase::I, v, -40.0);
    CHECK(rel_err(g1 / g2, std::pow(4.0, (e.s - e.q) / e.q)) <= 1e-12);

    CHECK_THROWS_AS(
        closed_form_lambda_tilde_values(e, SignCase::V, FunctionalValues{1, 1, 1, -1}, -1.0),
        CaseMismatchError);
}

TEST_CASE("envelope derivative value") {
    // -t^(-s)/J at t = 1, J = 0.5, s = 3
    const ScalingExponents e{3.0, 2.4, 5.0};
    FunctionalValues v{1.0, 0.5, 1.0, 0.0};
    auto sol = solve_fiber_time_values(e, SignCase::I, v.f, 0.0, -0.2);
    CHECK(-std::pow(sol.t, -e.s) / v.j_s == doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("pohozaev combination of values") {
    const ScalingExponents e{3.0, 2.4, 5.0};
    FunctionalValues zero{0.0, 0.0, 0.0, 0.0};
    CHECK(pohozaev_from_values(e, zero, 1.0, 2.0, 3.0, 4.0) == 0.0);
    // beta = I/J with gamma = delta = 0 vanishes identically
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        FunctionalValues v{rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), 0.0, 0.0};
        CHECK(std::abs(pohozaev_from_values(e, v, 1.0, v.i_s / v.j_s, 0.0, 0.0)) <=
              1e-13 * e.s * v.i_s);
    }
}

TEST_CASE("projection onto the sphere (exact scaling model)") {
    DirichletProblem p({.sigma = 1.5, .tau = 4.0, .mu = 1.0, .nu = 0.0}, 127);
    CHECK(std::pow(8.0, -1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-15));

    Rng rng(3);
    State u = p.random_smooth_state(rng);
    auto [t_u, pi_u] = project_to_sphere(p, u);
    CHECK(rel_err(t_u, std::pow(p.eval_I(u), -0.5)) <= 1e-14);
    CHECK(std::abs(p.eval_I(pi_u) - 1.0) <= 1e-10);

    // a sphere state projects to itself with unit time
    auto [t_again, pi_again] = project_to_sphere(p, pi_u);
    CHECK(std::abs(t_again - 1.0) <= 1e-10);
    CHECK((pi_again - pi_u).cwiseAbs().maxCoeff() <= 1e-10);

    State zero = State::Zero(p.dim());
    CHECK_THROWS_AS(project_to_sphere(p, zero), ZeroStateError);
}

TEST_CASE("nehari residual through the fiber map and nonexistence sign") {
    DirichletProblem p({.sigma = 1.5, .tau = 4.0, .mu = 1.0, .nu = 0.0}, 127);
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        State u = normalize_to_sphere(p, p.random_smooth_state(rng));
        const double c = -rng.uniform(0.05, 2.0);
        State v = scale_to_nehari(p, u, c);
        const double scale = std::abs(c) * p.exponents().s + std::abs(p.eval_F(v));
        CHECK(std::abs(nehari_residual(p, v, c)) <= 1e-8 * scale);
        // with the constraint satisfied, both lambda expressions agree
        CHECK(rel_err(big_lambda_c(p, v, c), lambda_c_value(p, v, c)) <= 1e-10);
    }
    // wrong-side energies make the constraint sign-definite
    for (int i = 0; i < 10; ++i) {
        State u = p.random_smooth_state(rng);
        CHECK(nehari_residual(p, u, 0.5) > 0.0);
        CHECK(nehari_residual(p, u, 0.0) > 0.0);
    }
    CHECK(nehari_residual_values(p.exponents(), 0.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("big_lambda_c rejects off-manifold states") {
    DirichletProblem p({.sigma = 1.5, .tau = 4.0, .mu = 1.0, .nu = 0.0}, 127);
    Rng rng(9);
    State u = p.random_smooth_state(rng);
    CHECK_THROWS_AS(big_lambda_c(p, u, -0.7), NotOnNehariError);
}

TEST_CASE("psi_tilde basics") {
    DirichletProblem p({.sigma = 1.5, .tau = 4.0, .mu = 1.0, .nu = 0.0}, 127);
    Rng rng(15);
    State u = normalize_to_sphere(p, p.random_smooth_state(rng));
    CHECK(rel_err(psi_tilde(p, u), 1.0 / p.eval_J(u)) <= 1e-14);
    CHECK(psi_tilde(p, u) > 0.0);
    // scale invariance through the projection
    for (double t : {0.5, 2.0}) {
        State w = normalize_to_sphere(p, p.scale(u, t));
        CHECK(rel_err(psi_tilde(p, w), psi_tilde(p, u)) <= 1e-12);
    }
    CHECK_THROWS_AS(psi_tilde(p, 3.0 * u), Error);
}

TEST_CASE("gradient of lambda_c: finite differences and oddness") {
    DirichletProblem p({.sigma = 1.5, .tau = 4.0, .mu = 1.0, .nu = -0.5}, 127);
    Rng rng(21);
    for (int i = 0; i < 8; ++i) {
        State u = p.random_smooth_state(rng);
        State w = p.random_smooth_state(rng);
        const double c = -0.8;
        State g = grad_lambda_c(p, u, c);
        const double analytic = p.inner(g, w);
        const double h = 1e-5 * p.norm(u) / p.norm(w);
        const double fd = testutil::directional_fd(
            p, [&](const State& z) { return lambda_c_value(p, z, c); }, u, w, h);
        CHECK(rel_err(analytic, fd) <= 1e-5);

        State gm = grad_lambda_c(p, -u, c);
        CHECK((gm + g).cwiseAbs().maxCoeff() <= 1e-12 * g.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("functionals are even and lambda-tilde is symmetric") {
    DirichletProblem p({.sigma = 1.5, .tau = 4.0, .mu = 1.0, .nu = 0.0}, 127);
    Rng rng(27);
    State u = normalize_to_sphere(p, p.random_smooth_state(rng));
    auto [lp, fp] = lambda_tilde(p, u, -0.4);
    auto [lm, fm] = lambda_tilde(p, -u, -0.4);
    CHECK(lp == lm);
    CHECK(fp.t == fm.t);
    CHECK(p.eval_F(u) == p.eval_F(-u));
    CHECK(p.eval_I(u) == p.eval_I(-u));
}
