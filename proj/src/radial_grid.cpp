#include "nehari/radial_grid.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace nehari {

RadialGrid::RadialGrid(int n, double r_min, double r_max, double r_char) {
    if (n < 64) throw ConfigError("radial grid needs n >= 64, got " + std::to_string(n));
    if (!(r_min > 0.0 && r_max > r_min)) throw ConfigError("need 0 < r_min < r_max");
    if (r_min > 1e-3 * r_char || r_max < 50.0 * r_char)
        throw ConfigError("grid must cover [1e-3, 50] times the characteristic length " +
                          std::to_string(r_char));

    r_.resize(n);
    xi_.resize(n);
    const double xi0 = std::log(r_min);
    dxi_ = (std::log(r_max) - xi0) / (n - 1);
    for (int i = 0; i < n; ++i) {
        xi_(i) = xi0 + i * dxi_;
        r_(i) = std::exp(xi_(i));
    }
    r_(0) = r_min;
    r_(n - 1) = r_max;

    // Panel rule: phi linear in xi, weight r^3 integrated analytically. The
    // endpoint weights sum to the exact panel mass 4 pi (r_{i+1}^3 - r_i^3)/3,
    // so constants times r^2 are integrated exactly.
    vol_.setZero(n);
    constexpr double four_pi = 4.0 * std::numbers::pi;
    const double a = 3.0 * dxi_;
    const double ea = std::exp(a);
    const double total = (ea - 1.0) / a;              // int_0^1 e^(a th) dth
    const double right = (ea * (a - 1.0) + 1.0) / (a * a); // int_0^1 th e^(a th) dth
    const double left = total - right;
    for (int i = 0; i + 1 < n; ++i) {
        const double base = four_pi * dxi_ * std::pow(r_(i), 3);
        vol_(i) += base * left;
        vol_(i + 1) += base * right;
    }

    // d/dr = (1/r) d/dxi on the uniform log grid.
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * n);
    auto add = [&](int row, int col, double coeff) {
        trip.emplace_back(row, col, coeff / (r_(row) * dxi_));
    };
    add(0, 0, -1.5);
    add(0, 1, 2.0);
    add(0, 2, -0.5);
    add(1, 0, -0.5);
    add(1, 2, 0.5);
    for (int i = 2; i + 2 < n; ++i) {
        add(i, i - 2, 1.0 / 12.0);
        add(i, i - 1, -8.0 / 12.0);
        add(i, i + 1, 8.0 / 12.0);
        add(i, i + 2, -1.0 / 12.0);
    }
    add(n - 2, n - 3, -0.5);
    add(n - 2, n - 1, 0.5);
    add(n - 1, n - 3, 0.5);
    add(n - 1, n - 2, -2.0);
    add(n - 1, n - 1, 1.5);
    D_.resize(n, n);
    D_.setFromTriplets(trip.begin(), trip.end());

    K_ = D_.transpose() * vol_.asDiagonal() * D_;
    K_.makeCompressed();
}

Eigen::VectorXd RadialGrid::coulomb_potential(const Eigen::VectorXd& u) const {
    const int n = size();
    Eigen::VectorXd a = vol_.array() * u.array().square();
    Eigen::VectorXd phi(n);
    // prefix: charge inside radius r_i; suffix: sum of a_j / r_j outside
    double inside = 0.0;
    for (int i = 0; i < n; ++i) {
        inside += a(i);
        phi(i) = inside / r_(i);
    }
    double outside = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        phi(i) += outside;
        outside += a(i) / r_(i);
    }
    return phi;
}

Eigen::VectorXd RadialGrid::scale_resample(const Eigen::VectorXd& u, double t) const {
    const int n = size();
    if (t == 0.0) return Eigen::VectorXd::Zero(n);
    if (t == 1.0) return u;
    const double t2 = t * t;
    const double shift = std::log(t);

    // centered slope estimates in xi (one-sided at the ends), linear in u
    Eigen::VectorXd m(n);
    m(0) = (-1.5 * u(0) + 2.0 * u(1) - 0.5 * u(2)) / dxi_;
    for (int i = 1; i + 1 < n; ++i) m(i) = (u(i + 1) - u(i - 1)) / (2.0 * dxi_);
    m(n - 1) = (0.5 * u(n - 3) - 2.0 * u(n - 2) + 1.5 * u(n - 1)) / dxi_;

    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        const double xi = xi_(i) + shift;
        if (xi > xi_(n - 1)) {
            v(i) = 0.0;
            continue;
        }
        if (xi < xi_(0)) {
            v(i) = t2 * (u(0) + m(0) * (xi - xi_(0)));
            continue;
        }
        int k = static_cast<int>(std::floor((xi - xi_(0)) / dxi_));
        if (k > n - 2) k = n - 2;
        const double th = (xi - xi_(k)) / dxi_;
        const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
        const double h10 = th * (1.0 - th) * (1.0 - th);
        const double h01 = th * th * (3.0 - 2.0 * th);
        const double h11 = th * th * (th - 1.0);
        v(i) = t2 * (h00 * u(k) + h10 * dxi_ * m(k) + h01 * u(k + 1) + h11 * dxi_ * m(k + 1));
    }
    return v;
}

} // namespace nehari
