#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <memory>

#include "nehari/errors.hpp"

namespace nehari {

/// Log-spaced radial grid on [r_min, r_max] with quadrature for volume
/// integrals int phi(r) 4 pi r^2 dr. Panel masses are the exact 4 pi
/// (r_{i+1}^3 - r_i^3)/3, split evenly between panel endpoints, so the rule
/// integrates constants exactly.
class RadialGrid {
public:
    RadialGrid(int n, double r_min, double r_max, double r_char = 1.0);

    int size() const { return static_cast<int>(r_.size()); }
    const Eigen::VectorXd& nodes() const { return r_; }
    const Eigen::VectorXd& volume_weights() const { return vol_; }
    double r_min() const { return r_(0); }
    double r_max() const { return r_(size() - 1); }
    double log_step() const { return dxi_; }

    /// Nodal radial derivative u'(r): fourth-order centered differences in
    /// log r in the interior, second-order one-sided at the ends.
    Eigen::VectorXd deriv(const Eigen::VectorXd& u) const { return D_ * u; }
    const Eigen::SparseMatrix<double>& deriv_matrix() const { return D_; }

    /// Stiffness form K = D^T diag(vol) D of the gradient energy.
    const Eigen::SparseMatrix<double>& stiffness() const { return K_; }

    /// int phi dx = sum vol_i phi_i.
    double integrate(const Eigen::VectorXd& phi) const { return vol_.dot(phi); }

    /// Newton potential of the density u^2:
    /// Phi_i = sum_j vol_j u_j^2 / max(r_i, r_j), computed with prefix sums.
    Eigen::VectorXd coulomb_potential(const Eigen::VectorXd& u) const;

    /// Resample t^2 u(t r) onto the grid: cubic Hermite in log r with centered
    /// slope estimates (linear in u), constant-slope extension below r_min,
    /// zero beyond r_max. Exact identity at t = 1, zero at t = 0.
    Eigen::VectorXd scale_resample(const Eigen::VectorXd& u, double t) const;

private:
    Eigen::VectorXd r_;
    Eigen::VectorXd xi_;  // log r
    Eigen::VectorXd vol_; // 4 pi r^2 quadrature masses
    double dxi_ = 0.0;
    Eigen::SparseMatrix<double> D_;
    Eigen::SparseMatrix<double> K_;
};

} // namespace nehari
