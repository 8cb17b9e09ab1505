// SPDX-License-Identifier: Apache-2.0
//
// Symmetric-matrix helpers. Fisher matrices here mix seconds and radians, so
// every spectral test runs on the Jacobi-equilibrated matrix D^-1/2 M D^-1/2.
#pragma once

#include <string>

#include <Eigen/Dense>

#include "dais/error.hpp"

namespace dais {

inline constexpr double kConditionWarning = 1e12;

struct SymmetricInverse {
  Eigen::MatrixXd inverse;
  double condition = 1.0;  // of the equilibrated matrix
  bool ill_conditioned() const { return condition > kConditionWarning; }
};

/// Inverse of a symmetric positive definite matrix via the eigendecomposition of
/// its equilibrated form. Throws `on_singular` when the smallest equilibrated
/// eigenvalue is not above 1e3 * eps * largest.
SymmetricInverse invert_spd(const Eigen::MatrixXd& m, ErrorCode on_singular,
                            const std::string& what);

/// Eigenvalues (ascending) of D^-1/2 M D^-1/2; zero diagonal entries are left unscaled.
Eigen::VectorXd equilibrated_eigenvalues(const Eigen::MatrixXd& m);

/// Smallest over largest absolute equilibrated eigenvalue.
double spectral_ratio(const Eigen::MatrixXd& m);

inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace dais
