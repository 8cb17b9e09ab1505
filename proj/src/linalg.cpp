// SPDX-License-Identifier: Apache-2.0
#include "dais/linalg.hpp"

#include <cmath>
#include <limits>

namespace dais {

namespace {

Eigen::VectorXd jacobi_scale(const Eigen::MatrixXd& m) {
  Eigen::VectorXd s(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double d = m(i, i);
    s[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
  }
  return s;
}

}  // namespace

Eigen::VectorXd equilibrated_eigenvalues(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd s = jacobi_scale(m);
  const Eigen::MatrixXd scaled = s.asDiagonal() * symmetrize(m) * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

double spectral_ratio(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd ev = equilibrated_eigenvalues(m).cwiseAbs();
  const double largest = ev.maxCoeff();
  if (largest == 0.0) return 0.0;
  return ev.minCoeff() / largest;
}

SymmetricInverse invert_spd(const Eigen::MatrixXd& m, ErrorCode on_singular,
                            const std::string& what) {
  if (m.rows() == 0) return {Eigen::MatrixXd(0, 0), 1.0};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!(m(i, i) > 0.0)) throw Error(on_singular, what + " has a non-positive diagonal entry");
  }
  const Eigen::VectorXd s = jacobi_scale(m);
  const Eigen::MatrixXd scaled = s.asDiagonal() * symmetrize(m) * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double largest = ev.maxCoeff();
  const double smallest = ev.minCoeff();
  if (!(smallest > 1e3 * std::numeric_limits<double>::epsilon() * largest)) {
    throw Error(on_singular, what + " is not positive definite");
  }
  const Eigen::MatrixXd& q = eig.eigenvectors();
  const Eigen::MatrixXd scaled_inv = q * ev.cwiseInverse().asDiagonal() * q.transpose();
  SymmetricInverse out;
  out.inverse = symmetrize(s.asDiagonal() * scaled_inv * s.asDiagonal());
  out.condition = largest / smallest;
  return out;
}

}  // namespace dais
