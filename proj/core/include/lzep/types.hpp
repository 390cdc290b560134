#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lzep {

using Complex = std::complex<double>;

/// Dense N x N complex matrix. Row/column index j = 0 labels the highest
/// weight state (J_z or J_y eigenvalue J), descending to -J at j = n.
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Dimension data of the spin-J irreducible representation, N = 2J + 1.
class SpinSpace {
 public:
  /// Throws InvalidDimension for n_levels < 2.
  explicit SpinSpace(int n_levels);

  int levels() const noexcept { return levels_; }
  /// n = N - 1 = 2J, the top basis index.
  int n() const noexcept { return levels_ - 1; }
  int two_j() const noexcept { return levels_ - 1; }
  double spin() const noexcept { return 0.5 * (levels_ - 1); }
  /// Magnetic quantum number J - j of basis index j.
  double weight(int j) const noexcept { return spin() - j; }

  friend bool operator==(const SpinSpace&, const SpinSpace&) = default;

 private:
  int levels_;
};

}  // namespace lzep
