#include "lzep/su2_ops.hpp"

#include <cmath>
#include <string>

#include "lzep/combinatorics.hpp"
#include "lzep/errors.hpp"
#include "lzep/repr_lift.hpp"

namespace lzep {

SpinSpace::SpinSpace(int n_levels) : levels_(n_levels) {
  if (n_levels < 2) {
    throw InvalidDimension("spin space needs at least 2 levels, got " + std::to_string(n_levels));
  }
}

Generators build_generators(const SpinSpace& space) {
  const int dim = space.levels();
  const double spin = space.spin();
  Generators g;
  g.jz = OperatorMatrix::Zero(dim, dim);
  g.jplus = OperatorMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const double m = space.weight(j);
    g.jz(j, j) = m;
    // J_+ |m> = sqrt(J(J+1) - m(m+1)) |m+1>, and |m+1> has index j-1.
    if (j > 0) g.jplus(j - 1, j) = std::sqrt(spin * (spin + 1.0) - m * (m + 1.0));
  }
  g.jminus = g.jplus.adjoint();
  g.jx = 0.5 * (g.jplus + g.jminus);
  g.jy = (g.jplus - g.jminus) / Complex(0.0, 2.0);
  return g;
}

void fix_phase(Eigen::Ref<StateVector> v, double threshold) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > threshold * scale) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;
      return;
    }
  }
}

OperatorMatrix jy_eigenbasis(const SpinSpace& space) {
  const double h = 1.0 / std::sqrt(2.0);
  OperatorMatrix u(2, 2);
  u << h, Complex(0.0, h), Complex(0.0, h), h;
  OperatorMatrix basis = lift(u, space);
  for (Eigen::Index c = 0; c < basis.cols(); ++c) fix_phase(basis.col(c));
  return basis;
}

namespace {

Complex ipow(Complex base, int e) {
  Complex acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

StateVector coherent_state(const SpinSpace& space, Complex psi1, Complex psi2) {
  const Complex zero(0.0);
  if (psi1 == zero && psi2 == zero) {
    throw DegenerateSpinor("coherent_state: spinor (0, 0) has no direction");
  }
  const int n = space.n();
  StateVector out(space.levels());
  if (space.levels() <= kDirectLiftMaxLevels) {
    for (int j = 0; j <= n; ++j) {
      out(j) = std::sqrt(comb::binomial(n, j)) * ipow(psi1, n - j) * ipow(psi2, j);
    }
    return out;
  }
  const Complex log1 = psi1 == zero ? zero : std::log(psi1);
  const Complex log2 = psi2 == zero ? zero : std::log(psi2);
  for (int j = 0; j <= n; ++j) {
    if ((psi1 == zero && n - j > 0) || (psi2 == zero && j > 0)) {
      out(j) = zero;
      continue;
    }
    out(j) = std::exp(0.5 * comb::log_binomial(n, j) + double(n - j) * log1 + double(j) * log2);
  }
  return out;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

}  // namespace lzep
