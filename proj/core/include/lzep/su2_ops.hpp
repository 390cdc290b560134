#pragma once

#include "lzep/types.hpp"

namespace lzep {

/// Angular momentum matrices in the J_z eigenbasis |j>, J_z|j> = (J - j)|j>.
struct Generators {
  OperatorMatrix jx;
  OperatorMatrix jy;
  OperatorMatrix jz;
  OperatorMatrix jplus;
  OperatorMatrix jminus;
};

/// Standard spin-J matrices with Condon-Shortley phases: J_+ is real,
/// superdiagonal, J_- = J_+^T, J_x = (J_+ + J_-)/2, J_y = (J_+ - J_-)/(2i).
Generators build_generators(const SpinSpace& space);

/// Columns are the J_y eigenvectors |j_y> with eigenvalue J - j.
///
/// Obtained by lifting the SU(2) element (1 + i sigma_x)/sqrt(2), which maps
/// sigma_z to sigma_y under conjugation, so no eigensolver is involved. Each
/// column is then rotated so that its first nonzero component is real and
/// positive.
OperatorMatrix jy_eigenbasis(const SpinSpace& space);

/// SU(2) coherent state psi_j = sqrt(C(n,j)) psi1^(n-j) psi2^j.
/// Throws DegenerateSpinor when psi1 = psi2 = 0.
StateVector coherent_state(const SpinSpace& space, Complex psi1, Complex psi2);

/// Multiplies v by a unit phase so that its first component with modulus
/// above `threshold * max|v_i|` becomes real and positive.
void fix_phase(Eigen::Ref<StateVector> v, double threshold = 1e-12);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace lzep
