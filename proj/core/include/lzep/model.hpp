#pragma once

#include <span>
#include <vector>

#include "lzep/types.hpp"

namespace lzep {

enum class ModelKind { Hermitian, PTSymmetric };

const char* to_string(ModelKind kind) noexcept;

/// Drive rate, coupling and dimension of one of the two sweep models:
///   Hermitian:   H(t) = -2 alpha t J_z + 2 v J_x
///   PTSymmetric: H(t) = -2 alpha t J_z + 2 i gamma J_x
/// `coupling` holds v or gamma respectively.
struct ModelParams {
  ModelKind kind;
  double alpha;
  double coupling;
  SpinSpace space;

  static ModelParams hermitian(int levels, double alpha, double v);
  static ModelParams pt_symmetric(int levels, double alpha, double gamma);

  /// Throws InvalidParameter unless alpha > 0 and coupling > 0 (both finite).
  void validate() const;
};

/// Instantaneous eigensystem at time t. Energies are E_j = 2 (J - j) lambda.
/// Right and left vectors are stored as columns and satisfy
/// <chi_j|phi_k> = delta_jk and ||phi_j|| = ||chi_j||.
struct EigenSystem {
  double t = 0.0;
  Complex lambda;
  StateVector energies;
  OperatorMatrix right_vectors;
  OperatorMatrix left_vectors;
  bool at_ep = false;
};

/// Pair of N-dimensional similarity transforms with H = 2 lambda Phi J_y Phi^-1
/// and H^dagger = 2 lambda^* X J_y X^-1.
struct SimilarityTransforms {
  OperatorMatrix phi;
  OperatorMatrix x;
};

struct EPData {
  double t_minus = 0.0;
  double t_plus = 0.0;
  /// |n_y>, the lowest J_y eigenvector; null vector of H(t_plus).
  StateVector ep_vector_plus;
  /// Null vector of H(t_minus) from its singular value decomposition.
  StateVector ep_vector_minus;
  double null_residual_plus = 0.0;
  double null_residual_minus = 0.0;
};

struct SpectrumRow {
  double t = 0.0;
  StateVector energies;
  bool at_ep = false;
};

OperatorMatrix hamiltonian_at(const ModelParams& params, double t);

/// P = diag((-1)^j); the PT model satisfies P H^* P = H.
OperatorMatrix parity_operator(const SpinSpace& space);

/// Hermitian: sqrt(alpha^2 t^2 + v^2) > 0.
/// PT: sqrt((alpha t)^2 - gamma^2) >= 0 outside the exceptional points and
/// +i sqrt(gamma^2 - (alpha t)^2) between them; exactly 0 at t = +-gamma/alpha.
Complex lambda_at(const ModelParams& params, double t);

/// Half-width of the window around each exceptional point inside which
/// eigenvectors are not constructed: 1e-6 * gamma / alpha (0 for Hermitian).
double ep_guard(const ModelParams& params);
bool near_ep(const ModelParams& params, double t);

/// x = (gamma - alpha t) / lambda for the PT model, evaluated without the
/// 0/0 at the exceptional points. Throws NoExceptionalPoint for Hermitian
/// parameters and NearExceptionalPoint inside the guard window.
Complex x_ratio(const ModelParams& params, double t);

/// Phi and X as N x N matrices, built by lifting their closed 2 x 2 forms.
/// For the Hermitian model phi = x = exp(i phi J_y), the real rotation that
/// diagonalizes H against J_z.
SimilarityTransforms similarity_transforms(const ModelParams& params, double t);

/// Throws NearExceptionalPoint within ep_guard of an exceptional point.
EigenSystem eigensystem_at(const ModelParams& params, double t);

/// Index of the diabatic (J_z) state that adiabatic label j connects to at
/// large |t|: j itself for t < 0, n - j for t > 0.
int diabatic_index(const ModelParams& params, double t, int j);

/// Throws NoExceptionalPoint for the Hermitian model.
EPData ep_data(const ModelParams& params);

/// |<phi_j|phi_k>| for unit-normalized right eigenvectors. Symmetric with
/// unit diagonal.
RealMatrix overlap_matrix(const ModelParams& params, double t);

/// Energies along a time grid. Points inside an EP guard window are flagged
/// rather than rejected; their energies are all zero.
std::vector<SpectrumRow> spectrum_sweep(const ModelParams& params, std::span<const double> t_grid);

}  // namespace lzep
