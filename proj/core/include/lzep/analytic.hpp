#pragma once

#include <cstdint>
#include <vector>

#include "lzep/model.hpp"
#include "lzep/types.hpp"

namespace lzep {

enum class Flavor { RawM, NormalizedP };

/// Transition matrix between asymptotic J_z states, entry (j, k) for the
/// final state j given initial state k. RawM is symmetric and nonnegative;
/// NormalizedP has unit column sums.
struct TransitionMatrix {
  RealMatrix entries;
  Flavor flavor = Flavor::RawM;

  int dim() const noexcept { return static_cast<int>(entries.rows()); }
  double operator()(int j, int k) const { return entries(j, k); }
};

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Two-level survival probability exp(-pi v^2 / alpha).
double lz2_survival(double v, double alpha);

/// 1 - exp(-pi gamma^2 / alpha), the ratio B/A of the PT two-level
/// populations. Stays in [0, 1) where A itself would overflow.
double pt_ratio(double gamma, double alpha);

/// M_jk = sum_{l,l'} (-1)^(l+l') c_ll' A^(n-j-k+l+l') B^(j+k-l-l') with
/// c_ll' = C(k,l) C(n-k,j-l) C(n-j,k-l') C(j,l'), A = exp(-pi v^2/alpha),
/// B = 1 - A. Doubly stochastic.
TransitionMatrix hermitian_M(const SpinSpace& space, double v, double alpha);

/// The same double sum without alternating signs, for the PT model, divided
/// by A^n so that it is evaluated in r = B/A. Only ratios are meaningful.
TransitionMatrix pt_M(const SpinSpace& space, double gamma, double alpha);

/// Column normalization P_jk = M_jk / sum_l M_lk. Throws
/// DegenerateNormalization for a column without positive sum and
/// InvalidParameter for an asymmetric RawM input.
TransitionMatrix normalize(const TransitionMatrix& m);

/// P_j0 = C(n,j) r^j / (1 + r)^n.
RealVector pt_P_column0(const SpinSpace& space, double gamma, double alpha);

/// Normalized transition matrix for either model.
TransitionMatrix analytic_transition_matrix(const ModelParams& params);

/// Adiabatic-limit column C(n,k) / 2^n, shared by every initial state.
RealVector adiabatic_P(const SpinSpace& space);
/// Same values as exact fractions. Requires N <= 64.
std::vector<Rational> adiabatic_P_exact(const SpinSpace& space);

struct AdiabaticProjection {
  double t = 0.0;
  Complex x;
  /// |c_j|^2 = C(n,j) |x|^n / 2^n.
  RealVector raw;
  RealVector normalized;
};

/// Weights of the exceptional-point state |n_y> on the biorthonormal left
/// eigenvectors at t > gamma/alpha. Throws InvalidParameter for t at or
/// before the second exceptional point, NoExceptionalPoint for Hermitian.
AdiabaticProjection adiabatic_projection(const ModelParams& params, double t);

/// Exact check of sum_l C(k,l) C(n-k,j-l) = C(n,j) for all 0 <= j,k <= n <= max_n.
bool chu_vandermonde_holds(int max_n);

}  // namespace lzep
