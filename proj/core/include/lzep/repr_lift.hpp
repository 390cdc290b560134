#pragma once

#include "lzep/types.hpp"

namespace lzep {

/// Inputs with |det(d) - 1| above this are rejected by lift().
inline constexpr double kUnimodularTolerance = 1e-9;

/// Dimensions above this switch the l-sum to log-magnitude/phase summands.
inline constexpr int kDirectLiftMaxLevels = 20;

/// |det(d) - 1| for a 2 x 2 matrix.
double unimodularity_defect(const OperatorMatrix& d);

/// The N-dimensional irreducible representation D^(N) of an SL(2) element d,
/// in the convention that maps coherent states to coherent states:
///
///   D_jk = sum_l sqrt(k!(n-k)!(n-j)!j!) / ((n-j-k+l)!(k-l)!(j-l)!l!)
///          * d11^(n-j-k+l) d12^(k-l) d21^(j-l) d22^l,
///   l from max(k-(n-j), 0) to min(k, j).
///
/// Vanishing entries of d follow 0^0 = 1. For N = 2 the input is returned
/// unchanged. Throws NotUnimodular, InvalidDimension.
OperatorMatrix lift(const OperatorMatrix& d, const SpinSpace& space);

/// Single entry D_jk. Throws IndexOutOfRange unless 0 <= j,k <= n.
Complex lift_entry(const OperatorMatrix& d, const SpinSpace& space, int j, int k);

}  // namespace lzep
