#pragma once

// Seeded property suite for the SL(2) -> SL(N) lift.

#include <cstdint>
#include <vector>

#include "lzep/types.hpp"

namespace lzep {

struct LiftCheckConfig {
  int min_levels = 2;
  int max_levels = 8;
  int samples = 100;
  std::uint64_t seed = 20240601;
  double tolerance = 1e-9;
};

struct LiftCheckRow {
  int levels = 0;
  double homomorphism = 0.0;  ///< max |D(ab) - D(a) D(b)| / max(1, |D(ab)|)
  double equivariance = 0.0;  ///< max |D(d) psi(p) - psi(d p)| / max(1, |psi(d p)|)
  double determinant = 0.0;   ///< max |det D(d) - 1|
  double unitarity = 0.0;     ///< max |D(u)^dagger D(u) - 1| over SU(2) samples
  bool passed = false;
};

struct LiftCheckReport {
  LiftCheckConfig config;
  std::vector<LiftCheckRow> rows;
  bool passed = false;
};

/// u1 diag(e^eta, e^-eta) u2 with random rotations u1, u2 and |eta| <= max_rapidity,
/// so cond(lift(d)) stays below e^(2 n max_rapidity).
OperatorMatrix random_sl2(std::uint64_t& state, double max_rapidity = 1.0);

/// Random SU(2) element exp(i theta n.sigma / 2).
OperatorMatrix random_su2(std::uint64_t& state);

/// Runs every property for each N in [min_levels, max_levels]. Identical
/// configs give bit-identical reports.
LiftCheckReport run_lift_checks(const LiftCheckConfig& cfg);

}  // namespace lzep
