#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lzep/analytic.hpp"
#include "lzep/model.hpp"
#include "lzep/types.hpp"

namespace lzep {

/// Basis in which asymptotic populations are read off at t = +-T.
enum class AsymptoticBasis {
  /// J_z basis states, exactly as P_jk = |psi_j|^2 / sum_l |psi_l|^2.
  Diabatic,
  /// Instantaneous eigenvectors at +-T, which tend to the J_z states. Removes
  /// the O(coupling / (alpha T)) oscillation of diabatic populations.
  Instantaneous,
};

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double renorm_threshold = std::exp(10.0);
  /// Span [-T, T] with T = t_span_factor * max(coupling, 1) / alpha.
  double t_span_factor = 100.0;
  /// Max-norm change of a column between span doublings accepted as converged.
  double column_tol = 1e-4;
  int max_doublings = 4;
  AsymptoticBasis basis = AsymptoticBasis::Instantaneous;
  std::int64_t max_steps = 2'000'000'000;

  /// Throws InvalidParameter when a field is out of range.
  void validate() const;
};

struct PropagationResult {
  /// Unit Euclidean norm.
  StateVector final_state;
  /// ln of the norm stripped from the state; psi(t1) = exp(log_norm) * final_state.
  double log_norm = 0.0;
  double t_final = 0.0;
  std::int64_t step_count = 0;
  std::int64_t rejected_steps = 0;
  double tolerance_used = 0.0;
};

/// Integrates i dpsi/dt = H(t) psi from t0 to t1 (either direction) with an
/// adaptive Dormand-Prince 5(4) pair and PI step control. Throws
/// IntegrationFailure when the step size underflows or max_steps is reached,
/// InvalidParameter for a zero initial state or t0 == t1.
PropagationResult evolve(const ModelParams& params, const StateVector& psi0, double t0, double t1,
                         const IntegratorConfig& cfg = {});

struct NumericColumn {
  /// Normalized final populations in the J_z basis for initial J_z state k.
  RealVector populations;
  double span = 0.0;
  int doublings = 0;
  double last_change = 0.0;
  std::int64_t steps = 0;
};

/// Span T used for the first attempt.
double default_span(const ModelParams& params, const IntegratorConfig& cfg);

/// Propagates initial state k from -T to T, doubling T until the column
/// changes by less than cfg.column_tol. Throws AsymptoteNotReached after
/// cfg.max_doublings doublings.
NumericColumn numeric_transition_column(const ModelParams& params, int k,
                                        const IntegratorConfig& cfg = {});

TransitionMatrix numeric_transition_matrix(const ModelParams& params,
                                           const IntegratorConfig& cfg = {});

struct SweepRow {
  double alpha = 0.0;
  RealMatrix analytic;
  /// Columns that were not propagated hold NaN.
  RealMatrix numeric;
  double max_deviation = std::numeric_limits<double>::quiet_NaN();
  /// Largest span used over the propagated columns.
  double span = 0.0;
  bool ok = false;
  std::string status;
};

/// Analytic and numeric normalized transition matrices over a list of drive
/// rates. Failures are recorded per row; the sweep continues. `columns`
/// selects the initial states to propagate (all when empty).
std::vector<SweepRow> alpha_sweep(const ModelParams& base, std::span<const double> alphas,
                                  const IntegratorConfig& cfg = {},
                                  std::span<const int> columns = {});

}  // namespace lzep
