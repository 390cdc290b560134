#include "lzep/propagate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lzep/errors.hpp"

namespace lzep {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants.
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

// Right-hand side in the interaction frame of the diagonal drive. With
// H(t) = t D + C and D diagonal, psi_j = exp(-i theta_j(t)) u_j where
// theta_j = D_jj t^2 / 2, so that
//   du/dt = -i sum_k C_jk exp(i t^2 (D_jj - D_kk) / 2) u_k.
// The fast diabatic phases are then exact and the stepper only resolves the
// coupling. All phase differences are integer multiples m of one unit
// frequency, so each evaluation needs a single complex exponential.
class InteractionRhs {
 public:
  explicit InteractionRhs(const ModelParams& params) : dim_(params.space.levels()) {
    const OperatorMatrix h0 = hamiltonian_at(params, 0.0);
    const OperatorMatrix h1 = hamiltonian_at(params, 1.0) - h0;
    drive_.resize(dim_);
    for (int i = 0; i < dim_; ++i) drive_[i] = h1(i, i).real();
    // D = -2 alpha J_z: neighbouring diagonal entries differ by 2 alpha.
    unit_ = 2.0 * params.alpha;
    const Complex minus_i(0.0, -1.0);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        if (h0(i, j) == Complex(0.0)) continue;
        const double ratio = (drive_[i] - drive_[j]) / unit_;
        const int m = static_cast<int>(std::lround(ratio));
        if (std::abs(ratio - m) > 1e-9) throw std::logic_error("drive is not an equally spaced ladder");
        entries_.push_back({i, j, m, minus_i * h0(i, j)});
        max_m_ = std::max(max_m_, std::abs(m));
        coupling_bound_ = std::max(coupling_bound_, std::abs(h0(i, j)));
      }
    }
    phase_pow_.resize(2 * max_m_ + 1);
  }

  int dim() const { return dim_; }

  void operator()(double t, const Complex* u, Complex* out) {
    const Complex w = std::polar(1.0, 0.5 * unit_ * t * t);
    phase_pow_[max_m_] = 1.0;
    for (int m = 1; m <= max_m_; ++m) {
      phase_pow_[max_m_ + m] = phase_pow_[max_m_ + m - 1] * w;
      phase_pow_[max_m_ - m] = std::conj(phase_pow_[max_m_ + m]);
    }
    for (int i = 0; i < dim_; ++i) out[i] = 0.0;
    for (const Entry& e : entries_) out[e.row] += e.value * phase_pow_[max_m_ + e.m] * u[e.col];
  }

  // Largest rate of change in the frame at time t: coupling plus the
  // frequency of the fastest phase factor.
  double rate_bound(double t) const {
    return 2.0 * coupling_bound_ + max_m_ * unit_ * std::abs(t);
  }

  // Exact diabatic phase exp(-i D_jj t^2 / 2) * sign, sign = +1 to go from the
  // frame to psi and -1 for the inverse.
  Complex frame_phase(int j, double t, double sign) const {
    return std::polar(1.0, -sign * 0.5 * drive_[j] * t * t);
  }

 private:
  struct Entry {
    int row;
    int col;
    int m;
    Complex value;
  };
  int dim_;
  double unit_ = 1.0;
  int max_m_ = 0;
  double coupling_bound_ = 0.0;
  std::vector<double> drive_;
  std::vector<Entry> entries_;
  std::vector<Complex> phase_pow_;
};

double squared_norm(const std::vector<Complex>& y) {
  double s = 0.0;
  for (const Complex& v : y) s += std::norm(v);
  return s;
}

double max_abs_diff(const RealVector& a, const RealVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

RealVector populations_at(const ModelParams& params, const StateVector& psi, double t,
                          AsymptoticBasis basis) {
  const int dim = params.space.levels();
  RealVector pop(dim);
  if (basis == AsymptoticBasis::Diabatic) {
    pop = psi.cwiseAbs2();
  } else {
    const EigenSystem es = eigensystem_at(params, t);
    for (int j = 0; j < dim; ++j) {
      // Weight on the unit-normalized right vector phi_j.
      const Complex c = es.left_vectors.col(j).dot(psi) * es.right_vectors.col(j).norm();
      pop(diabatic_index(params, t, j)) = std::norm(c);
    }
  }
  const double total = pop.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateNormalization("final populations have no positive weight");
  }
  return pop / total;
}

StateVector initial_state(const ModelParams& params, int k, double t0, AsymptoticBasis basis) {
  const int dim = params.space.levels();
  if (basis == AsymptoticBasis::Diabatic) return StateVector::Unit(dim, k);
  const EigenSystem es = eigensystem_at(params, t0);
  for (int j = 0; j < dim; ++j) {
    if (diabatic_index(params, t0, j) == k) return es.right_vectors.col(j).normalized();
  }
  throw IndexOutOfRange("initial_state: no eigenvector connects to state " + std::to_string(k));
}

struct ColumnRun {
  RealVector populations;
  std::int64_t steps = 0;
};

ColumnRun run_column(const ModelParams& params, int k, double span, const IntegratorConfig& cfg) {
  const StateVector psi0 = initial_state(params, k, -span, cfg.basis);
  const PropagationResult res = evolve(params, psi0, -span, span, cfg);
  return {populations_at(params, res.final_state, span, cfg.basis), res.step_count};
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-3)) throw InvalidParameter("rel_tol must lie in (0, 1e-3)");
  if (!(abs_tol > 0.0)) throw InvalidParameter("abs_tol must be positive");
  if (!(max_step > 0.0)) throw InvalidParameter("max_step must be positive");
  if (!(renorm_threshold > 1.0)) throw InvalidParameter("renorm_threshold must exceed 1");
  if (!(t_span_factor > 0.0) || !std::isfinite(t_span_factor)) {
    throw InvalidParameter("t_span_factor must be positive");
  }
  if (!(column_tol > 0.0)) throw InvalidParameter("column_tol must be positive");
  if (max_doublings < 0) throw InvalidParameter("max_doublings must be nonnegative");
  if (max_steps <= 0) throw InvalidParameter("max_steps must be positive");
}

PropagationResult evolve(const ModelParams& params, const StateVector& psi0, double t0, double t1,
                         const IntegratorConfig& cfg) {
  params.validate();
  cfg.validate();
  if (psi0.size() != params.space.levels()) {
    throw InvalidDimension("evolve: initial state dimension does not match the model");
  }
  if (t0 == t1 || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw InvalidParameter("evolve: need finite t0 != t1");
  }
  const double norm0 = psi0.norm();
  if (!(norm0 > 0.0) || !std::isfinite(norm0)) {
    throw InvalidParameter("evolve: initial state must be nonzero and finite");
  }

  InteractionRhs rhs(params);
  const int dim = rhs.dim();
  const double dir = t1 > t0 ? 1.0 : -1.0;

  PropagationResult res;
  res.tolerance_used = cfg.rel_tol;
  res.log_norm = std::log(norm0);

  std::vector<Complex> y(dim), y_new(dim), tmp(dim);
  std::array<std::vector<Complex>, 7> k;
  for (auto& stage : k) stage.resize(dim);
  for (int i = 0; i < dim; ++i) y[i] = rhs.frame_phase(i, t0, -1.0) * psi0(i) / norm0;

  auto scaled_error = [&](const std::vector<Complex>& err) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      s += std::norm(err[i]) / (sc * sc);
    }
    return std::sqrt(s / dim);
  };

  double t = t0;
  rhs(t, y.data(), k[0].data());

  // Initial step from the local frequency scale.
  double h = std::min({cfg.max_step, std::abs(t1 - t0),
                       0.05 * std::pow(cfg.rel_tol, 0.2) / std::max(rhs.rate_bound(t), 1e-300)});
  double err_old = 1e-4;
  bool last_rejected = false;

  while (dir * (t1 - t) > 0.0) {
    if (res.step_count + res.rejected_steps >= cfg.max_steps) {
      throw IntegrationFailure("evolve: step limit reached", t);
    }
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)) {
      throw IntegrationFailure("evolve: step size underflow at t = " + std::to_string(t), t);
    }
    bool final_step = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      final_step = true;
    }
    const double hs = dir * h;

    for (int i = 0; i < dim; ++i) tmp[i] = y[i] + hs * (a21 * k[0][i]);
    rhs(t + c2 * hs, tmp.data(), k[1].data());
    for (int i = 0; i < dim; ++i) tmp[i] = y[i] + hs * (a31 * k[0][i] + a32 * k[1][i]);
    rhs(t + c3 * hs, tmp.data(), k[2].data());
    for (int i = 0; i < dim; ++i) {
      tmp[i] = y[i] + hs * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
    }
    rhs(t + c4 * hs, tmp.data(), k[3].data());
    for (int i = 0; i < dim; ++i) {
      tmp[i] = y[i] + hs * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
    }
    rhs(t + c5 * hs, tmp.data(), k[4].data());
    for (int i = 0; i < dim; ++i) {
      tmp[i] = y[i] + hs * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] +
                            a65 * k[4][i]);
    }
    const double t_next = final_step ? t1 : t + hs;
    rhs(t_next, tmp.data(), k[5].data());
    for (int i = 0; i < dim; ++i) {
      y_new[i] = y[i] + hs * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] +
                              a76 * k[5][i]);
    }
    rhs(t_next, y_new.data(), k[6].data());
    for (int i = 0; i < dim; ++i) {
      tmp[i] = hs * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                     e7 * k[6][i]);
    }
    const double err = scaled_error(tmp);
    if (!std::isfinite(err)) throw IntegrationFailure("evolve: non-finite state", t);

    const double fac_i = std::pow(err, kExpo);
    if (err <= 1.0) {
      double fac = fac_i / std::pow(err_old, kBeta);
      fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
      double h_new = h / fac;
      if (last_rejected) h_new = std::min(h_new, h);
      err_old = std::max(err, 1e-4);
      last_rejected = false;

      t = t_next;
      y.swap(y_new);
      k[0].swap(k[6]);
      ++res.step_count;

      const double nrm2 = squared_norm(y);
      const double lim2 = cfg.renorm_threshold * cfg.renorm_threshold;
      if (nrm2 > lim2 || nrm2 * lim2 < 1.0) {
        const double nrm = std::sqrt(nrm2);
        for (Complex& v : y) v /= nrm;
        for (Complex& v : k[0]) v /= nrm;
        res.log_norm += std::log(nrm);
      }
      h = std::min(h_new, cfg.max_step);
    } else {
      h /= std::min(1.0 / kFacMin, fac_i / kSafety);
      last_rejected = true;
      ++res.rejected_steps;
    }
  }

  const double nrm = std::sqrt(squared_norm(y));
  res.final_state.resize(dim);
  for (int i = 0; i < dim; ++i) res.final_state(i) = rhs.frame_phase(i, t, 1.0) * y[i] / nrm;
  res.log_norm += std::log(nrm);
  res.t_final = t;
  return res;
}

double default_span(const ModelParams& params, const IntegratorConfig& cfg) {
  return cfg.t_span_factor * std::max(params.coupling, 1.0) / params.alpha;
}

NumericColumn numeric_transition_column(const ModelParams& params, int k,
                                        const IntegratorConfig& cfg) {
  params.validate();
  cfg.validate();
  if (k < 0 || k > params.space.n()) throw IndexOutOfRange("numeric_transition_column: bad k");

  NumericColumn out;
  double span = default_span(params, cfg);
  ColumnRun prev = run_column(params, k, span, cfg);
  out.steps = prev.steps;
  double change = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= cfg.max_doublings; ++d) {
    span *= 2.0;
    ColumnRun next = run_column(params, k, span, cfg);
    out.steps += next.steps;
    change = max_abs_diff(next.populations, prev.populations);
    prev = std::move(next);
    if (change < cfg.column_tol) {
      out.populations = prev.populations;
      out.span = span;
      out.doublings = d;
      out.last_change = change;
      return out;
    }
  }
  throw AsymptoteNotReached("numeric_transition_column: populations still change by " +
                                std::to_string(change) + " after span doublings",
                            change);
}

TransitionMatrix numeric_transition_matrix(const ModelParams& params, const IntegratorConfig& cfg) {
  const int dim = params.space.levels();
  TransitionMatrix p{RealMatrix(dim, dim), Flavor::NormalizedP};
  for (int k = 0; k < dim; ++k) p.entries.col(k) = numeric_transition_column(params, k, cfg).populations;
  return p;
}

std::vector<SweepRow> alpha_sweep(const ModelParams& base, std::span<const double> alphas,
                                  const IntegratorConfig& cfg, std::span<const int> columns) {
  const int dim = base.space.levels();
  std::vector<int> cols(columns.begin(), columns.end());
  if (cols.empty()) {
    for (int k = 0; k < dim; ++k) cols.push_back(k);
  }
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    SweepRow row;
    row.alpha = alpha;
    row.numeric = RealMatrix::Constant(dim, dim, std::numeric_limits<double>::quiet_NaN());
    try {
      ModelParams params = base;
      params.alpha = alpha;
      params.validate();
      row.analytic = analytic_transition_matrix(params).entries;
      double dev = 0.0;
      for (int k : cols) {
        const NumericColumn col = numeric_transition_column(params, k, cfg);
        row.numeric.col(k) = col.populations;
        row.span = std::max(row.span, col.span);
        dev = std::max(dev, max_abs_diff(col.populations, row.analytic.col(k)));
      }
      row.max_deviation = dev;
      row.ok = true;
      row.status = "ok";
    } catch (const Error& e) {
      row.ok = false;
      row.status = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lzep
