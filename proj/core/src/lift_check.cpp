#include "lzep/lift_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lzep/errors.hpp"
#include "lzep/repr_lift.hpp"
#include "lzep/su2_ops.hpp"

namespace lzep {
namespace {

// Box-Muller on top of the engine: std::normal_distribution is not specified
// bit-for-bit across standard libraries.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t& state) : state_(state), engine_(state) {}
  ~Gaussian() { state_ = engine_(); }
  Gaussian(const Gaussian&) = delete;
  Gaussian& operator=(const Gaussian&) = delete;

  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  double normal() {
    const double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t& state_;
  std::mt19937_64 engine_;
};

OperatorMatrix exp_traceless(const OperatorMatrix& a) {
  const Complex mu = std::sqrt(-(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)));
  const Complex shc = std::abs(mu) < 1e-8 ? Complex(1.0) + mu * mu / 6.0 : std::sinh(mu) / mu;
  return std::cosh(mu) * OperatorMatrix::Identity(2, 2) + shc * a;
}

double rel_error(const OperatorMatrix& got, const OperatorMatrix& want) {
  return (got - want).cwiseAbs().maxCoeff() / std::max(1.0, want.cwiseAbs().maxCoeff());
}

}  // namespace

OperatorMatrix random_su2(std::uint64_t& state) {
  Gaussian g(state);
  double nx = g.normal(), ny = g.normal(), nz = g.normal();
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  nx /= len;
  ny /= len;
  nz /= len;
  const double half = 2.0 * kPi * g.uniform();
  OperatorMatrix a(2, 2);
  a << Complex(0, nz), Complex(ny, nx), Complex(-ny, nx), Complex(0, -nz);
  return exp_traceless(half * a);
}

OperatorMatrix random_sl2(std::uint64_t& state, double max_rapidity) {
  // K A K form: both singular values lie in [e^-max_rapidity, e^max_rapidity].
  const OperatorMatrix left = random_su2(state);
  const OperatorMatrix right = random_su2(state);
  double eta = 0.0;
  {
    Gaussian g(state);
    eta = max_rapidity * (2.0 * g.uniform() - 1.0);
  }
  OperatorMatrix boost = OperatorMatrix::Zero(2, 2);
  boost(0, 0) = std::exp(eta);
  boost(1, 1) = std::exp(-eta);
  return left * boost * right;
}

LiftCheckReport run_lift_checks(const LiftCheckConfig& cfg) {
  if (cfg.min_levels < 2 || cfg.max_levels < cfg.min_levels) {
    throw InvalidDimension("run_lift_checks: need 2 <= min_levels <= max_levels");
  }
  if (cfg.samples < 1) throw InvalidParameter("run_lift_checks: samples must be positive");

  LiftCheckReport report;
  report.config = cfg;
  report.passed = true;
  for (int levels = cfg.min_levels; levels <= cfg.max_levels; ++levels) {
    const SpinSpace space(levels);
    // Each N draws from its own stream so rows do not depend on the range.
    std::uint64_t state = cfg.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(levels));
    LiftCheckRow row;
    row.levels = levels;
    for (int s = 0; s < cfg.samples; ++s) {
      const OperatorMatrix a = random_sl2(state);
      const OperatorMatrix b = random_sl2(state);
      const OperatorMatrix da = lift(a, space);
      const OperatorMatrix dab = lift(a * b, space);
      row.homomorphism = std::max(row.homomorphism, rel_error(da * lift(b, space), dab));

      Gaussian g(state);
      StateVector spinor(2);
      spinor << Complex(g.normal(), g.normal()), Complex(g.normal(), g.normal());
      const StateVector mapped = a * spinor;
      const StateVector expected = coherent_state(space, mapped(0), mapped(1));
      const StateVector got = da * coherent_state(space, spinor(0), spinor(1));
      row.equivariance = std::max(row.equivariance, rel_error(got, expected));

      row.determinant = std::max(row.determinant, std::abs(da.determinant() - 1.0));
    }
    for (int s = 0; s < cfg.samples; ++s) {
      const OperatorMatrix du = lift(random_su2(state), space);
      row.unitarity = std::max(row.unitarity, rel_error(du.adjoint() * du, OperatorMatrix::Identity(levels, levels)));
    }
    row.passed = row.homomorphism < cfg.tolerance && row.equivariance < cfg.tolerance &&
                 row.determinant < cfg.tolerance && row.unitarity < cfg.tolerance;
    report.passed = report.passed && row.passed;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace lzep
