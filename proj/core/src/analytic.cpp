#include "lzep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lzep/combinatorics.hpp"
#include "lzep/errors.hpp"

namespace lzep {
namespace {

void require_rate(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParameter("alpha must be positive");
}

std::vector<double> powers(double base, int n) {
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  for (int e = 1; e <= n; ++e) p[e] = p[e - 1] * base;
  return p;
}

// Double sum over (l, l') of c_ll' a^(n-j-k+l+l') b^(j+k-l-l'), alternating
// in sign when `alternating`. a_pow/b_pow hold powers 0..2n.
double double_sum(int n, int j, int k, const std::vector<double>& a_pow,
                  const std::vector<double>& b_pow, bool alternating) {
  const int l_lo = std::max(0, j - (n - k));
  const int l_hi = std::min(k, j);
  const int lp_lo = std::max(0, k - (n - j));
  const int lp_hi = std::min(j, k);
  double sum = 0.0;
  for (int l = l_lo; l <= l_hi; ++l) {
    const double left = comb::binomial(k, l) * comb::binomial(n - k, j - l);
    for (int lp = lp_lo; lp <= lp_hi; ++lp) {
      const double c = left * comb::binomial(n - j, k - lp) * comb::binomial(j, lp);
      const double sign = (alternating && (l + lp) % 2 == 1) ? -1.0 : 1.0;
      sum += sign * c * a_pow[n - j - k + l + lp] * b_pow[j + k - l - lp];
    }
  }
  return sum;
}

// The summand is symmetric under (j, l) <-> (k, l'), so entries are
// evaluated for j <= k and mirrored.
RealMatrix symmetric_sum(int n, double a, double b, bool alternating) {
  const auto a_pow = powers(a, 2 * n);
  const auto b_pow = powers(b, 2 * n);
  RealMatrix m(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= k; ++j) {
      const double v = double_sum(n, j, k, a_pow, b_pow, alternating);
      m(j, k) = v;
      m(k, j) = v;
    }
  }
  return m;
}

}  // namespace

double lz2_survival(double v, double alpha) {
  require_rate(alpha);
  return std::exp(-kPi * v * v / alpha);
}

double pt_ratio(double gamma, double alpha) {
  require_rate(alpha);
  return -std::expm1(-kPi * gamma * gamma / alpha);
}

TransitionMatrix hermitian_M(const SpinSpace& space, double v, double alpha) {
  require_rate(alpha);
  if (!(v >= 0.0)) throw InvalidParameter("hermitian_M: v must be nonnegative");
  const double a = std::exp(-kPi * v * v / alpha);
  const double b = -std::expm1(-kPi * v * v / alpha);
  RealMatrix m = symmetric_sum(space.n(), a, b, true);
  // Cancellation in the alternating sum can leave -eps for vanishing entries.
  m = m.cwiseMax(0.0);
  return {m, Flavor::RawM};
}

TransitionMatrix pt_M(const SpinSpace& space, double gamma, double alpha) {
  require_rate(alpha);
  if (!(gamma > 0.0)) throw InvalidParameter("pt_M: gamma must be positive");
  return {symmetric_sum(space.n(), 1.0, pt_ratio(gamma, alpha), false), Flavor::RawM};
}

TransitionMatrix normalize(const TransitionMatrix& m) {
  if (m.flavor == Flavor::NormalizedP) return m;
  if (m.entries != m.entries.transpose()) {
    throw InvalidParameter("normalize: raw transition matrix is not symmetric");
  }
  TransitionMatrix p{m.entries, Flavor::NormalizedP};
  for (Eigen::Index k = 0; k < p.entries.cols(); ++k) {
    const double total = p.entries.col(k).sum();
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw DegenerateNormalization("normalize: column " + std::to_string(k) +
                                    " has no positive weight");
    }
    p.entries.col(k) /= total;
  }
  return p;
}

RealVector pt_P_column0(const SpinSpace& space, double gamma, double alpha) {
  if (!(gamma > 0.0)) throw InvalidParameter("pt_P_column0: gamma must be positive");
  const double r = pt_ratio(gamma, alpha);
  const int n = space.n();
  const double log_den = n * std::log1p(r);
  RealVector p(space.levels());
  for (int j = 0; j <= n; ++j) {
    // r = 0 only for vanishing gamma^2/alpha; then only j = 0 survives.
    const double r_pow = j == 0 ? 1.0 : std::pow(r, j);
    p(j) = comb::binomial(n, j) * r_pow * std::exp(-log_den);
  }
  return p;
}

TransitionMatrix analytic_transition_matrix(const ModelParams& params) {
  params.validate();
  if (params.kind == ModelKind::Hermitian) {
    TransitionMatrix m = hermitian_M(params.space, params.coupling, params.alpha);
    return normalize(m);
  }
  return normalize(pt_M(params.space, params.coupling, params.alpha));
}

RealVector adiabatic_P(const SpinSpace& space) {
  const int n = space.n();
  RealVector p(space.levels());
  for (int k = 0; k <= n; ++k) p(k) = std::ldexp(comb::binomial(n, k), -n);
  return p;
}

std::vector<Rational> adiabatic_P_exact(const SpinSpace& space) {
  const int n = space.n();
  if (n > 63) throw InvalidDimension("adiabatic_P_exact: 2^n must fit in 64 bits");
  std::vector<Rational> out;
  out.reserve(space.levels());
  const std::uint64_t den = std::uint64_t{1} << n;
  for (int k = 0; k <= n; ++k) {
    std::uint64_t num = comb::binomial_u64(n, k);
    std::uint64_t d = den;
    while (num % 2 == 0 && d > 1) {
      num /= 2;
      d /= 2;
    }
    out.push_back({num, d});
  }
  return out;
}

AdiabaticProjection adiabatic_projection(const ModelParams& params, double t) {
  if (params.kind != ModelKind::PTSymmetric) {
    throw NoExceptionalPoint("adiabatic_projection: requires the PT-symmetric model");
  }
  const double t_plus = params.coupling / params.alpha;
  if (!(t > t_plus)) {
    throw InvalidParameter("adiabatic_projection: t must lie after the second exceptional point");
  }
  AdiabaticProjection out;
  out.t = t;
  out.x = x_ratio(params, t);
  const int n = params.space.n();
  const double scale = std::pow(std::abs(out.x) / 2.0, n);
  out.raw.resize(params.space.levels());
  for (int j = 0; j <= n; ++j) out.raw(j) = comb::binomial(n, j) * scale;
  out.normalized = out.raw / out.raw.sum();
  return out;
}

bool chu_vandermonde_holds(int max_n) {
  for (int n = 0; n <= max_n; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j <= n; ++j) {
        std::uint64_t sum = 0;
        for (int l = 0; l <= std::min(k, j); ++l) {
          sum += comb::binomial_u64(k, l) * comb::binomial_u64(n - k, j - l);
        }
        if (sum != comb::binomial_u64(n, j)) return false;
      }
    }
  }
  return true;
}

}  // namespace lzep
