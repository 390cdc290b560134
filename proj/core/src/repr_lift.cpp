#include "lzep/repr_lift.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "lzep/combinatorics.hpp"
#include "lzep/errors.hpp"

namespace lzep {
namespace {

void require_sl2(const OperatorMatrix& d) {
  if (d.rows() != 2 || d.cols() != 2) {
    throw InvalidDimension("lift: group element must be 2 x 2");
  }
  const double defect = unimodularity_defect(d);
  if (!(defect < kUnimodularTolerance)) {
    throw NotUnimodular("lift: |det(d) - 1| = " + std::to_string(defect) + " exceeds tolerance",
                        defect);
  }
}

// Entries of d in the order d11, d12, d21, d22.
std::array<Complex, 4> entries(const OperatorMatrix& d) {
  return {d(0, 0), d(0, 1), d(1, 0), d(1, 1)};
}

// Powers p[a][e] = d_a^e for e = 0..n; p[a][0] = 1 covers 0^0.
class PowerTable {
 public:
  PowerTable(const std::array<Complex, 4>& base, int n) : n_(n), data_(4 * (n + 1)) {
    for (int a = 0; a < 4; ++a) {
      data_[a * (n + 1)] = 1.0;
      for (int e = 1; e <= n; ++e) data_[a * (n + 1) + e] = data_[a * (n + 1) + e - 1] * base[a];
    }
  }
  Complex operator()(int a, int e) const { return data_[a * (n_ + 1) + e]; }

 private:
  int n_;
  std::vector<Complex> data_;
};

Complex entry_direct(const PowerTable& pw, int n, int j, int k) {
  const int l_min = std::max(k - (n - j), 0);
  const int l_max = std::min(k, j);
  const double norm = std::sqrt(comb::binomial(n, j) / comb::binomial(n, k));
  Complex sum = 0.0;
  for (int l = l_min; l <= l_max; ++l) {
    const double weight = comb::binomial(n - j, k - l) * comb::binomial(j, l);
    sum += weight * pw(0, n - j - k + l) * pw(1, k - l) * pw(2, j - l) * pw(3, l);
  }
  return norm * sum;
}

// Same sum, each summand carried as (ln|.|, arg) so that factorial ratios
// never materialize.
Complex entry_log(const std::array<Complex, 4>& d, int n, int j, int k) {
  std::array<double, 4> log_mag{};
  std::array<double, 4> phase{};
  for (int a = 0; a < 4; ++a) {
    log_mag[a] = d[a] == Complex(0.0) ? 0.0 : std::log(std::abs(d[a]));
    phase[a] = std::arg(d[a]);
  }
  const int l_min = std::max(k - (n - j), 0);
  const int l_max = std::min(k, j);
  const double log_norm = 0.5 * (comb::log_binomial(n, j) - comb::log_binomial(n, k));
  Complex sum = 0.0;
  for (int l = l_min; l <= l_max; ++l) {
    const std::array<int, 4> expo{n - j - k + l, k - l, j - l, l};
    bool vanishes = false;
    double mag = log_norm + comb::log_binomial(n - j, k - l) + comb::log_binomial(j, l);
    double arg = 0.0;
    for (int a = 0; a < 4; ++a) {
      if (expo[a] == 0) continue;
      if (d[a] == Complex(0.0)) {
        vanishes = true;
        break;
      }
      mag += expo[a] * log_mag[a];
      arg += expo[a] * phase[a];
    }
    if (!vanishes) sum += std::polar(std::exp(mag), arg);
  }
  return sum;
}

}  // namespace

double unimodularity_defect(const OperatorMatrix& d) {
  return std::abs(d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0) - 1.0);
}

OperatorMatrix lift(const OperatorMatrix& d, const SpinSpace& space) {
  require_sl2(d);
  if (space.levels() == 2) return d;
  const int n = space.n();
  const int dim = space.levels();
  OperatorMatrix out(dim, dim);
  const auto base = entries(d);
  if (dim <= kDirectLiftMaxLevels) {
    const PowerTable pw(base, n);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) out(j, k) = entry_direct(pw, n, j, k);
  } else {
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) out(j, k) = entry_log(base, n, j, k);
  }
  return out;
}

Complex lift_entry(const OperatorMatrix& d, const SpinSpace& space, int j, int k) {
  require_sl2(d);
  const int n = space.n();
  if (j < 0 || j > n || k < 0 || k > n) {
    throw IndexOutOfRange("lift_entry: index (" + std::to_string(j) + ", " + std::to_string(k) +
                          ") outside 0.." + std::to_string(n));
  }
  if (space.levels() == 2) return d(j, k);
  const auto base = entries(d);
  if (space.levels() <= kDirectLiftMaxLevels) return entry_direct(PowerTable(base, n), n, j, k);
  return entry_log(base, n, j, k);
}

}  // namespace lzep
