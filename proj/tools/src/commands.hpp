#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "lzep/model.hpp"

namespace lzep::cli {

/// Bad flag values detected after parsing; maps to the usage exit code.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModelOptions {
  std::string model = "pt";
  int levels = 2;
  std::string alpha = "1";
  std::optional<double> gamma;
  std::optional<double> v;
};

struct OutputOptions {
  std::string out_dir;  ///< empty: $LZEP_OUT_DIR, then "."
  std::string format = "csv";
};

struct GridCommandOptions {
  ModelOptions model;
  OutputOptions output;
  std::string t_grid;
};

enum class TransitionSource { Analytic, Numeric, Both };

struct TransitionOptions {
  ModelOptions model;
  OutputOptions output;
  std::string alpha_sweep;  ///< overrides model.alpha when set
  TransitionSource source = TransitionSource::Analytic;
  double tol = 1e-10;
  bool all_columns = false;
  std::int64_t max_steps = 2'000'000'000;
};

struct LiftCheckOptions {
  OutputOptions output;
  int min_levels = 2;
  int max_levels = 8;
  int samples = 100;
  std::uint64_t seed = 20240601;
  double tol = 1e-9;
};

struct AdiabaticOptions {
  ModelOptions model;
  OutputOptions output;
  double t = 0.0;
};

/// Model from flags at a given drive rate. Throws UsageError.
ModelParams make_params(const ModelOptions& opts, double alpha);

std::filesystem::path resolve_out_dir(const OutputOptions& opts);

int cmd_spectrum(const GridCommandOptions& opts, std::ostream& out);
int cmd_overlaps(const GridCommandOptions& opts, std::ostream& out);
int cmd_transitions(const TransitionOptions& opts, std::ostream& out);
int cmd_lift_check(const LiftCheckOptions& opts, std::ostream& out);
int cmd_adiabatic(const AdiabaticOptions& opts, std::ostream& out);

}  // namespace lzep::cli
