#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <vector>

#include <fmt/format.h>

#include "cli.hpp"
#include "grid.hpp"
#include "lzep/analytic.hpp"
#include "lzep/errors.hpp"
#include "lzep/lift_check.hpp"
#include "lzep/propagate.hpp"
#include "lzep/version.hpp"
#include "output.hpp"

namespace lzep::cli {
namespace {

using nlohmann::json;

std::vector<double> grid_or_usage(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  try {
    return parse_grid(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

double single_alpha(const ModelOptions& opts) {
  const auto g = grid_or_usage(opts.alpha, "--alpha");
  if (g.size() != 1) throw UsageError("--alpha must be a single value for this command");
  return g.front();
}

json conventions(const ModelParams& p) {
  json c;
  c["basis"] = "J_z eigenbasis; index j = 0 is m = +J, index n is m = -J";
  c["energies"] = "E_j = 2 (J - j) lambda";
  if (p.kind == ModelKind::PTSymmetric) {
    c["lambda_branch"] =
        "lambda = sqrt(alpha^2 t^2 - gamma^2) >= 0 for |t| > gamma/alpha; "
        "lambda = +i sqrt(gamma^2 - alpha^2 t^2) between the exceptional points; 0 at them";
    c["exceptional_points"] = {-p.coupling / p.alpha, p.coupling / p.alpha};
    c["ep_guard"] = ep_guard(p);
  } else {
    c["lambda_branch"] = "lambda = sqrt(alpha^2 t^2 + v^2) > 0";
  }
  return c;
}

json model_json(const ModelParams& p) {
  json m;
  m["kind"] = to_string(p.kind);
  m["levels"] = p.space.levels();
  m["alpha"] = p.alpha;
  m[p.kind == ModelKind::Hermitian ? "v" : "gamma"] = p.coupling;
  m["hamiltonian"] = p.kind == ModelKind::Hermitian ? "H = -2 alpha t J_z + 2 v J_x"
                                                    : "H = -2 alpha t J_z + 2 i gamma J_x";
  return m;
}

json metadata(const std::string& command, const ModelParams* p) {
  json meta;
  meta["tool"] = "lzep";
  meta["version"] = kVersion;
  meta["command"] = command;
  if (p) {
    meta["model"] = model_json(*p);
    meta["conventions"] = conventions(*p);
  }
  return meta;
}

struct Destination {
  std::filesystem::path dir;
  std::string format;
  std::filesystem::path data(const std::string& stem) const { return dir / (stem + "." + format); }
  std::filesystem::path meta(const std::string& stem) const { return dir / (stem + ".meta.json"); }
};

Destination destination(const OutputOptions& opts, bool csv_allowed) {
  if (opts.format != "csv" && opts.format != "json") throw UsageError("--format must be csv or json");
  Destination d{resolve_out_dir(opts), csv_allowed ? opts.format : "json"};
  std::filesystem::create_directories(d.dir);
  return d;
}

void report_written(std::ostream& out, const std::filesystem::path& p) { out << "wrote " << p.string() << '\n'; }

std::vector<double> complex_parts(const StateVector& v, bool imag) {
  std::vector<double> out;
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(imag ? v(j).imag() : v(j).real());
  return out;
}

json matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(number_json(m(j, k)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ModelParams make_params(const ModelOptions& opts, double alpha) {
  if (opts.levels < 2) throw UsageError("--n must be at least 2");
  if (!(alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (opts.model == "pt") {
    if (opts.v) throw UsageError("--v applies to the hermitian model; use --gamma");
    const double g = opts.gamma.value_or(1.0);
    if (!(g > 0.0)) throw UsageError("--gamma must be positive");
    return ModelParams::pt_symmetric(opts.levels, alpha, g);
  }
  if (opts.model == "hermitian") {
    if (opts.gamma) throw UsageError("--gamma applies to the pt model; use --v");
    const double v = opts.v.value_or(1.0);
    if (!(v >= 0.0)) throw UsageError("--v must be nonnegative");
    return ModelParams::hermitian(opts.levels, alpha, v);
  }
  throw UsageError("--model must be hermitian or pt");
}

std::filesystem::path resolve_out_dir(const OutputOptions& opts) {
  if (!opts.out_dir.empty()) return opts.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return ".";
}

int cmd_spectrum(const GridCommandOptions& opts, std::ostream& out) {
  const ModelParams p = make_params(opts.model, single_alpha(opts.model));
  const auto ts = grid_or_usage(opts.t_grid, "--t");
  const Destination dest = destination(opts.output, true);
  const auto rows = spectrum_sweep(p, ts);
  const int dim = p.space.levels();

  if (dest.format == "csv") {
    std::vector<std::string> header{"t"};
    for (int j = 0; j < dim; ++j) {
      header.push_back(fmt::format("re_E_{}", j));
      header.push_back(fmt::format("im_E_{}", j));
    }
    header.push_back("at_ep");
    CsvTable table(header);
    for (const SpectrumRow& r : rows) {
      std::vector<std::string> cells{format_number(r.t)};
      for (int j = 0; j < dim; ++j) {
        cells.push_back(format_number(r.energies(j).real()));
        cells.push_back(format_number(r.energies(j).imag()));
      }
      cells.push_back(r.at_ep ? "1" : "0");
      table.add_row(std::move(cells));
    }
    table.write(dest.data("spectrum"));
  } else {
    json doc;
    doc["rows"] = json::array();
    for (const SpectrumRow& r : rows) {
      doc["rows"].push_back(
          {{"t", r.t}, {"re_E", complex_parts(r.energies, false)}, {"im_E", complex_parts(r.energies, true)}, {"at_ep", r.at_ep}});
    }
    write_json(dest.data("spectrum"), doc);
  }
  json meta = metadata("spectrum", &p);
  meta["rows"] = rows.size();
  meta["t_grid"] = opts.t_grid;
  meta["files"] = {dest.data("spectrum").filename().string()};
  write_json(dest.meta("spectrum"), meta);
  report_written(out, dest.data("spectrum"));
  report_written(out, dest.meta("spectrum"));
  return kExitOk;
}

int cmd_overlaps(const GridCommandOptions& opts, std::ostream& out) {
  const ModelParams p = make_params(opts.model, single_alpha(opts.model));
  const auto ts = grid_or_usage(opts.t_grid, "--t");
  const Destination dest = destination(opts.output, true);
  const int dim = p.space.levels();

  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) pairs.emplace_back(j, k);

  struct Row {
    double t;
    RealMatrix ov;
    bool at_ep;
  };
  std::vector<Row> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    // All eigenvectors coalesce at an exceptional point of this order.
    if (near_ep(p, t)) {
      rows.push_back({t, RealMatrix::Ones(dim, dim), true});
    } else {
      rows.push_back({t, overlap_matrix(p, t), false});
    }
  }

  if (dest.format == "csv") {
    std::vector<std::string> header{"t"};
    for (auto [j, k] : pairs) header.push_back(fmt::format("ov_{}_{}", j, k));
    header.push_back("at_ep");
    CsvTable table(header);
    for (const Row& r : rows) {
      std::vector<std::string> cells{format_number(r.t)};
      for (auto [j, k] : pairs) cells.push_back(format_number(r.ov(j, k)));
      cells.push_back(r.at_ep ? "1" : "0");
      table.add_row(std::move(cells));
    }
    table.write(dest.data("overlaps"));
  } else {
    json doc;
    doc["rows"] = json::array();
    for (const Row& r : rows) doc["rows"].push_back({{"t", r.t}, {"overlaps", matrix_json(r.ov)}, {"at_ep", r.at_ep}});
    write_json(dest.data("overlaps"), doc);
  }
  json meta = metadata("overlaps", &p);
  meta["rows"] = rows.size();
  meta["t_grid"] = opts.t_grid;
  meta["overlap"] = "|<phi_j|phi_k>| / (|phi_j| |phi_k|) of right eigenvectors";
  meta["files"] = {dest.data("overlaps").filename().string()};
  write_json(dest.meta("overlaps"), meta);
  report_written(out, dest.data("overlaps"));
  report_written(out, dest.meta("overlaps"));
  return kExitOk;
}

int cmd_transitions(const TransitionOptions& opts, std::ostream& out) {
  const std::string& text = opts.alpha_sweep.empty() ? opts.model.alpha : opts.alpha_sweep;
  const auto alphas = grid_or_usage(text, opts.alpha_sweep.empty() ? "--alpha" : "--alpha-sweep");
  const ModelParams base = make_params(opts.model, alphas.front());
  for (double a : alphas) make_params(opts.model, a);
  const Destination dest = destination(opts.output, true);
  const int dim = base.space.levels();

  IntegratorConfig cfg;
  cfg.rel_tol = opts.tol;
  cfg.abs_tol = opts.tol * 1e-2;
  cfg.max_steps = opts.max_steps;
  try {
    cfg.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string("--tol: ") + e.what());
  }

  const bool want_analytic = opts.source != TransitionSource::Numeric;
  const bool want_numeric = opts.source != TransitionSource::Analytic;
  const bool both = opts.source == TransitionSource::Both;

  std::vector<SweepRow> rows;
  if (want_numeric) {
    std::vector<int> columns;
    if (!opts.all_columns) columns.push_back(0);
    rows = alpha_sweep(base, alphas, cfg, columns);
  } else {
    for (double a : alphas) {
      SweepRow r;
      r.alpha = a;
      ModelParams p = base;
      p.alpha = a;
      r.analytic = analytic_transition_matrix(p).entries;
      r.ok = true;
      r.status = "ok";
      rows.push_back(std::move(r));
    }
  }

  bool any_failed = false;
  for (const SweepRow& r : rows) any_failed = any_failed || !r.ok;

  std::vector<std::string> header{"alpha", "source"};
  for (int j = 0; j < dim; ++j) header.push_back(fmt::format("P_{}0", j));
  if (both) header.push_back("max_dev");
  header.push_back("status");

  json doc;
  doc["rows"] = json::array();
  CsvTable table(header);
  auto emit = [&](const SweepRow& r, const char* source, const RealMatrix& m) {
    std::vector<std::string> cells{format_number(r.alpha), source};
    for (int j = 0; j < dim; ++j) cells.push_back(format_number(m(j, 0)));
    if (both) cells.push_back(format_number(r.max_deviation));
    const std::string status = std::string(source) == "analytic" ? "ok" : r.status;
    cells.push_back(status);
    table.add_row(std::move(cells));
    json row{{"alpha", r.alpha}, {"source", source}, {"matrix", matrix_json(m)}, {"status", status}};
    if (both) row["max_dev"] = number_json(r.max_deviation);
    if (std::string(source) == "numeric") row["span"] = r.span;
    doc["rows"].push_back(row);
  };
  for (const SweepRow& r : rows) {
    if (want_analytic) emit(r, "analytic", r.analytic);
    if (want_numeric) emit(r, "numeric", r.numeric.size() ? r.numeric : RealMatrix::Constant(dim, dim, NAN));
  }

  json meta = metadata("transitions", &base);
  meta["alpha_grid"] = text;
  meta["source"] = both ? "both" : (want_numeric ? "numeric" : "analytic");
  meta["flavor"] = "normalized P (columns sum to 1); P_jk is the population of level j after starting in k";
  if (want_numeric) {
    meta["integrator"] = {{"method", "Dormand-Prince 5(4), PI step control, interaction frame"},
                          {"rel_tol", cfg.rel_tol},
                          {"abs_tol", cfg.abs_tol},
                          {"span", "T = t_span_factor * max(coupling, 1) / alpha, doubled until columns change < column_tol"},
                          {"t_span_factor", cfg.t_span_factor},
                          {"column_tol", cfg.column_tol},
                          {"max_doublings", cfg.max_doublings},
                          {"max_steps", cfg.max_steps},
                          {"asymptotic_basis", "instantaneous eigenvectors at +-T, labelled by their diabatic limit"},
                          {"columns", opts.all_columns ? "all" : "0"}};
  }
  if (dest.format == "csv") {
    table.write(dest.data("transitions"));
    write_json(dest.dir / "transitions.matrices.json", doc);
    meta["files"] = {"transitions.csv", "transitions.matrices.json"};
    report_written(out, dest.data("transitions"));
    report_written(out, dest.dir / "transitions.matrices.json");
  } else {
    write_json(dest.data("transitions"), doc);
    meta["files"] = {"transitions.json"};
    report_written(out, dest.data("transitions"));
  }
  write_json(dest.meta("transitions"), meta);
  report_written(out, dest.meta("transitions"));

  if (both) {
    double worst = 0.0;
    for (const SweepRow& r : rows)
      if (r.ok) worst = std::max(worst, r.max_deviation);
    out << fmt::format("max |numeric - analytic| = {:.3e}\n", worst);
  }
  if (any_failed) {
    out << "some rows failed; see the status column\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_lift_check(const LiftCheckOptions& opts, std::ostream& out) {
  if (opts.min_levels < 2 || opts.max_levels < opts.min_levels) throw UsageError("need 2 <= --n-min <= --n-max");
  if (opts.samples < 1) throw UsageError("--samples must be positive");
  const Destination dest = destination(opts.output, false);
  LiftCheckConfig cfg;
  cfg.min_levels = opts.min_levels;
  cfg.max_levels = opts.max_levels;
  cfg.samples = opts.samples;
  cfg.seed = opts.seed;
  cfg.tolerance = opts.tol;
  const LiftCheckReport report = run_lift_checks(cfg);

  json doc;
  doc["rows"] = json::array();
  double worst = 0.0;
  for (const LiftCheckRow& r : report.rows) {
    out << fmt::format("{} N={}: homomorphism {:.17g}, equivariance {:.17g}, determinant {:.17g}, unitarity {:.17g}\n",
                       r.passed ? "PASS" : "FAIL", r.levels, r.homomorphism, r.equivariance, r.determinant,
                       r.unitarity);
    worst = std::max({worst, r.homomorphism, r.equivariance, r.determinant, r.unitarity});
    doc["rows"].push_back({{"levels", r.levels},
                           {"homomorphism", r.homomorphism},
                           {"equivariance", r.equivariance},
                           {"determinant", r.determinant},
                           {"unitarity", r.unitarity},
                           {"passed", r.passed}});
  }
  doc["passed"] = report.passed;
  doc["max_error"] = worst;
  out << fmt::format("{}: max error {:.17g} (tolerance {:.3g})\n", report.passed ? "all properties hold" : "FAILED",
                     worst, opts.tol);
  write_json(dest.data("lift_check"), doc);

  json meta = metadata("lift-check", nullptr);
  meta["config"] = {{"n_min", cfg.min_levels},
                    {"n_max", cfg.max_levels},
                    {"samples", cfg.samples},
                    {"seed", cfg.seed},
                    {"tolerance", cfg.tolerance},
                    {"sl2_samples", "u1 diag(e^eta, e^-eta) u2, |eta| <= 1"}};
  meta["files"] = {"lift_check.json"};
  write_json(dest.meta("lift_check"), meta);
  report_written(out, dest.data("lift_check"));
  report_written(out, dest.meta("lift_check"));
  return report.passed ? kExitOk : kExitProperty;
}

int cmd_adiabatic(const AdiabaticOptions& opts, std::ostream& out) {
  if (opts.model.model != "pt") throw UsageError("adiabatic applies to the pt model");
  const ModelParams p = make_params(opts.model, single_alpha(opts.model));
  if (!(opts.t > p.coupling / p.alpha)) {
    throw UsageError(fmt::format("--t must exceed gamma/alpha = {}", p.coupling / p.alpha));
  }
  const Destination dest = destination(opts.output, false);
  const AdiabaticProjection proj = adiabatic_projection(p, opts.t);
  const RealVector target = adiabatic_P(p.space);
  const auto exact = adiabatic_P_exact(p.space);
  const EigenSystem es = eigensystem_at(p, opts.t);
  const EPData ep = ep_data(p);
  const int dim = p.space.levels();

  RealVector inner(dim);
  for (int j = 0; j < dim; ++j) inner(j) = std::norm(es.left_vectors.col(j).dot(ep.ep_vector_plus));
  const double dev_normalized = (proj.normalized - target).cwiseAbs().maxCoeff();
  const double dev_cross = (inner - proj.raw).cwiseAbs().maxCoeff();

  auto vec = [](const RealVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
  };
  json doc;
  doc["t"] = opts.t;
  doc["x"] = {proj.x.real(), proj.x.imag()};
  doc["adiabatic_P"] = vec(target);
  doc["adiabatic_P_exact"] = json::array();
  for (const Rational& r : exact) doc["adiabatic_P_exact"].push_back(fmt::format("{}/{}", r.num, r.den));
  doc["raw"] = vec(proj.raw);
  doc["normalized"] = vec(proj.normalized);
  doc["inner_product"] = vec(inner);
  doc["max_dev_normalized"] = dev_normalized;
  doc["max_dev_inner_product"] = dev_cross;
  write_json(dest.data("adiabatic"), doc);

  json meta = metadata("adiabatic", &p);
  meta["definitions"] = {{"raw", "|c_j|^2 = C(n, j) |x|^n / 2^n, x = (gamma - alpha t) / lambda"},
                         {"inner_product", "|<chi_j|phi_EP+>|^2 with biorthonormal left vectors chi_j"},
                         {"normalized", "raw / sum(raw)"}};
  meta["files"] = {"adiabatic.json"};
  write_json(dest.meta("adiabatic"), meta);

  out << "adiabatic_P:";
  for (const Rational& r : exact) out << ' ' << r.num << '/' << r.den;
  out << '\n'
      << fmt::format("normalized vs binomial {:.3e}, inner-product cross-check {:.3e}\n", dev_normalized, dev_cross);
  report_written(out, dest.data("adiabatic"));
  report_written(out, dest.meta("adiabatic"));
  return kExitOk;
}

}  // namespace lzep::cli
