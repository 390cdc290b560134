#include "cli.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lzep/errors.hpp"
#include "lzep/version.hpp"

namespace lzep::cli {
namespace {

void add_model_flags(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--model", m.model, "hermitian or pt")->check(CLI::IsMember({"hermitian", "pt"}))->capture_default_str();
  cmd->add_option("--n", m.levels, "number of levels N >= 2")->capture_default_str();
  cmd->add_option("--alpha", m.alpha, "drive rate, a value or [log:]start:stop:count")->capture_default_str();
  cmd->add_option("--gamma", m.gamma, "non-Hermitian coupling (pt model, default 1)");
  cmd->add_option("--v", m.v, "Hermitian coupling (hermitian model, default 1)");
}

void add_output_flags(CLI::App* cmd, OutputOptions& o, bool with_format) {
  cmd->add_option("--out", o.out_dir, std::string("output directory (default $") + kOutDirEnv + " or .)");
  if (with_format) cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landau-Zener transitions in N-level Hermitian and PT-symmetric sweeps", "lzep"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GridCommandOptions spectrum, overlaps;
  TransitionOptions transitions;
  LiftCheckOptions lift;
  AdiabaticOptions adiabatic;
  adiabatic.model.levels = 3;

  auto* sp = app.add_subcommand("spectrum", "eigenvalues E_j(t) on a time grid");
  add_model_flags(sp, spectrum.model);
  add_output_flags(sp, spectrum.output, true);
  sp->add_option("--t", spectrum.t_grid, "time grid start:stop:count")->required();

  auto* ov = app.add_subcommand("overlaps", "pairwise overlaps of right eigenvectors on a time grid");
  add_model_flags(ov, overlaps.model);
  add_output_flags(ov, overlaps.output, true);
  ov->add_option("--t", overlaps.t_grid, "time grid start:stop:count")->required();

  auto* tr = app.add_subcommand("transitions", "transition probabilities over a drive-rate sweep");
  add_model_flags(tr, transitions.model);
  add_output_flags(tr, transitions.output, true);
  tr->add_option("--alpha-sweep", transitions.alpha_sweep, "drive-rate grid, same syntax as --alpha");
  tr->add_option("--tol", transitions.tol, "integrator relative tolerance")->capture_default_str();
  tr->add_option("--max-steps", transitions.max_steps, "step budget per trajectory")->capture_default_str();
  tr->add_flag("--all-columns", transitions.all_columns, "integrate every initial state, not only k = 0");
  auto* f_an = tr->add_flag_callback("--analytic", [&] { transitions.source = TransitionSource::Analytic; },
                                     "closed-form matrices only (default)");
  auto* f_nu = tr->add_flag_callback("--numeric", [&] { transitions.source = TransitionSource::Numeric; },
                                     "propagated matrices only");
  auto* f_bo = tr->add_flag_callback("--both", [&] { transitions.source = TransitionSource::Both; },
                                     "both, with their max deviation");
  f_an->excludes(f_nu)->excludes(f_bo);
  f_nu->excludes(f_bo);

  auto* lc = app.add_subcommand("lift-check", "seeded property suite for the SL(2) -> SL(N) lift");
  add_output_flags(lc, lift.output, false);
  lc->add_option("--n-min", lift.min_levels, "smallest N")->capture_default_str();
  lc->add_option("--n-max", lift.max_levels, "largest N")->capture_default_str();
  lc->add_option("--samples", lift.samples, "random group elements per N")->capture_default_str();
  lc->add_option("--seed", lift.seed, "RNG seed")->capture_default_str();
  lc->add_option("--tol", lift.tol, "pass threshold")->capture_default_str();

  auto* ad = app.add_subcommand("adiabatic", "binomial adiabatic limit and its projection cross-check");
  add_model_flags(ad, adiabatic.model);
  add_output_flags(ad, adiabatic.output, false);
  ad->add_option("--t", adiabatic.t, "evaluation time, must exceed gamma/alpha")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version arrive here with a zero exit code.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(spectrum, out);
    if (ov->parsed()) return cmd_overlaps(overlaps, out);
    if (tr->parsed()) return cmd_transitions(transitions, out);
    if (lc->parsed()) return cmd_lift_check(lift, out);
    if (ad->parsed()) return cmd_adiabatic(adiabatic, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidDimension& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace lzep::cli
