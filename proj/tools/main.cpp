// Command-line front end: four subcommands over the shared run configuration.
// Flags override config-file values; unset flags leave the config untouched.

#include "cli_lib.hpp"

#include "CLI11.hpp"  // vendored CLI11 single header

#include <qeit/params.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using qeit::cli::RunConfig;

// One flag set shared by every subcommand.  Values land in the plain members;
// the CLI::Option handles let us tell "user passed it" from "default".
struct CommonFlags {
  std::string config_path;
  std::string drive_case = "b";
  double delta_min = -1.0;
  double delta_max = 1.0;
  int steps = 102;
  double alpha2 = 500.0;
  double beta2 = 0.0;
  double alpha_phase = 0.0;
  double gamma2 = 1.0;
  double gamma3 = 1e-3;
  double gindex = 7.5e6;
  double tail_eps = 1e-12;
  std::string format = "csv";
  std::string out_path = "-";
  int jobs = 0;

  CLI::Option* o_case = nullptr;
  CLI::Option* o_delta_min = nullptr;
  CLI::Option* o_delta_max = nullptr;
  CLI::Option* o_steps = nullptr;
  CLI::Option* o_alpha2 = nullptr;
  CLI::Option* o_beta2 = nullptr;
  CLI::Option* o_alpha_phase = nullptr;
  CLI::Option* o_gamma2 = nullptr;
  CLI::Option* o_gamma3 = nullptr;
  CLI::Option* o_gindex = nullptr;
  CLI::Option* o_tail_eps = nullptr;
  CLI::Option* o_jobs = nullptr;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration file")
      ->check(CLI::ExistingFile);
  f.o_case = cmd->add_option("--case", f.drive_case, "drive case: a, b, or c")
                 ->check(CLI::IsMember({"a", "b", "c"}));
  f.o_delta_min = cmd->add_option("--delta-min", f.delta_min, "probe detuning sweep start (units of gamma1)");
  f.o_delta_max = cmd->add_option("--delta-max", f.delta_max, "probe detuning sweep end (units of gamma1)");
  f.o_steps = cmd->add_option("--steps", f.steps, "number of sweep points")->check(CLI::PositiveNumber);
  f.o_alpha2 = cmd->add_option("--alpha2", f.alpha2, "coupling coherent amplitude squared |alpha|^2");
  f.o_beta2 = cmd->add_option("--beta2", f.beta2, "probe coherent amplitude squared |beta|^2");
  f.o_alpha_phase = cmd->add_option("--alpha-phase", f.alpha_phase, "coupling coherent phase (radians)");
  f.o_gamma2 = cmd->add_option("--gamma2", f.gamma2, "rho_ca coherence decay rate gamma2 (units of gamma1)");
  f.o_gamma3 = cmd->add_option("--gamma3", f.gamma3, "ground coherence decay rate gamma3 (units of gamma1)");
  f.o_gindex = cmd->add_option("--gindex", f.gindex, "group-index scale kappa*omega*L-type prefactor");
  f.o_tail_eps =
      cmd->add_option("--tail-eps", f.tail_eps, "certified bound on the discarded photon-number tail mass");
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out_path, "output path ('-' for stdout)");
  f.o_jobs = cmd->add_option("--jobs", f.jobs, "worker threads (0 = hardware concurrency)")
                 ->check(CLI::NonNegativeNumber);
}

// Build the effective RunConfig: config file first, then explicit flags on top.
RunConfig effective_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = qeit::cli::load_config(f.config_path);
  auto set = [](CLI::Option* o) { return o != nullptr && o->count() > 0; };
  if (set(f.o_case)) {
    if (f.drive_case == "a") cfg.drive_case = qeit::DriveCase::a;
    else if (f.drive_case == "b") cfg.drive_case = qeit::DriveCase::b;
    else cfg.drive_case = qeit::DriveCase::c;
  }
  if (set(f.o_delta_min)) cfg.delta_min = f.delta_min;
  if (set(f.o_delta_max)) cfg.delta_max = f.delta_max;
  if (set(f.o_steps)) cfg.delta_steps = f.steps;
  if (set(f.o_alpha2)) cfg.alpha2 = f.alpha2;
  if (set(f.o_beta2)) cfg.beta2 = f.beta2;
  if (set(f.o_alpha_phase)) cfg.alpha_phase = f.alpha_phase;
  if (set(f.o_gamma2)) cfg.params.gamma2 = f.gamma2;
  if (set(f.o_gamma3)) cfg.params.gamma3 = f.gamma3;
  if (set(f.o_gindex)) cfg.params.gindex = f.gindex;
  if (set(f.o_tail_eps)) cfg.tail_eps = f.tail_eps;
  if (set(f.o_jobs)) cfg.jobs = f.jobs;
  return cfg;
}

struct TransientFlags {
  int n1 = 1;
  int n2 = 500;
  double delta1 = 0.0;
  double t_min = 0.0;
  double t_max = 20.0;
  int t_steps = 101;
  int order = 1;

  CLI::Option* o_n1 = nullptr;
  CLI::Option* o_n2 = nullptr;
  CLI::Option* o_delta1 = nullptr;
  CLI::Option* o_t_min = nullptr;
  CLI::Option* o_t_max = nullptr;
  CLI::Option* o_t_steps = nullptr;
  CLI::Option* o_order = nullptr;
};

void add_transient_flags(CLI::App* cmd, TransientFlags& f) {
  f.o_n1 = cmd->add_option("--n1", f.n1, "probe photon number of the initial sector")
               ->check(CLI::NonNegativeNumber);
  f.o_n2 = cmd->add_option("--n2", f.n2, "coupling photon number of the initial sector")
               ->check(CLI::NonNegativeNumber);
  f.o_delta1 = cmd->add_option("--delta1", f.delta1, "probe detuning for the transient (units of gamma1)");
  f.o_t_min = cmd->add_option("--t-min", f.t_min, "first sample time (units of 1/gamma1)");
  f.o_t_max = cmd->add_option("--t-max", f.t_max, "last sample time (units of 1/gamma1)");
  f.o_t_steps = cmd->add_option("--t-steps", f.t_steps, "number of time samples")->check(CLI::PositiveNumber);
  f.o_order = cmd->add_option("--order", f.order, "dark-state perturbative order for the initial state")
                  ->check(CLI::Range(1, 2));
}

void apply_transient_flags(const TransientFlags& f, RunConfig& cfg) {
  auto set = [](CLI::Option* o) { return o != nullptr && o->count() > 0; };
  if (set(f.o_n1)) cfg.transient.n1 = f.n1;
  if (set(f.o_n2)) cfg.transient.n2 = f.n2;
  if (set(f.o_delta1)) cfg.transient.delta1 = f.delta1;
  if (set(f.o_t_min)) cfg.transient.t_min = f.t_min;
  if (set(f.o_t_max)) cfg.transient.t_max = f.t_max;
  if (set(f.o_t_steps)) cfg.transient.t_steps = f.t_steps;
  if (set(f.o_order)) cfg.transient.dark_state_order = f.order;
}

struct SemiclassicalFlags {
  double omega1_bar = 0.5;
  double omega2_bar = 0.5;
  CLI::Option* o_omega1 = nullptr;
  CLI::Option* o_omega2 = nullptr;
};

void add_semiclassical_flags(CLI::App* cmd, SemiclassicalFlags& f) {
  f.o_omega1 = cmd->add_option("--omega1-bar", f.omega1_bar, "mean-field probe Rabi frequency (units of gamma1)");
  f.o_omega2 = cmd->add_option("--omega2-bar", f.omega2_bar, "mean-field coupling Rabi frequency (units of gamma1)");
}

void apply_semiclassical_flags(const SemiclassicalFlags& f, RunConfig& cfg) {
  auto set = [](CLI::Option* o) { return o != nullptr && o->count() > 0; };
  if (set(f.o_omega1)) cfg.omega1_bar = f.omega1_bar;
  if (set(f.o_omega2)) cfg.omega2_bar = f.omega2_bar;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantized-field EIT susceptibility and group-velocity toolkit"};
  app.require_subcommand(1);

  CommonFlags sweep_f, transient_f, uncertainty_f, semiclassical_f;
  TransientFlags transient_extra;
  SemiclassicalFlags semiclassical_extra;

  CLI::App* sweep = app.add_subcommand("sweep", "detuning sweep of susceptibility and group-velocity statistics");
  add_common_flags(sweep, sweep_f);

  CLI::App* transient = app.add_subcommand("transient", "coherence relaxation from a dark-state initial condition");
  add_common_flags(transient, transient_f);
  add_transient_flags(transient, transient_extra);

  CLI::App* uncertainty = app.add_subcommand("uncertainty", "number-phase bound on the group-velocity spread");
  add_common_flags(uncertainty, uncertainty_f);

  CLI::App* semiclassical = app.add_subcommand("semiclassical", "classical-field susceptibility and dispersion slope");
  add_common_flags(semiclassical, semiclassical_f);
  add_semiclassical_flags(semiclassical, semiclassical_extra);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints help or the parse error
    return rc == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) {
      RunConfig cfg = effective_config(sweep_f);
      return qeit::cli::run_sweep(cfg, sweep_f.out_path, sweep_f.format, std::cout, std::cerr);
    }
    if (transient->parsed()) {
      RunConfig cfg = effective_config(transient_f);
      apply_transient_flags(transient_extra, cfg);
      return qeit::cli::run_transient(cfg, transient_f.out_path, transient_f.format, std::cout, std::cerr);
    }
    if (uncertainty->parsed()) {
      RunConfig cfg = effective_config(uncertainty_f);
      return qeit::cli::run_uncertainty(cfg, uncertainty_f.out_path, uncertainty_f.format, std::cout, std::cerr);
    }
    RunConfig cfg = effective_config(semiclassical_f);
    apply_semiclassical_flags(semiclassical_extra, cfg);
    return qeit::cli::run_semiclassical(cfg, semiclassical_f.out_path, semiclassical_f.format, std::cout, std::cerr);
  } catch (const qeit::cli::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const qeit::SingularityError& e) {
    std::cerr << "singularity: " << e.what() << "\n";
    return 2;
  }
}
