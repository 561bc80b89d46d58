#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qeit/qeit.hpp"

namespace qeit::cli {

// Configuration / flag problems: exit code 1.  Numerical singularities
// (qeit::SingularityError) map to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TransientSpec {
  std::int64_t n1 = 1;
  std::int64_t n2 = 500;
  double delta1 = 0.0;
  double t_min = 0.0;
  double t_max = 20.0;
  int t_steps = 101;
  int dark_state_order = 1;
};

struct OutputSpec {
  std::string quantity;  // chi_mean | chi_fluct | vg | uncertainty | transient
  std::string format;    // csv | json
  std::string path;
};

struct RunConfig {
  DriveCase drive_case = DriveCase::b;
  SystemParams params;  // defaults are the standard calibration (see params.hpp)
  double alpha2 = 500.0;
  double beta2 = 0.0;
  double alpha_phase = 0.0;  // radians
  double delta_min = -1.0;
  double delta_max = 1.0;
  int delta_steps = 102;
  double tail_eps = 1e-12;
  int jobs = 0;  // 0 = all available cores
  std::optional<double> c_mps;  // optional SI speed of light scale for vg_mps
  double omega1_bar = 0.5;  // semiclassical curve inputs
  double omega2_bar = 0.5;
  TransientSpec transient;
  std::vector<OutputSpec> outputs;

  void validate() const;
  CoherentPair fields() const;
  std::vector<double> delta_grid() const;
  int effective_jobs() const;
};

// JSON config ingestion; unknown keys are rejected with a list of offenders.
RunConfig parse_config_json(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

// Deterministic table serialization.  Cells are preformatted strings; the
// null marker is the literal `null` in both formats (JSON emits a real null).
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string format_double(double v);  // %.17g, round-trip exact
extern const std::string kNullCell;

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Subcommand drivers.  Each writes the requested primary output (path "-" =
// stdout) plus, for CSV, a sibling .json mirror, then processes any
// config-level `outputs` entries it knows how to produce.  Returns the
// process exit code.
int run_sweep(const RunConfig& cfg, const std::string& out_path, const std::string& format,
              std::ostream& out, std::ostream& err);
int run_transient(const RunConfig& cfg, const std::string& out_path, const std::string& format,
                  std::ostream& out, std::ostream& err);
int run_uncertainty(const RunConfig& cfg, const std::string& out_path, const std::string& format,
                    std::ostream& out, std::ostream& err);
int run_semiclassical(const RunConfig& cfg, const std::string& out_path, const std::string& format,
                      std::ostream& out, std::ostream& err);

}  // namespace qeit::cli
