#include "cli_lib.hpp"

#include "json.hpp"  // vendored nlohmann/json single header

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace qeit::cli {

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> kQuantities = {"chi_mean", "chi_fluct", "vg", "uncertainty",
                                           "transient"};

DriveCase parse_case(const std::string& s) {
  if (s == "a") return DriveCase::a;
  if (s == "b") return DriveCase::b;
  if (s == "c") return DriveCase::c;
  throw ValidationError("case must be one of a, b, c (got '" + s + "')");
}

double require_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t require_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ValidationError("config key '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  std::vector<std::string> bad;
  for (const auto& item : obj.items())
    if (!known.count(item.key())) bad.push_back(item.key());
  if (!bad.empty()) {
    std::string msg = "unknown config key(s) in " + where + ":";
    for (const auto& k : bad) msg += " '" + k + "'";
    throw ValidationError(msg);
  }
}

std::string mirror_path(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".json";
  return csv_path + ".json";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw ValidationError("failed writing output file '" + path + "'");
}

// Emit the table at `path` in `format`; CSV additionally gets a JSON mirror
// next to it.  path "-" streams to `out` without a mirror.
void emit(const Table& t, const std::string& path, const std::string& format, std::ostream& out) {
  if (format != "csv" && format != "json")
    throw ValidationError("format must be csv or json (got '" + format + "')");
  const std::string text = (format == "csv") ? to_csv(t) : to_json(t);
  if (path == "-") {
    out << text;
    return;
  }
  write_file(path, text);
  if (format == "csv") write_file(mirror_path(path), to_json(t));
}

std::vector<std::pair<std::string, std::string>> base_metadata(const RunConfig& cfg,
                                                              const std::string& command,
                                                              const std::string& quantity) {
  std::vector<std::pair<std::string, std::string>> md;
  md.emplace_back("tool", "qeit");
  md.emplace_back("version", qeit::version);
  md.emplace_back("command", command);
  md.emplace_back("quantity", quantity);
  md.emplace_back("case", to_string(cfg.drive_case));
  md.emplace_back("gamma1", format_double(cfg.params.gamma1));
  md.emplace_back("gamma2", format_double(cfg.params.gamma2));
  md.emplace_back("gamma3", format_double(cfg.params.gamma3));
  md.emplace_back("g1", format_double(cfg.params.g1));
  md.emplace_back("g2", format_double(cfg.params.g2));
  md.emplace_back("kappa", format_double(cfg.params.kappa));
  md.emplace_back("gindex", format_double(cfg.params.gindex));
  md.emplace_back("alpha2", format_double(cfg.alpha2));
  md.emplace_back("beta2", format_double(cfg.beta2));
  md.emplace_back("alpha_phase", format_double(cfg.alpha_phase));
  md.emplace_back("delta_min", format_double(cfg.delta_min));
  md.emplace_back("delta_max", format_double(cfg.delta_max));
  md.emplace_back("delta_steps", std::to_string(cfg.delta_steps));
  md.emplace_back("tail_eps", format_double(cfg.tail_eps));
  md.emplace_back("c_mps", cfg.c_mps ? format_double(*cfg.c_mps) : kNullCell);
  // The parallelism degree is execution machinery, not a model parameter;
  // recording it would break byte-identity across --jobs settings.
  return md;
}

struct VgColumns {
  std::string mean = kNullCell;
  std::string std_dev = kNullCell;
  std::string rel = kNullCell;
  std::string mps = kNullCell;
  std::string regime = kNullCell;
  std::string error;  // nonempty marks a per-row vg singularity
};

VgColumns vg_columns(const RunConfig& cfg, double delta1) {
  VgColumns out;
  if (cfg.drive_case == DriveCase::c) return out;  // no coupling-mode vg statistics
  try {
    if (cfg.drive_case == DriveCase::a) {
      const VgSector v = vg_sector(cfg.params, cfg.alpha2, delta1);
      if (v.regime == VgRegime::pole) throw SingularityError("group-velocity pole at the mean");
      out.mean = format_double(v.vg_over_c);
      if (cfg.c_mps) out.mps = format_double(v.vg_over_c * *cfg.c_mps);
      out.regime = to_string(v.regime);
    } else {
      const GroupVelocityStats v = vg_stats(cfg.params, cfg.fields(), delta1, cfg.tail_eps);
      out.mean = format_double(v.vg_mean);
      out.std_dev = format_double(v.vg_std);
      out.rel = format_double(v.rel_fluct);
      if (cfg.c_mps) out.mps = format_double(v.vg_mean * *cfg.c_mps);
      out.regime = to_string(v.regime);
    }
  } catch (const SingularityError& ex) {
    out = VgColumns{};
    out.regime = "singular";
    out.error = ex.what();
  }
  return out;
}

Table sweep_table(const RunConfig& cfg, const std::string& command, const std::string& quantity,
                  std::vector<std::string>& errors) {
  const std::vector<double> grid = cfg.delta_grid();
  const std::vector<SweepPoint> points = fluctuation_sweep(
      cfg.drive_case, cfg.params, cfg.fields(), grid, cfg.tail_eps, cfg.effective_jobs());

  const bool want_chi = quantity != "vg";
  const bool want_std = quantity == "chi_fluct" || quantity == "sweep";
  const bool want_vg = quantity == "vg" || quantity == "sweep";

  Table t;
  t.metadata = base_metadata(cfg, command, quantity);
  t.columns = {"delta1"};
  if (want_chi) {
    t.columns.push_back("chi1_mean");
    t.columns.push_back("chi2_mean");
  }
  if (want_std) {
    t.columns.insert(t.columns.end(), {"chi1_std", "chi2_std", "p1", "p2"});
  }
  if (want_vg) {
    t.columns.insert(t.columns.end(),
                     {"vg_over_c_mean", "vg_over_c_std", "vg_rel_fluct", "vg_mps", "regime_flag"});
  }

  for (const SweepPoint& pt : points) {
    std::vector<std::string> row;
    row.push_back(format_double(pt.delta1));
    if (want_chi) {
      if (pt.ok) {
        row.push_back(format_double(pt.stats.chi1_mean));
        row.push_back(format_double(pt.stats.chi2_mean));
      } else {
        row.insert(row.end(), {kNullCell, kNullCell});
        errors.push_back("delta1=" + format_double(pt.delta1) + ": " + pt.error);
      }
    }
    if (want_std) {
      if (pt.ok && pt.stats.distributional) {
        row.push_back(format_double(pt.stats.chi1_std));
        row.push_back(format_double(pt.stats.chi2_std));
        row.push_back(pt.stats.p1_defined ? format_double(pt.stats.p1) : kNullCell);
        row.push_back(pt.stats.p2_defined ? format_double(pt.stats.p2) : kNullCell);
      } else {
        row.insert(row.end(), {kNullCell, kNullCell, kNullCell, kNullCell});
      }
    }
    if (want_vg) {
      const VgColumns v = vg_columns(cfg, pt.delta1);
      if (!v.error.empty())
        errors.push_back("delta1=" + format_double(pt.delta1) + ": " + v.error);
      row.insert(row.end(), {v.mean, v.std_dev, v.rel, v.mps, v.regime});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table uncertainty_table(const RunConfig& cfg, const std::string& command) {
  const std::complex<double> alpha =
      std::sqrt(cfg.alpha2) * std::complex<double>(std::cos(cfg.alpha_phase),
                                                   std::sin(cfg.alpha_phase));
  Table t;
  t.metadata = base_metadata(cfg, command, "uncertainty");
  t.columns = {"delta1",   "lhs",      "rhs",     "satisfied", "slope_F",
               "dvg_linear", "dvg_exact", "cos_std", "sin_mean",  "delta_n"};
  for (double d : cfg.delta_grid()) {
    const UncertaintyReport r = uncertainty_bound(cfg.params, alpha, d, cfg.tail_eps);
    t.rows.push_back({format_double(d), format_double(r.lhs), format_double(r.rhs),
                      r.satisfied ? "true" : "false", format_double(r.slope_F),
                      format_double(r.dvg_linear), format_double(r.dvg_exact),
                      format_double(r.cos_std), format_double(r.sin_mean),
                      format_double(r.delta_n)});
  }
  return t;
}

Table transient_table(const RunConfig& cfg, const std::string& command) {
  const TransientSpec& ts = cfg.transient;
  const SectorSystem sys =
      build_sector(cfg.params, cfg.drive_case, ts.n1, ts.n2, ts.delta1);
  const DarkState ds =
      dark_state(cfg.params, ts.n1, ts.n2, ts.delta1, ts.dark_state_order);
  CoherenceVector r0;
  r0.rho_ab = ds.c_a * std::conj(ds.c_b);
  r0.rho_cb = ds.c_c * std::conj(ds.c_b);
  r0.rho_ca = ds.c_c * std::conj(ds.c_a);

  Table t;
  t.metadata = base_metadata(cfg, command, "transient");
  t.metadata.emplace_back("n1", std::to_string(ts.n1));
  t.metadata.emplace_back("n2", std::to_string(ts.n2));
  t.metadata.emplace_back("transient_delta1", format_double(ts.delta1));
  t.metadata.emplace_back("t_min", format_double(ts.t_min));
  t.metadata.emplace_back("t_max", format_double(ts.t_max));
  t.metadata.emplace_back("t_steps", std::to_string(ts.t_steps));
  t.metadata.emplace_back("dark_state_order", std::to_string(ts.dark_state_order));
  t.columns = {"t",         "re_rho_ab", "im_rho_ab", "re_rho_cb",
               "im_rho_cb", "re_rho_ca", "im_rho_ca"};
  for (int i = 0; i < ts.t_steps; ++i) {
    const double time =
        (ts.t_steps == 1)
            ? ts.t_min
            : ts.t_min + static_cast<double>(i) * (ts.t_max - ts.t_min) / (ts.t_steps - 1);
    const CoherenceVector r = evolve(sys, r0, time);
    t.rows.push_back({format_double(time), format_double(r.rho_ab.real()),
                      format_double(r.rho_ab.imag()), format_double(r.rho_cb.real()),
                      format_double(r.rho_cb.imag()), format_double(r.rho_ca.real()),
                      format_double(r.rho_ca.imag())});
  }
  return t;
}

Table semiclassical_table(const RunConfig& cfg, const std::string& command) {
  Table t;
  t.metadata = base_metadata(cfg, command, "semiclassical");
  t.metadata.emplace_back("omega1_bar", format_double(cfg.omega1_bar));
  t.metadata.emplace_back("omega2_bar", format_double(cfg.omega2_bar));
  t.columns = {"delta1", "chi", "dchi_domega"};
  for (double d : cfg.delta_grid()) {
    const SemiclassicalChi s = semiclassical_chi(cfg.params, cfg.omega1_bar, cfg.omega2_bar, d);
    t.rows.push_back({format_double(d), format_double(s.chi), format_double(s.dchi_domega)});
  }
  return t;
}

// Produce one config-level `outputs` entry.  Errors accumulate in `errors`.
void emit_output_spec(const RunConfig& cfg, const OutputSpec& spec, const std::string& command,
                      std::vector<std::string>& errors, std::ostream& out) {
  Table t;
  if (spec.quantity == "uncertainty") {
    t = uncertainty_table(cfg, command);
  } else if (spec.quantity == "transient") {
    t = transient_table(cfg, command);
  } else {
    t = sweep_table(cfg, command, spec.quantity, errors);
  }
  emit(t, spec.path, spec.format, out);
}

}  // namespace

const std::string kNullCell = "null";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& ex) {
    throw ValidationError(ex.what());
  }
  auto finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
  };
  finite(alpha2, "alpha2");
  finite(beta2, "beta2");
  finite(alpha_phase, "alpha_phase");
  finite(delta_min, "delta_min");
  finite(delta_max, "delta_max");
  if (alpha2 < 0.0) throw ValidationError("alpha2 must be >= 0");
  if (beta2 < 0.0) throw ValidationError("beta2 must be >= 0");
  if (delta_min > delta_max) throw ValidationError("delta_min must be <= delta_max");
  if (delta_steps < 1) throw ValidationError("delta_steps must be >= 1");
  if (!(tail_eps > 0.0 && tail_eps < 1.0)) throw ValidationError("tail_eps must lie in (0, 1)");
  if (jobs < 0) throw ValidationError("jobs must be >= 0 (0 = all cores)");
  if (c_mps && !(*c_mps > 0.0)) throw ValidationError("c_mps must be > 0");
  if (omega1_bar < 0.0 || omega2_bar < 0.0)
    throw ValidationError("omega1_bar/omega2_bar must be >= 0");
  if (transient.n1 < 0 || transient.n2 < 0)
    throw ValidationError("transient n1/n2 must be >= 0");
  if (transient.t_min < 0.0 || transient.t_max < transient.t_min)
    throw ValidationError("transient time grid must satisfy 0 <= t_min <= t_max");
  if (transient.t_steps < 1) throw ValidationError("transient t_steps must be >= 1");
  if (transient.dark_state_order != 1 && transient.dark_state_order != 2)
    throw ValidationError("dark_state_order must be 1 or 2");
  for (const OutputSpec& o : outputs) {
    if (!kQuantities.count(o.quantity))
      throw ValidationError("unknown output quantity '" + o.quantity + "'");
    if (o.format != "csv" && o.format != "json")
      throw ValidationError("output format must be csv or json (got '" + o.format + "')");
    if (o.path.empty()) throw ValidationError("output path must be nonempty");
  }
}

CoherentPair RunConfig::fields() const {
  CoherentPair f;
  const double r = std::sqrt(alpha2);
  f.alpha = {r * std::cos(alpha_phase), r * std::sin(alpha_phase)};
  f.beta = {std::sqrt(beta2), 0.0};
  return f;
}

std::vector<double> RunConfig::delta_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(delta_steps));
  for (int i = 0; i < delta_steps; ++i)
    grid[static_cast<std::size_t>(i)] =
        (delta_steps == 1)
            ? delta_min
            : delta_min + static_cast<double>(i) * (delta_max - delta_min) / (delta_steps - 1);
  return grid;
}

int RunConfig::effective_jobs() const {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

RunConfig parse_config_json(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ValidationError("config " + origin + " is not valid JSON: " + ex.what());
  }
  if (!doc.is_object()) throw ValidationError("config " + origin + " must be a JSON object");

  static const std::set<std::string> known = {
      "case",       "gamma1",     "gamma2",     "gamma3",      "g1",         "g2",
      "kappa",      "gindex",     "alpha2",     "beta2",       "alpha_phase", "delta_min",
      "delta_max",  "delta_steps", "tail_eps",  "jobs",        "c_mps",      "omega1_bar",
      "omega2_bar", "transient",  "outputs"};
  reject_unknown(doc, known, origin);

  RunConfig cfg;
  if (doc.contains("case")) {
    if (!doc["case"].is_string()) throw ValidationError("config key 'case' must be a string");
    cfg.drive_case = parse_case(doc["case"].get<std::string>());
  }
  auto num = [&](const char* key, double& slot) {
    if (doc.contains(key)) slot = require_number(doc[key], key);
  };
  num("gamma1", cfg.params.gamma1);
  num("gamma2", cfg.params.gamma2);
  num("gamma3", cfg.params.gamma3);
  num("g1", cfg.params.g1);
  num("g2", cfg.params.g2);
  num("kappa", cfg.params.kappa);
  num("gindex", cfg.params.gindex);
  num("alpha2", cfg.alpha2);
  num("beta2", cfg.beta2);
  num("alpha_phase", cfg.alpha_phase);
  num("delta_min", cfg.delta_min);
  num("delta_max", cfg.delta_max);
  num("tail_eps", cfg.tail_eps);
  num("omega1_bar", cfg.omega1_bar);
  num("omega2_bar", cfg.omega2_bar);
  if (doc.contains("delta_steps"))
    cfg.delta_steps = static_cast<int>(require_integer(doc["delta_steps"], "delta_steps"));
  if (doc.contains("jobs")) cfg.jobs = static_cast<int>(require_integer(doc["jobs"], "jobs"));
  if (doc.contains("c_mps")) {
    if (!doc["c_mps"].is_null()) cfg.c_mps = require_number(doc["c_mps"], "c_mps");
  }

  if (doc.contains("transient")) {
    const json& tr = doc["transient"];
    if (!tr.is_object()) throw ValidationError("config key 'transient' must be an object");
    static const std::set<std::string> tr_known = {"n1",     "n2",      "delta1",          "t_min",
                                                  "t_max",  "t_steps", "dark_state_order"};
    reject_unknown(tr, tr_known, origin + " transient");
    if (tr.contains("n1")) cfg.transient.n1 = require_integer(tr["n1"], "transient.n1");
    if (tr.contains("n2")) cfg.transient.n2 = require_integer(tr["n2"], "transient.n2");
    if (tr.contains("delta1"))
      cfg.transient.delta1 = require_number(tr["delta1"], "transient.delta1");
    if (tr.contains("t_min")) cfg.transient.t_min = require_number(tr["t_min"], "transient.t_min");
    if (tr.contains("t_max")) cfg.transient.t_max = require_number(tr["t_max"], "transient.t_max");
    if (tr.contains("t_steps"))
      cfg.transient.t_steps = static_cast<int>(require_integer(tr["t_steps"], "transient.t_steps"));
    if (tr.contains("dark_state_order"))
      cfg.transient.dark_state_order =
          static_cast<int>(require_integer(tr["dark_state_order"], "transient.dark_state_order"));
  }

  if (doc.contains("outputs")) {
    const json& outs = doc["outputs"];
    if (!outs.is_array()) throw ValidationError("config key 'outputs' must be an array");
    for (const json& o : outs) {
      if (!o.is_object()) throw ValidationError("each outputs entry must be an object");
      static const std::set<std::string> o_known = {"quantity", "format", "path"};
      reject_unknown(o, o_known, origin + " outputs entry");
      OutputSpec spec;
      for (const char* key : {"quantity", "format", "path"}) {
        if (!o.contains(key) || !o[key].is_string())
          throw ValidationError(std::string("outputs entry needs string key '") + key + "'");
      }
      spec.quantity = o["quantity"].get<std::string>();
      spec.format = o["format"].get<std::string>();
      spec.path = o["path"].get<std::string>();
      cfg.outputs.push_back(std::move(spec));
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_json(buf.str(), "'" + path + "'");
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t.metadata) os << "# " << k << " = " << v << "\n";
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    os << t.columns[j] << (j + 1 < t.columns.size() ? "," : "\n");
  for (const auto& row : t.rows)
    for (std::size_t j = 0; j < row.size(); ++j)
      os << row[j] << (j + 1 < row.size() ? "," : "\n");
  return os.str();
}

std::string to_json(const Table& t) {
  // Cells round-trip through the textual form so CSV and JSON agree exactly.
  json meta = json::object();
  for (const auto& [k, v] : t.metadata) {
    if (v == kNullCell)
      meta[k] = nullptr;
    else
      meta[k] = v;
  }
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string& cell = row[j];
      if (cell == kNullCell)
        obj[t.columns[j]] = nullptr;
      else if (cell == "true")
        obj[t.columns[j]] = true;
      else if (cell == "false")
        obj[t.columns[j]] = false;
      else {
        // Numeric cells re-parse exactly (they were emitted with %.17g);
        // anything else (regime flags) stays a string.
        try {
          std::size_t used = 0;
          const double d = std::stod(cell, &used);
          if (used == cell.size())
            obj[t.columns[j]] = d;
          else
            obj[t.columns[j]] = cell;
        } catch (...) {
          obj[t.columns[j]] = cell;
        }
      }
    }
    rows.push_back(std::move(obj));
  }
  json doc = json::object();
  doc["metadata"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

int run_sweep(const RunConfig& cfg, const std::string& out_path, const std::string& format,
              std::ostream& out, std::ostream& err) {
  cfg.validate();
  std::vector<std::string> errors;
  const Table t = sweep_table(cfg, "sweep", "sweep", errors);
  emit(t, out_path, format, out);
  for (const OutputSpec& spec : cfg.outputs) emit_output_spec(cfg, spec, "sweep", errors, out);
  if (!errors.empty()) {
    err << "sweep completed with " << errors.size() << " singular row(s):\n";
    for (const auto& e : errors) err << "  " << e << "\n";
    return 2;
  }
  return 0;
}

int run_transient(const RunConfig& cfg, const std::string& out_path, const std::string& format,
                  std::ostream& out, std::ostream& err) {
  cfg.validate();
  emit(transient_table(cfg, "transient"), out_path, format, out);
  std::vector<std::string> errors;
  for (const OutputSpec& spec : cfg.outputs) emit_output_spec(cfg, spec, "transient", errors, out);
  if (!errors.empty()) {
    for (const auto& e : errors) err << "  " << e << "\n";
    return 2;
  }
  return 0;
}

int run_uncertainty(const RunConfig& cfg, const std::string& out_path, const std::string& format,
                    std::ostream& out, std::ostream& err) {
  cfg.validate();
  emit(uncertainty_table(cfg, "uncertainty"), out_path, format, out);
  std::vector<std::string> errors;
  for (const OutputSpec& spec : cfg.outputs)
    emit_output_spec(cfg, spec, "uncertainty", errors, out);
  if (!errors.empty()) {
    for (const auto& e : errors) err << "  " << e << "\n";
    return 2;
  }
  return 0;
}

int run_semiclassical(const RunConfig& cfg, const std::string& out_path, const std::string& format,
                      std::ostream& out, std::ostream& err) {
  (void)err;
  cfg.validate();
  emit(semiclassical_table(cfg, "semiclassical"), out_path, format, out);
  return 0;
}

}  // namespace qeit::cli
