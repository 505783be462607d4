#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "pathstat/contraction.hpp"
#include "pathstat/diagnostics.hpp"
#include "pathstat/generators.hpp"
#include "pathstat/path_io.hpp"
#include "pathstat/report.hpp"
#include "pathstat/rng.hpp"
#include "pathstat/stattests.hpp"

namespace pathstat {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeedChoice {
  std::uint64_t value = 0;
  std::string origin;  // "flag", "config", "env" or "generated"
};

struct InputOptions {
  std::string input;
  std::string generator;
  std::size_t length = 1000;
  std::optional<std::uint64_t> seed;
  std::string seed_origin = "flag";
};

struct LoadedPath {
  Path path;
  Json source;
};

SeedChoice resolve_seed(const InputOptions& in) {
  if (in.seed) return {*in.seed, in.seed_origin};
  if (const char* env = std::getenv("PATHSTAT_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("PATHSTAT_SEED is not an unsigned integer: '" + std::string(s) + "'");
    }
    return {v, "env"};
  }
  std::random_device rd;
  const std::uint64_t v = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  return {v, "generated"};
}

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("-i,--input", in.input, "Path file: one value per line (CSV first column)");
  cmd.add_option("-g,--gen", in.generator,
                 "Generator spec, e.g. \"ar1(rho=0.5),L=100000,seed=7\"");
  cmd.add_option("-L,--length", in.length, "Length for --gen when the spec has no L=");
  cmd.add_option("-s,--seed", in.seed, "Seed (fallback: PATHSTAT_SEED, else a recorded random seed)");
}

LoadedPath load_input(const InputOptions& in, SeedChoice& seed) {
  if (in.input.empty() == in.generator.empty()) {
    throw UsageError("give exactly one of --input and --gen");
  }
  if (!in.input.empty()) {
    auto path = read_path_file(in.input);
    Json source = {{"kind", "file"}, {"file", in.input}, {"length", path.length()}};
    return {std::move(path), std::move(source)};
  }
  const auto spec = parse_generator_spec(in.generator, in.length, seed.value);
  if (spec.seed != seed.value) seed = {spec.seed, "generator spec"};
  auto path = generate(spec);
  Json source = {{"kind", "generator"},
                 {"generator", format_generator(spec.params)},
                 {"length", spec.length},
                 {"seed", spec.seed}};
  return {std::move(path), std::move(source)};
}

Json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw UsageError("cannot open " + filename);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(filename + ": " + e.what());
  }
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

void write_json(const fs::path& file, const Json& j) { write_text(file, j.dump(2) + "\n"); }

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

/// Values in a --config file take precedence over command-line flags.
class ConfigOverrides {
 public:
  explicit ConfigOverrides(const std::string& file) {
    if (!file.empty()) {
      json_ = read_json_file(file);
      if (!json_.is_object()) throw UsageError(file + ": config must be a JSON object");
    }
  }

  template <class T>
  void apply(const char* key, T& target) {
    seen_.push_back(key);
    if (!json_.contains(key)) return;
    try {
      target = json_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  }

  template <class T>
  void apply(const char* key, std::optional<T>& target) {
    seen_.push_back(key);
    if (!json_.contains(key)) return;
    try {
      target = json_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  }

  void reject_unknown() const {
    for (const auto& item : json_.items()) {
      if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end()) {
        throw UsageError("unknown config key '" + item.key() + "'");
      }
    }
  }

 private:
  Json json_ = Json::object();
  std::vector<std::string> seen_;
};

void apply_input_overrides(ConfigOverrides& cfg, InputOptions& in) {
  cfg.apply("input", in.input);
  cfg.apply("generator", in.generator);
  cfg.apply("length", in.length);
  const bool flag_seed = in.seed.has_value();
  cfg.apply("seed", in.seed);
  if (in.seed && !flag_seed) in.seed_origin = "config";
}

struct DiagnosticOptions {
  std::size_t grid_cells = 8;
  std::size_t k_max = 2;
  double tail_fraction = 0.5;
  double tolerance = 0.02;
  double violation_floor = 5.0;
  double positive_floor = 10.0;
  double t_slack = 0.01;
  double ergodicity_tolerance = 0.05;
  std::optional<std::vector<double>> tightness_levels;
};

void add_diagnostic_options(CLI::App& cmd, DiagnosticOptions& o) {
  cmd.add_option("--grid-cells", o.grid_cells, "Cells of the finest quantile grid");
  cmd.add_option("--k-max", o.k_max, "Largest window order scanned");
  cmd.add_option("--tail-fraction", o.tail_fraction, "Share of the horizon used for limits");
  cmd.add_option("--tolerance", o.tolerance, "Oscillation tolerance of tail estimates");
  cmd.add_option("--violation-floor", o.violation_floor, "Violation needs d(H) < floor / H");
  cmd.add_option("--positive-floor", o.positive_floor, "PositiveDensity needs value >= floor / H");
  cmd.add_option("--t-slack", o.t_slack, "Tightness slack at the largest level");
  cmd.add_option("--ergodicity-tolerance", o.ergodicity_tolerance,
                 "Largest contraction discrepancy still consistent with ergodicity");
  cmd.add_option("--tightness-levels", o.tightness_levels, "Explicit tightness levels K")
      ->delimiter(',');
}

void apply_diagnostic_overrides(ConfigOverrides& cfg, DiagnosticOptions& o) {
  cfg.apply("grid_cells", o.grid_cells);
  cfg.apply("k_max", o.k_max);
  cfg.apply("tail_fraction", o.tail_fraction);
  cfg.apply("tolerance", o.tolerance);
  cfg.apply("violation_floor", o.violation_floor);
  cfg.apply("positive_floor", o.positive_floor);
  cfg.apply("t_slack", o.t_slack);
  cfg.apply("ergodicity_tolerance", o.ergodicity_tolerance);
  cfg.apply("tightness_levels", o.tightness_levels);
}

AnalysisConfig to_analysis_config(const DiagnosticOptions& o) {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw UsageError(std::string(name) + " must be positive");
  };
  positive(o.tail_fraction, "tail_fraction");
  positive(o.tolerance, "tolerance");
  positive(o.violation_floor, "violation_floor");
  positive(o.positive_floor, "positive_floor");
  positive(o.t_slack, "t_slack");
  positive(o.ergodicity_tolerance, "ergodicity_tolerance");
  if (o.tail_fraction > 1.0) throw UsageError("tail_fraction must not exceed 1");
  if (o.k_max < 1) throw UsageError("k_max must be at least 1");
  if (o.grid_cells < 2) throw UsageError("grid_cells must be at least 2");

  AnalysisConfig c;
  c.diagnostic.grid_cells = o.grid_cells;
  c.diagnostic.k_max = o.k_max;
  c.diagnostic.tail_fraction = o.tail_fraction;
  c.diagnostic.tolerance = o.tolerance;
  c.diagnostic.violation_floor = o.violation_floor;
  c.diagnostic.positive_floor = o.positive_floor;
  c.diagnostic.t_slack = o.t_slack;
  c.ergodicity.tolerance = o.ergodicity_tolerance;
  c.ergodicity.contraction.tail_fraction = o.tail_fraction;
  c.tightness_levels = o.tightness_levels;
  return c;
}

Json diagnostic_config_json(const DiagnosticOptions& o) {
  Json j = {{"grid_cells", o.grid_cells},
            {"k_max", o.k_max},
            {"tail_fraction", o.tail_fraction},
            {"tolerance", o.tolerance},
            {"violation_floor", o.violation_floor},
            {"positive_floor", o.positive_floor},
            {"t_slack", o.t_slack},
            {"ergodicity_tolerance", o.ergodicity_tolerance}};
  j["tightness_levels"] = o.tightness_levels ? Json(*o.tightness_levels) : Json(nullptr);
  return j;
}

Json seed_json(const SeedChoice& s) { return {{"value", s.value}, {"origin", s.origin}}; }

std::string format_double(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

/// Running density N(n)/n of each level-1 cell of the finest grid, at up to
/// ~1000 evenly spaced n.
std::string trajectories_csv(const Path& path, const std::vector<double>& cuts) {
  const auto grid = PatternGrid::product(cuts, 1);
  const auto occ = cell_occurrences(path, grid);
  const std::size_t h = occ.horizon;
  const std::size_t rows = std::min<std::size_t>(h, 1000);

  std::string out = "n";
  for (std::size_t c = 0; c < grid.cell_count(); ++c) out += ",cell_" + std::to_string(c);
  out += '\n';
  std::size_t previous = 0;
  for (std::size_t r = 1; r <= rows; ++r) {
    const std::size_t n = (r * h + rows - 1) / rows;
    if (n == previous) continue;
    previous = n;
    out += std::to_string(n);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
      out += ',';
      out += format_double(static_cast<double>(occ.count_below(c, n)) / static_cast<double>(n));
    }
    out += '\n';
  }
  return out;
}

int cmd_generate(const InputOptions& in_flags, const std::string& output) {
  if (in_flags.generator.empty()) throw UsageError("generate needs --gen");
  if (!in_flags.input.empty()) throw UsageError("generate does not read --input");
  auto seed = resolve_seed(in_flags);
  const auto loaded = load_input(in_flags, seed);
  if (output.empty() || output == "-") {
    write_path(std::cout, loaded.path);
  } else {
    write_path_file(output, loaded.path);
    std::cerr << "wrote " << loaded.path.length() << " values to " << output << " (seed "
              << seed.value << ")\n";
  }
  return 0;
}

int cmd_analyze(InputOptions in, DiagnosticOptions opts, std::string out_dir,
                const std::string& config_file) {
  ConfigOverrides cfg(config_file);
  apply_input_overrides(cfg, in);
  apply_diagnostic_overrides(cfg, opts);
  cfg.apply("out_dir", out_dir);
  cfg.reject_unknown();

  const auto config = to_analysis_config(opts);
  auto seed = resolve_seed(in);
  const auto loaded = load_input(in, seed);
  const auto report = analyze_path(loaded.path, config);

  Json j = {{"tool", "pathstat"}, {"command", "analyze"}, {"input", loaded.source},
            {"seed", seed_json(seed)}, {"config", diagnostic_config_json(opts)}};
  const auto body = analysis_json(report, config);
  for (const auto& [key, value] : body.items()) j[key] = value;

  const auto dir = prepare_out_dir(out_dir);
  write_json(dir / "report.json", j);
  write_text(dir / "trajectories.csv", trajectories_csv(loaded.path, report.grids.cut_sets.front()));

  const auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
  std::cout << "propertyE:   " << mark(report.property_e_pass()) << " ("
            << report.property_e.count(PropertyEStatus::Violation) << " violations, "
            << report.property_e.verdicts.size() << " cells)\n"
            << "propertyT:   " << mark(report.property_t_pass()) << " (top fraction "
            << report.property_t.fractions.back() << ")\n"
            << "consistency: " << mark(report.consistency_pass()) << "\n"
            << "ergodicity:  " << mark(report.ergodicity_pass()) << " (worst discrepancy "
            << report.ergodicity.worst_discrepancy << ")\n"
            << "report:      " << (dir / "report.json").string() << "\n";
  return report.pass() ? 0 : 2;
}

struct TestbenchOptions {
  std::string tests_file;
  std::size_t start = 0;
  std::size_t stride = 1;
  double slack = 0.01;
  std::size_t threads = 1;
};

// A test list is given inline, as a JSON string holding the list, or as the
// name of a file containing it.
Json load_test_specs(const Json& tests) {
  if (!tests.is_string()) return tests;
  const auto text = tests.get<std::string>();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '[') return read_json_file(text);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("--tests: ") + e.what());
  }
}

int cmd_testbench(InputOptions in, TestbenchOptions opts, std::string out_dir,
                  const std::string& config_file) {
  ConfigOverrides cfg(config_file);
  apply_input_overrides(cfg, in);
  Json tests = opts.tests_file.empty() ? Json() : Json(opts.tests_file);
  cfg.apply("tests", tests);
  cfg.apply("start", opts.start);
  cfg.apply("stride", opts.stride);
  cfg.apply("slack", opts.slack);
  cfg.apply("threads", opts.threads);
  cfg.apply("out_dir", out_dir);
  cfg.reject_unknown();

  if (tests.is_null()) throw UsageError("testbench needs --tests <file.json or inline list>");
  const auto specs = load_test_specs(tests);
  if (!specs.is_array() || specs.empty()) throw UsageError("test list is empty; nothing to run");
  if (opts.stride < 1) throw UsageError("stride must be at least 1");

  auto seed = resolve_seed(in);
  const auto loaded = load_input(in, seed);
  const auto dir = prepare_out_dir(out_dir);

  Json results = Json::array();
  bool all_compliant = true;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    if (!s.is_object() || !s.contains("kind") || !s.contains("n")) {
      throw UsageError("test " + std::to_string(i) + " needs at least kind and n");
    }
    const auto kind = s.at("kind").get<std::string>();
    const auto n = s.at("n").get<std::size_t>();
    const double alpha = s.value("alpha", 0.05);
    Json calibration = nullptr;
    double tau = 0.0;
    if (s.contains("tau")) {
      tau = s.at("tau").get<double>();
    } else if (s.contains("calibration")) {
      const auto& c = s.at("calibration");
      const auto gen = parse_generator_spec(c.at("generator").get<std::string>(), n, 0);
      MonteCarloConfig mc;
      mc.replicates = c.value("replicates", std::size_t{1000});
      mc.seed = c.contains("seed") ? c.at("seed").get<std::uint64_t>() : seed.value;
      mc.threads = opts.threads;
      const auto cal = calibrate_test_size(kind, n, alpha, gen.params, mc);
      tau = cal.tau;
      calibration = {{"generator", format_generator(gen.params)},
                     {"replicates", cal.replicates},
                     {"seed", mc.seed},
                     {"tau", cal.tau},
                     {"standard_error", cal.standard_error}};
    } else {
      throw UsageError("test " + std::to_string(i) + " needs tau or a calibration block");
    }

    const auto test = make_builtin_test(kind, n, tau, alpha);
    const auto record = apply_moving_window(loaded.path, test, opts.start, opts.stride);

    std::string csv = "offset,indicator\n";
    for (std::size_t w = 0; w < record.indicators.size(); ++w) {
      csv += std::to_string(record.offset(w));
      csv += record.indicators[w] ? ",1\n" : ",0\n";
    }
    const auto csv_name = "rejections_" + std::to_string(i) + ".csv";
    write_text(dir / csv_name, csv);

    auto summary = rejection_summary_json(test, record, opts.slack);
    summary["calibration"] = calibration;
    summary["indicators_file"] = csv_name;
    all_compliant = all_compliant && summary.at("compliant").get<bool>();
    std::cout << kind << " n=" << n << " tau=" << tau << ": upper_density "
              << record.upper_density << (summary.at("compliant").get<bool>() ? " <= " : " > ")
              << alpha + opts.slack << "\n";
    results.push_back(std::move(summary));
  }

  Json j = {{"tool", "pathstat"},  {"command", "testbench"},    {"input", loaded.source},
            {"seed", seed_json(seed)}, {"slack", opts.slack},   {"compliant", all_compliant},
            {"tests", std::move(results)}};
  write_json(dir / "summary.json", j);
  return all_compliant ? 0 : 2;
}

struct MonteCarloOptions {
  std::vector<std::string> generators;
  std::size_t replicates = 100;
  std::size_t threads = 1;
};

int cmd_montecarlo(InputOptions in, MonteCarloOptions opts, DiagnosticOptions diag,
                   std::string out_dir, const std::string& config_file) {
  ConfigOverrides cfg(config_file);
  apply_input_overrides(cfg, in);
  apply_diagnostic_overrides(cfg, diag);
  cfg.apply("generators", opts.generators);
  cfg.apply("replicates", opts.replicates);
  cfg.apply("threads", opts.threads);
  cfg.apply("out_dir", out_dir);
  cfg.reject_unknown();

  if (opts.generators.empty()) throw UsageError("montecarlo needs at least one --generator");
  if (opts.replicates < 1) throw UsageError("replicates must be at least 1");
  if (!in.input.empty() || !in.generator.empty()) {
    throw UsageError("montecarlo takes --generator specs, not --input or --gen");
  }
  const auto config = to_analysis_config(diag);
  const auto seed = resolve_seed(in);

  Json rows = Json::array();
  for (const auto& text : opts.generators) {
    const auto base = parse_generator_spec(text, in.length, 0);
    std::vector<std::uint8_t> passed(opts.replicates, 0);
    const auto run = [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        auto spec = base;
        spec.seed = derive_seed(seed.value, r);
        passed[r] = analyze_path(generate(spec), config).pass() ? 1 : 0;
      }
    };
    const std::size_t threads = std::clamp<std::size_t>(opts.threads, 1, opts.replicates);
    if (threads == 1) {
      run(0, opts.replicates);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (opts.replicates + threads - 1) / threads;
      for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t b = std::min(opts.replicates, t * chunk);
        pool.emplace_back(run, b, std::min(opts.replicates, b + chunk));
      }
      for (auto& th : pool) th.join();
    }

    std::size_t passes = 0;
    for (auto p : passed) passes += p;
    const double r = static_cast<double>(opts.replicates);
    const double fraction = static_cast<double>(passes) / r;
    const double se = std::sqrt(fraction * (1.0 - fraction) / r);
    const auto profile = expected_profile(base);
    std::cout << format_generator(base.params) << " L=" << base.length << ": pass fraction "
              << fraction << " +/- " << se << " (" << passes << "/" << opts.replicates << ")\n";
    rows.push_back({{"generator", format_generator(base.params)},
                    {"length", base.length},
                    {"replicates", opts.replicates},
                    {"passes", passes},
                    {"pass_fraction", fraction},
                    {"standard_error", se},
                    {"expected_pass", profile.passes_all}});
  }

  if (!out_dir.empty()) {
    const auto dir = prepare_out_dir(out_dir);
    write_json(dir / "coverage.json", {{"tool", "pathstat"},
                                       {"command", "montecarlo"},
                                       {"seed", seed_json(seed)},
                                       {"config", diagnostic_config_json(diag)},
                                       {"generators", std::move(rows)}});
  }
  return 0;
}

double parse_endpoint(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || std::isnan(v)) {
    throw UsageError("bad interval endpoint '" + std::string(s) + "'");
  }
  return v;
}

/// "lo,hi" or "lo,hi;lo,hi;..." for multi-coordinate patterns.
IntervalPattern parse_cell(const std::string& text) {
  std::vector<Interval> ivs;
  std::stringstream coords(text);
  std::string part;
  while (std::getline(coords, part, ';')) {
    const auto comma = part.find(',');
    if (comma == std::string::npos) throw UsageError("cell coordinate needs lo,hi: '" + part + "'");
    ivs.push_back({parse_endpoint(std::string_view(part).substr(0, comma)),
                   parse_endpoint(std::string_view(part).substr(comma + 1))});
  }
  if (ivs.empty()) throw UsageError("empty --cell");
  return IntervalPattern(std::move(ivs));
}

struct ContractOptions {
  std::string cell;
  std::optional<double> threshold;
  std::vector<std::size_t> m_schedule = {4, 8, 16, 32};
  std::optional<double> target_density;
  double epsilon1 = 0.1;
  bool trace = false;
  double tail_fraction = 0.5;
  double tolerance = 0.02;
};

double tail_density(const Path& path, const IntervalPattern& pattern, double tail_fraction,
                    double tolerance) {
  const auto occ = occurrence_set(path, pattern);
  return estimate_limit_density(density_trajectory(occ, occ.source_horizon), tail_fraction,
                                tolerance)
      .value;
}

int cmd_contract(InputOptions in, ContractOptions opts, std::string out_dir,
                 const std::string& config_file) {
  ConfigOverrides cfg(config_file);
  apply_input_overrides(cfg, in);
  cfg.apply("cell", opts.cell);
  cfg.apply("threshold", opts.threshold);
  cfg.apply("m_schedule", opts.m_schedule);
  cfg.apply("target_density", opts.target_density);
  cfg.apply("epsilon1", opts.epsilon1);
  cfg.apply("trace", opts.trace);
  cfg.apply("tail_fraction", opts.tail_fraction);
  cfg.apply("tolerance", opts.tolerance);
  cfg.apply("out_dir", out_dir);
  cfg.reject_unknown();

  if (opts.cell.empty()) throw UsageError("contract needs --cell lo,hi");
  const auto pattern = parse_cell(opts.cell);
  auto seed = resolve_seed(in);
  const auto loaded = load_input(in, seed);

  const double global = tail_density(loaded.path, pattern, opts.tail_fraction, opts.tolerance);
  const double threshold = opts.threshold.value_or(default_adversarial_threshold(global));
  AdversarialConfig adv;
  adv.epsilon1 = opts.epsilon1;
  adv.target_density = opts.target_density;
  const auto trace = adversarial_contraction(loaded.path, pattern, opts.m_schedule, threshold, adv);

  ContractionConfig vc;
  vc.tail_fraction = opts.tail_fraction;
  vc.tolerance = opts.tolerance;
  Json validation = nullptr;
  Json contracted = nullptr;
  if (!trace.result.blocks.empty()) {
    const auto v = validate_contraction(trace.result, loaded.path.length(), vc);
    validation = {{"ordering", v.ordering},
                  {"growth", v.growth},
                  {"coverage", v.coverage},
                  {"coverage_estimate", v.coverage_estimate.value},
                  {"pass", v.pass()},
                  {"detail", v.detail}};
    const auto cpath = contract_path(loaded.path, trace.result);
    if (cpath.length() >= pattern.order()) {
      contracted = tail_density(cpath, pattern, opts.tail_fraction, opts.tolerance);
    }
  }

  Json j = {{"tool", "pathstat"},
            {"command", "contract"},
            {"input", loaded.source},
            {"seed", seed_json(seed)},
            {"pattern", pattern_json(pattern)},
            {"threshold", threshold},
            {"status", to_string(trace.status)},
            {"global_density", global},
            {"contracted_density", contracted},
            {"validation", validation}};
  const auto blocks = contraction_json(trace.result);
  for (const auto& [key, value] : blocks.items()) j[key] = value;

  const auto dir = prepare_out_dir(out_dir);
  write_json(dir / "contraction.json", j);
  if (opts.trace) write_json(dir / "trace.json", adversarial_trace_json(trace));

  std::cout << "status " << to_string(trace.status) << ", target density "
            << trace.target_density << ", " << trace.result.blocks.size() << " blocks";
  if (trace.last_feasible_m) std::cout << ", last feasible m " << *trace.last_feasible_m;
  std::cout << "\nglobal density " << global;
  if (!contracted.is_null()) std::cout << ", contracted density " << contracted.get<double>();
  std::cout << "\n";
  return trace.status == AdversarialStatus::Failed ? 2 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Path-level stationarity diagnostics"};
  app.require_subcommand(1);

  InputOptions gen_in;
  std::string gen_output;
  auto* gen = app.add_subcommand("generate", "Write a synthetic path, one value per line");
  add_input_options(*gen, gen_in);
  gen->add_option("-o,--output", gen_output, "Output file (default stdout)");

  InputOptions an_in;
  DiagnosticOptions an_diag;
  std::string an_out = "pathstat-out";
  std::string an_config;
  auto* analyze = app.add_subcommand("analyze", "Run every path diagnostic and write a report");
  add_input_options(*analyze, an_in);
  add_diagnostic_options(*analyze, an_diag);
  analyze->add_option("-o,--out-dir", an_out, "Output directory");
  analyze->add_option("-c,--config", an_config, "JSON config; its values override flags");

  InputOptions tb_in;
  TestbenchOptions tb_opts;
  std::string tb_out = "pathstat-out";
  std::string tb_config;
  auto* testbench = app.add_subcommand("testbench", "Moving-window tests and rejection densities");
  add_input_options(*testbench, tb_in);
  testbench->add_option("-t,--tests", tb_opts.tests_file, "JSON list of test specs, inline or as a file");
  testbench->add_option("--start", tb_opts.start, "First window offset");
  testbench->add_option("--stride", tb_opts.stride, "Offset step");
  testbench->add_option("--slack", tb_opts.slack, "Compliance slack above alpha");
  testbench->add_option("--threads", tb_opts.threads, "Calibration threads");
  testbench->add_option("-o,--out-dir", tb_out, "Output directory");
  testbench->add_option("-c,--config", tb_config, "JSON config; its values override flags");

  InputOptions mc_in;
  MonteCarloOptions mc_opts;
  DiagnosticOptions mc_diag;
  std::string mc_out;
  std::string mc_config;
  auto* montecarlo = app.add_subcommand("montecarlo", "Pass fractions of generators over seeds");
  montecarlo->add_option("--generator", mc_opts.generators, "Generator spec (repeatable)");
  montecarlo->add_option("-r,--replicates", mc_opts.replicates, "Seeds per generator");
  montecarlo->add_option("--threads", mc_opts.threads, "Worker threads");
  montecarlo->add_option("-L,--length", mc_in.length, "Path length unless the spec has L=");
  montecarlo->add_option("-s,--seed", mc_in.seed, "Base seed");
  add_diagnostic_options(*montecarlo, mc_diag);
  montecarlo->add_option("-o,--out-dir", mc_out, "Output directory for coverage.json");
  montecarlo->add_option("-c,--config", mc_config, "JSON config; its values override flags");

  InputOptions ct_in;
  ContractOptions ct_opts;
  std::string ct_out = "pathstat-out";
  std::string ct_config;
  auto* contract = app.add_subcommand("contract", "Adversarial contraction for one pattern");
  add_input_options(*contract, ct_in);
  contract->add_option("--cell", ct_opts.cell, "Pattern: lo,hi or lo,hi;lo,hi;...");
  contract->add_option("--threshold", ct_opts.threshold, "Local density threshold");
  contract->add_option("--m-schedule", ct_opts.m_schedule, "Increasing block lengths")
      ->delimiter(',');
  contract->add_option("--target-density", ct_opts.target_density, "Coverage target d");
  contract->add_option("--epsilon1", ct_opts.epsilon1, "Join tolerance scale");
  contract->add_flag("--trace", ct_opts.trace, "Also write trace.json");
  contract->add_option("--tail-fraction", ct_opts.tail_fraction, "Share of horizon for limits");
  contract->add_option("--tolerance", ct_opts.tolerance, "Tail oscillation tolerance");
  contract->add_option("-o,--out-dir", ct_out, "Output directory");
  contract->add_option("-c,--config", ct_config, "JSON config; its values override flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_in, gen_output);
    if (analyze->parsed()) return cmd_analyze(an_in, an_diag, an_out, an_config);
    if (testbench->parsed()) return cmd_testbench(tb_in, tb_opts, tb_out, tb_config);
    if (montecarlo->parsed()) return cmd_montecarlo(mc_in, mc_opts, mc_diag, mc_out, mc_config);
    if (contract->parsed()) return cmd_contract(ct_in, ct_opts, ct_out, ct_config);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace pathstat
