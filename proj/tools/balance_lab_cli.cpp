#include "balance_lab/chordal.hpp"
#include "balance_lab/dynamics.hpp"
#include "balance_lab/edge_list.hpp"
#include "balance_lab/errors.hpp"
#include "balance_lab/experiments.hpp"
#include "balance_lab/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace bl = balance_lab;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kGuard = 3, kMaxSteps = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Weights must sum to 1 within 1e-9. The last weight handed to the library is
// 1 - w1 - w2, which leaves the sampling thresholds w1 and w1 + w2 unchanged.
std::array<double, 3> checked_weights(double a, double b, double c, const char* names) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw UsageError(std::string(names) + " must be positive");
  if (std::abs(a + b + c - 1.0) > 1e-9) {
    throw UsageError(std::string(names) + " must sum to 1 (got " + bl::format_double(a + b + c) + ")");
  }
  return {a, b, 1.0 - a - b};
}

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw UsageError(std::string(name) + " must lie in [0, 1]");
}

bl::OpinionVector parse_opinions(const std::string& text, int n) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token == "1" || token == "+1") {
      values.push_back(1);
    } else if (token == "-1") {
      values.push_back(-1);
    } else {
      throw UsageError("--opinions entries must be 1 or -1, got '" + token + "'");
    }
  }
  if (static_cast<int>(values.size()) != n) {
    throw UsageError("--opinions needs " + std::to_string(n) + " entries");
  }
  bl::OpinionVector::Storage y(n);
  for (int i = 0; i < n; ++i) y(i) = static_cast<bl::Entry>(values[static_cast<std::size_t>(i)]);
  return bl::OpinionVector(y);
}

bl::OpinionVector random_opinions(int n, std::uint64_t seed) {
  bl::CounterRng rng(bl::CounterRng::derive_key(seed, 3));
  bl::OpinionVector::Storage y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.bernoulli(0.5) ? 1 : -1;
  return bl::OpinionVector(y);
}

struct AnalyzeArgs {
  std::string input;
  bool all_cycles = false;
  bool force = false;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const auto x = bl::load_edge_list(a.input);
  write_text(a.out, dump(bl::analyze_report(x, {a.all_cycles, a.force})));
  return kOk;
}

struct EquivalenceArgs {
  std::string input;
  bool verify_exhaustive = false;
  bool force = false;
  std::string out;
};

int cmd_equivalence(const EquivalenceArgs& a) {
  const auto g = bl::skeleton(bl::load_edge_list(a.input));
  write_text(a.out, dump(bl::equivalence_report(g, a.verify_exhaustive, a.force)));
  return kOk;
}

struct SimulateArgs {
  std::string input;
  std::optional<int> n;
  std::optional<double> p;
  std::optional<double> p_neg;
  std::string engine = "sih";
  std::uint64_t seed = 1;
  std::uint64_t max_steps = bl::kDefaultMaxSteps;
  double p1 = 1.0 / 3.0, p2 = 1.0 / 3.0, p3 = 1.0 / 3.0;
  double q1 = 1.0 / 3.0, q2 = 1.0 / 3.0, q3 = 1.0 / 3.0;
  std::string opinions;
  std::string out;
  std::string log;
  std::string report;
};

int cmd_simulate(const SimulateArgs& a) {
  const bool generated = a.n || a.p || a.p_neg;
  if (generated == !a.input.empty()) {
    throw UsageError("give either --input or all of --n, --p, --p-neg");
  }
  if (a.max_steps == 0) throw UsageError("--max-steps must be positive");
  const auto w = checked_weights(a.p1, a.p2, a.p3, "--p1, --p2, --p3");
  const auto q = checked_weights(a.q1, a.q2, a.q3, "--q1, --q2, --q3");
  const bl::SihParams sih{w[0], w[1], w[2]};
  const bl::SiohParams sioh{q[0], q[1], q[2], sih};

  bl::AppraisalMatrix x0;
  if (generated) {
    if (!a.n || !a.p || !a.p_neg) throw UsageError("generator needs --n, --p and --p-neg");
    if (*a.n < 2) throw UsageError("--n must be at least 2");
    check_probability(*a.p, "--p");
    check_probability(*a.p_neg, "--p-neg");
    x0 = bl::gen_er_signed({*a.n, *a.p, *a.p_neg}, a.seed);
  } else {
    x0 = bl::load_edge_list(a.input);
  }
  const bool opinion_engine = a.engine == "sioh" || a.engine == "constructive-sioh";
  if (!a.opinions.empty() && !opinion_engine) throw UsageError("--opinions needs an SIOH engine");
  const bool log = !a.log.empty();
  const std::uint64_t run_seed = bl::dynamics_seed(a.seed);

  bl::AbsorptionRecord record;
  if (opinion_engine) {
    bl::SiohState state{x0, a.opinions.empty() ? random_opinions(x0.size(), a.seed)
                                               : parse_opinions(a.opinions, x0.size())};
    record = a.engine == "sioh" ? bl::run_sioh(state, sioh, run_seed, a.max_steps, log)
                                : bl::constructive_sioh_sequence(state);
  } else {
    record = a.engine == "sih" ? bl::run_sih(x0, sih, run_seed, a.max_steps, log)
                               : bl::constructive_sih_sequence(x0);
  }

  if (!a.out.empty()) write_text(a.out, bl::format_edge_list(record.final_x));
  if (log) {
    std::string lines;
    for (const auto& e : record.events) lines += bl::to_json(e).dump() + "\n";
    write_text(a.log, lines);
  }
  auto summary = bl::absorption_json(record, a.engine);
  summary["seed"] = a.seed;
  write_text(a.report, dump(summary));
  return record.absorbed ? kOk : kMaxSteps;
}

struct ExperimentArgs {
  std::string study;
  int n = 8;
  std::optional<double> p;
  std::optional<double> p_neg;
  std::uint64_t trials = 3000;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = bl::kDefaultMaxSteps;
  double p1 = 1.0 / 3.0, p2 = 1.0 / 3.0, p3 = 1.0 / 3.0;
  std::string out;
  std::string summary;
};

int cmd_experiment(const ExperimentArgs& a) {
  const auto study = bl::study_from_string(a.study);
  if (!study) throw UsageError("unknown study '" + a.study + "'");
  if (a.trials < 2) throw UsageError("--trials must be at least 2");
  if (a.n < 2) throw UsageError("--n must be at least 2");
  if (a.max_steps == 0) throw UsageError("--max-steps must be positive");
  if (*study != bl::Study::Density && !a.p) throw UsageError("this study needs --p");
  if (*study != bl::Study::C0 && !a.p_neg) throw UsageError("this study needs --p-neg");
  if (*study == bl::Study::Density && a.p) throw UsageError("the density study draws p per trial");
  if (*study == bl::Study::C0 && a.p_neg) throw UsageError("the c0 study draws p_neg per trial");
  if (a.p) check_probability(*a.p, "--p");
  if (a.p_neg) check_probability(*a.p_neg, "--p-neg");
  const auto w = checked_weights(a.p1, a.p2, a.p3, "--p1, --p2, --p3");

  bl::StudyConfig config;
  config.study = *study;
  config.n = a.n;
  config.p = a.p.value_or(0.5);
  config.p_neg = a.p_neg.value_or(0.5);
  config.trials = a.trials;
  config.master_seed = a.seed;
  config.sih = {w[0], w[1], w[2]};
  config.max_steps = a.max_steps;

  const bl::StudyResult result = bl::run_study(config);
  std::ostringstream csv;
  bl::write_csv(csv, result.records);
  write_text(a.out, csv.str());
  write_text(a.summary, dump(bl::study_summary_json(result)));
  return kOk;
}

void add_weights(CLI::App* cmd, double& a, double& b, double& c, const char* prefix) {
  const std::string p(prefix);
  cmd->add_option("--" + p + "1", a, "First mechanism weight")->capture_default_str();
  cmd->add_option("--" + p + "2", b, "Second mechanism weight")->capture_default_str();
  cmd->add_option("--" + p + "3", c, "Third mechanism weight")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural balance toolkit for signed appraisal networks"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Static balance report for an edge-list graph");
  analyze_cmd->add_option("--input", analyze.input, "Edge-list file")->required();
  analyze_cmd->add_flag("--all-cycles", analyze.all_cycles, "Enumerate simple cycles");
  analyze_cmd->add_flag("--force", analyze.force, "Override size guards");
  analyze_cmd->add_option("--out", analyze.out, "JSON report path (default stdout)");

  EquivalenceArgs equivalence;
  auto* equivalence_cmd =
      app.add_subcommand("equivalence", "Certify triad-wise / two-faction equivalence conditions");
  equivalence_cmd->add_option("--input", equivalence.input, "Edge-list file (signs ignored)")
      ->required();
  equivalence_cmd->add_flag("--verify-exhaustive", equivalence.verify_exhaustive,
                            "Check all 2^|E| sign assignments");
  equivalence_cmd->add_flag("--force", equivalence.force, "Override size guards");
  equivalence_cmd->add_option("--out", equivalence.out, "JSON certificate path (default stdout)");

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run SIH/SIOH dynamics on one graph");
  simulate_cmd->add_option("--input", simulate.input, "Edge-list file");
  simulate_cmd->add_option("--n", simulate.n, "Generator node count");
  simulate_cmd->add_option("--p", simulate.p, "Generator link probability");
  simulate_cmd->add_option("--p-neg", simulate.p_neg, "Generator sign-flip probability");
  simulate_cmd->add_option("--engine", simulate.engine, "Update engine")
      ->check(CLI::IsMember({"sih", "sioh", "constructive", "constructive-sioh"}))
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate.seed, "Seed")->capture_default_str();
  simulate_cmd->add_option("--max-steps", simulate.max_steps, "Update budget")->capture_default_str();
  add_weights(simulate_cmd, simulate.p1, simulate.p2, simulate.p3, "p");
  add_weights(simulate_cmd, simulate.q1, simulate.q2, simulate.q3, "q");
  simulate_cmd->add_option("--opinions", simulate.opinions,
                           "Initial opinions, comma-separated 1/-1 (default: drawn from seed)");
  simulate_cmd->add_option("--out", simulate.out, "Final state edge-list path");
  simulate_cmd->add_option("--log", simulate.log, "Event log path (JSON lines)");
  simulate_cmd->add_option("--report", simulate.report, "Absorption record path (default stdout)");

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Monte-Carlo study over ER graphs");
  experiment_cmd->add_option("--study", experiment.study, "c0, density or triads")
      ->required()
      ->check(CLI::IsMember({"c0", "density", "triads"}));
  experiment_cmd->add_option("--n", experiment.n, "Node count")->capture_default_str();
  experiment_cmd->add_option("--p", experiment.p, "Fixed link probability (c0, triads)");
  experiment_cmd->add_option("--p-neg", experiment.p_neg, "Fixed flip probability (density, triads)");
  experiment_cmd->add_option("--trials", experiment.trials, "Trial count")->capture_default_str();
  experiment_cmd->add_option("--seed", experiment.seed, "Master seed")->capture_default_str();
  experiment_cmd->add_option("--max-steps", experiment.max_steps, "Update budget per trial")
      ->capture_default_str();
  add_weights(experiment_cmd, experiment.p1, experiment.p2, experiment.p3, "p");
  experiment_cmd->add_option("--out", experiment.out, "CSV path")->required();
  experiment_cmd->add_option("--summary", experiment.summary, "JSON summary path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze);
    if (*equivalence_cmd) return cmd_equivalence(equivalence);
    if (*simulate_cmd) return cmd_simulate(simulate);
    return cmd_experiment(experiment);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const bl::GuardExceeded& e) {
    std::cerr << "error: " << e.what() << " (use --force to override)\n";
    return kGuard;
  } catch (const bl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const bl::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
}
