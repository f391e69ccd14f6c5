#pragma once

#include "balance_lab/dynamics.hpp"
#include "balance_lab/graph.hpp"
#include "balance_lab/regression.hpp"
#include "balance_lab/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace balance_lab {

/// Signed bilateral Erdős–Rényi parameters.
struct ErParams {
  int n = 8;
  double p = 0.5;
  double p_neg = 0.5;

  void validate() const;
  bool operator==(const ErParams&) const = default;
};

/// Each unordered pair gets both directed links with probability p, each
/// initialised to +1; every created directed link is then flipped to -1 with
/// probability p_neg.
AppraisalMatrix gen_er_signed(const ErParams& params, CounterRng& rng);
AppraisalMatrix gen_er_signed(const ErParams& params, std::uint64_t seed);

/// Negative entries over nonzero entries; empty when X has no link.
std::optional<double> conflict_ratio(const AppraisalMatrix& x);

/// Nonzero entries over n(n - 1). Requires n >= 2.
double link_density(const AppraisalMatrix& x);

/// Triangles of the skeleton whose three pairs are bilateral in X.
int count_triads(const AppraisalMatrix& x);

enum class Study { C0, Density, Triads };

std::string_view to_string(Study study);
std::optional<Study> study_from_string(std::string_view name);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  ErParams er;
  std::optional<double> c0;
  std::optional<double> c_inf;
  double rho_link = 0.0;
  int n_triad = 0;
  std::uint64_t steps = 0;
  bool absorbed = false;

  bool operator==(const TrialRecord&) const = default;
};

/// Generates X(0) from CounterRng(seed), runs SIH on the stream
/// derive_key(seed, 1) and measures the trial. The CLI `simulate` command uses
/// the same seeding, so any CSV row can be replayed from its seed.
TrialRecord run_er_trial(const ErParams& er, std::uint64_t seed, const SihParams& sih,
                         std::uint64_t max_steps = kDefaultMaxSteps);

/// Seed of the SIH stream paired with an ER seed.
std::uint64_t dynamics_seed(std::uint64_t er_seed);

struct StudyConfig {
  Study study = Study::C0;
  int n = 8;
  /// Fixed for the c0 and triads studies; drawn uniformly per trial for density.
  double p = 0.5;
  /// Fixed for the density and triads studies; drawn uniformly per trial for c0.
  double p_neg = 0.5;
  std::uint64_t trials = 3000;
  std::uint64_t master_seed = 1;
  SihParams sih;
  std::uint64_t max_steps = kDefaultMaxSteps;
  /// Worker threads; 0 selects default_worker_count().
  unsigned threads = 0;

  void validate() const;
};

struct StudyResult {
  StudyConfig config;
  std::vector<TrialRecord> records;
  /// c_inf regressed on c0, rho_link or n_triad. Trials with an undefined value
  /// or without absorption are excluded; empty with fewer than two usable trials.
  std::optional<RegressionResult> regression;
  std::uint64_t excluded = 0;
  double absorbed_fraction = 0.0;
  double mean_steps = 0.0;
};

/// Hardware concurrency, capped by BALANCE_LAB_THREADS when set to a positive integer.
unsigned default_worker_count();

/// Trial i uses seed CounterRng::derive_key(master_seed, i); the varied
/// parameter is drawn from CounterRng(derive_key(seed, 2)).
StudyResult run_study(const StudyConfig& config);

StudyResult run_study_c0(int n, double p, std::uint64_t trials, std::uint64_t master_seed,
                         const SihParams& sih = {});
StudyResult run_study_density(int n, double p_neg, std::uint64_t trials,
                              std::uint64_t master_seed, const SihParams& sih = {});
StudyResult run_study_triads(int n, double p, double p_neg, std::uint64_t trials,
                             std::uint64_t master_seed, const SihParams& sih = {});

inline constexpr std::string_view kCsvHeader =
    "trial,seed,n,p,p_neg,c0,c_inf,rho_link,n_triad,steps,absorbed";

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void export_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);
/// Throws ParseError on malformed input.
std::vector<TrialRecord> read_csv(std::istream& in);

}  // namespace balance_lab
