#include "balance_lab/experiments.hpp"

#include "balance_lab/balance.hpp"
#include "balance_lab/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

namespace balance_lab {

void ErParams::validate() const {
  if (n < 2) throw InvalidArgument("n must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
  if (!(p_neg >= 0.0 && p_neg <= 1.0)) throw InvalidArgument("p_neg must lie in [0, 1]");
}

AppraisalMatrix gen_er_signed(const ErParams& params, CounterRng& rng) {
  params.validate();
  AppraisalMatrix x(params.n);
  for (Node i = 0; i < params.n; ++i) {
    for (Node j = i + 1; j < params.n; ++j) {
      if (!rng.bernoulli(params.p)) continue;
      x.set(i, j, rng.bernoulli(params.p_neg) ? -1 : 1);
      x.set(j, i, rng.bernoulli(params.p_neg) ? -1 : 1);
    }
  }
  return x;
}

AppraisalMatrix gen_er_signed(const ErParams& params, std::uint64_t seed) {
  CounterRng rng(seed);
  return gen_er_signed(params, rng);
}

std::optional<double> conflict_ratio(const AppraisalMatrix& x) {
  const auto links = nonzero_count(x);
  if (links == 0) return std::nullopt;
  return static_cast<double>(negative_count(x)) / static_cast<double>(links);
}

double link_density(const AppraisalMatrix& x) {
  const int n = x.size();
  if (n < 2) throw InvalidArgument("link density needs n >= 2");
  return static_cast<double>(nonzero_count(x)) / (static_cast<double>(n) * (n - 1));
}

int count_triads(const AppraisalMatrix& x) {
  const int n = x.size();
  auto both = [&](Node a, Node b) { return x(a, b) != 0 && x(b, a) != 0; };
  int count = 0;
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (!both(i, j)) continue;
      for (Node k = j + 1; k < n; ++k) {
        if (both(i, k) && both(j, k)) ++count;
      }
    }
  }
  return count;
}

std::string_view to_string(Study study) {
  switch (study) {
    case Study::C0: return "c0";
    case Study::Density: return "density";
    case Study::Triads: return "triads";
  }
  return "unknown";
}

std::optional<Study> study_from_string(std::string_view name) {
  for (Study s : {Study::C0, Study::Density, Study::Triads}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::uint64_t dynamics_seed(std::uint64_t er_seed) { return CounterRng::derive_key(er_seed, 1); }

TrialRecord run_er_trial(const ErParams& er, std::uint64_t seed, const SihParams& sih,
                         std::uint64_t max_steps) {
  const AppraisalMatrix x0 = gen_er_signed(er, seed);
  const AbsorptionRecord run = run_sih(x0, sih, dynamics_seed(seed), max_steps);
  TrialRecord record;
  record.seed = seed;
  record.er = er;
  record.c0 = conflict_ratio(x0);
  record.c_inf = conflict_ratio(run.final_x);
  record.rho_link = link_density(x0);
  record.n_triad = count_triads(x0);
  record.steps = run.steps;
  record.absorbed = run.absorbed;
  return record;
}

void StudyConfig::validate() const {
  if (trials < 2) throw InvalidArgument("a study needs at least two trials");
  if (max_steps == 0) throw InvalidArgument("max_steps must be positive");
  ErParams{n, study == Study::Density ? 0.5 : p, study == Study::C0 ? 0.5 : p_neg}.validate();
  sih.validate();
}

unsigned default_worker_count() {
  unsigned count = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BALANCE_LAB_THREADS")) {
    const std::string_view text(env);
    unsigned cap = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc() && ptr == text.data() + text.size() && cap > 0) {
      count = std::min(count, cap);
    }
  }
  return count;
}

namespace {

template <typename Fn>
void parallel_for(std::uint64_t count, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<double> regressor(const StudyConfig& config, const TrialRecord& r) {
  switch (config.study) {
    case Study::C0: return r.c0;
    case Study::Density: return r.rho_link;
    case Study::Triads: return static_cast<double>(r.n_triad);
  }
  return std::nullopt;
}

}  // namespace

StudyResult run_study(const StudyConfig& config) {
  config.validate();
  StudyResult result;
  result.config = config;
  result.records.resize(config.trials);

  const unsigned threads = config.threads > 0 ? config.threads : default_worker_count();
  parallel_for(config.trials, threads, [&](std::uint64_t index) {
    const std::uint64_t seed = CounterRng::derive_key(config.master_seed, index);
    ErParams er{config.n, config.p, config.p_neg};
    if (config.study != Study::Triads) {
      CounterRng draw(CounterRng::derive_key(seed, 2));
      (config.study == Study::C0 ? er.p_neg : er.p) = draw.uniform01();
    }
    TrialRecord record = run_er_trial(er, seed, config.sih, config.max_steps);
    record.trial = index;
    result.records[index] = record;
  });

  std::vector<double> xs, ys;
  std::uint64_t absorbed = 0;
  double total_steps = 0.0;
  for (const TrialRecord& r : result.records) {
    absorbed += r.absorbed ? 1 : 0;
    total_steps += static_cast<double>(r.steps);
    const auto x = regressor(config, r);
    if (r.absorbed && x && r.c_inf) {
      xs.push_back(*x);
      ys.push_back(*r.c_inf);
    } else {
      ++result.excluded;
    }
  }
  const auto trials = static_cast<double>(config.trials);
  result.absorbed_fraction = static_cast<double>(absorbed) / trials;
  result.mean_steps = total_steps / trials;
  if (xs.size() >= 2) result.regression = linear_regression(xs, ys);
  return result;
}

StudyResult run_study_c0(int n, double p, std::uint64_t trials, std::uint64_t master_seed,
                         const SihParams& sih) {
  StudyConfig config;
  config.study = Study::C0;
  config.n = n;
  config.p = p;
  config.trials = trials;
  config.master_seed = master_seed;
  config.sih = sih;
  return run_study(config);
}

StudyResult run_study_density(int n, double p_neg, std::uint64_t trials,
                              std::uint64_t master_seed, const SihParams& sih) {
  StudyConfig config;
  config.study = Study::Density;
  config.n = n;
  config.p_neg = p_neg;
  config.trials = trials;
  config.master_seed = master_seed;
  config.sih = sih;
  return run_study(config);
}

StudyResult run_study_triads(int n, double p, double p_neg, std::uint64_t trials,
                             std::uint64_t master_seed, const SihParams& sih) {
  StudyConfig config;
  config.study = Study::Triads;
  config.n = n;
  config.p = p;
  config.p_neg = p_neg;
  config.trials = trials;
  config.master_seed = master_seed;
  config.sih = sih;
  return run_study(config);
}

// ---- CSV -----------------------------------------------------------------

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buffer.data(), ptr);
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  auto optional = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  out << kCsvHeader << '\n';
  for (const TrialRecord& r : records) {
    out << r.trial << ',' << r.seed << ',' << r.er.n << ',' << format_double(r.er.p) << ','
        << format_double(r.er.p_neg) << ',' << optional(r.c0) << ',' << optional(r.c_inf) << ','
        << format_double(r.rho_link) << ',' << r.n_triad << ',' << r.steps << ','
        << (r.absorbed ? 1 : 0) << '\n';
  }
}

void export_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_csv(out, records);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

namespace {

template <typename T>
T parse_field(std::string_view field, int line_no, const char* name) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(std::string("bad value for ") + name + ": '" + std::string(field) + "'",
                     line_no);
  }
  return value;
}

std::optional<double> parse_optional(std::string_view field, int line_no, const char* name) {
  if (field.empty()) return std::nullopt;
  return parse_field<double>(field, line_no, name);
}

}  // namespace

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing CSV header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("unexpected CSV header", 1);

  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      f.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    f.push_back(rest);
    if (f.size() != 11) throw ParseError("expected 11 fields", line_no);

    TrialRecord r;
    r.trial = parse_field<std::uint64_t>(f[0], line_no, "trial");
    r.seed = parse_field<std::uint64_t>(f[1], line_no, "seed");
    r.er.n = parse_field<int>(f[2], line_no, "n");
    r.er.p = parse_field<double>(f[3], line_no, "p");
    r.er.p_neg = parse_field<double>(f[4], line_no, "p_neg");
    r.c0 = parse_optional(f[5], line_no, "c0");
    r.c_inf = parse_optional(f[6], line_no, "c_inf");
    r.rho_link = parse_field<double>(f[7], line_no, "rho_link");
    r.n_triad = parse_field<int>(f[8], line_no, "n_triad");
    r.steps = parse_field<std::uint64_t>(f[9], line_no, "steps");
    const int absorbed = parse_field<int>(f[10], line_no, "absorbed");
    if (absorbed != 0 && absorbed != 1) throw ParseError("absorbed must be 0 or 1", line_no);
    r.absorbed = absorbed == 1;
    records.push_back(r);
  }
  return records;
}

}  // namespace balance_lab
