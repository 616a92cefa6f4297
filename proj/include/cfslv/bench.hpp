#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cfslv/io.hpp"

namespace cfslv {

/// Counter-based generator: output j of stream `key` is a SplitMix64 hash of
/// (key, j). Streams are independent of the order in which they are drawn.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box–Muller on two uniforms.
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class BenchMode { kSingle, kMimo };

struct BenchConfig {
  std::uint64_t trials = 1;
  std::size_t n_min = 2;
  std::size_t n_max = 2;
  double power_min = 1.0;
  double power_max = 1.0;
  std::uint64_t seed = 0;
  BenchMode mode = BenchMode::kSingle;
  std::size_t k = 1;
  bool oracle = false;
  bool timing = true;
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
};

struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double power = 0.0;
  std::uint64_t seed = 0;
  double f_alg = 0.0;
  std::optional<double> f_oracle;
  double rate_bits = 0.0;
  double elapsed_alg_s = 0.0;
  double elapsed_oracle_s = 0.0;
  std::optional<bool> match;

  // Not serialized; feeds the summary.
  std::uint64_t candidates = 0;
  double psi = 0.0;
};

struct BenchSummary {
  std::uint64_t trials = 0;
  std::uint64_t oracle_trials = 0;
  std::uint64_t matches = 0;
  double match_rate = 0.0;
  double mean_candidates = 0.0;
  double mean_alg_seconds = 0.0;
  double mean_oracle_seconds = 0.0;
};

struct BenchReport {
  std::vector<TrialRecord> records;
  BenchSummary summary;

  bool all_matched() const { return summary.matches == summary.oracle_trials; }
};

/// Relative agreement test used for TrialRecord::match.
bool objectives_match(double f_alg, double f_oracle);

/// Runs trials on `config.threads` workers; records come back in trial order.
/// Throws ResourceError (naming the lowest failing trial) if any trial
/// exceeded a budget.
BenchReport run_bench(const BenchConfig& config);

/// Same draws and solver calls as run_bench for one trial.
TrialRecord run_trial(const BenchConfig& config, std::uint64_t trial_id);

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_json(std::ostream& out, const std::vector<TrialRecord>& records);
ResultDocument summary_document(const BenchSummary& summary);

/// Worker count from CFSLV_THREADS, defaulting to hardware concurrency.
unsigned threads_from_environment();

}  // namespace cfslv
