#include "cfslv/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>

#include <json.hpp>

#include "cfslv/errors.hpp"
#include "cfslv/gram.hpp"
#include "cfslv/oracle.hpp"
#include "cfslv/rate.hpp"
#include "cfslv/solver_dpk.hpp"
#include "cfslv/solver_single.hpp"

namespace cfslv {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

CounterRng::CounterRng(std::uint64_t key) : key_(splitmix64(key)) {}

CounterRng::result_type CounterRng::operator()() { return splitmix64(key_ + kGolden * counter_++); }

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

bool objectives_match(double f_alg, double f_oracle) {
  return std::abs(f_alg - f_oracle) <= 1e-9 * std::max(1.0, f_oracle);
}

TrialRecord run_trial(const BenchConfig& config, std::uint64_t trial_id) {
  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.seed = config.seed ^ trial_id;
  CounterRng rng(rec.seed);

  const std::uint64_t span = config.n_max - config.n_min + 1;
  rec.n = config.n_min + static_cast<std::size_t>(rng() % span);
  if (config.power_min == config.power_max) {
    rec.power = config.power_min;
  } else {
    const double lo = std::log(config.power_min);
    const double hi = std::log(config.power_max);
    rec.power = std::exp(lo + rng.uniform() * (hi - lo));
  }

  OracleOptions oracle_options;
  if (config.budget) oracle_options.budget = *config.budget;

  std::optional<GramMatrix> gram;
  if (config.mode == BenchMode::kSingle) {
    rec.k = 1;
    std::vector<double> entries(rec.n);
    for (double& x : entries) x = rng.normal();
    const ChannelVector h(std::move(entries));
    SingleSolverOptions options;
    if (config.budget) options.breakpoint_budget = *config.budget;

    const auto start = std::chrono::steady_clock::now();
    const SolverResult res = solve_single(h, rec.power, options);
    rec.elapsed_alg_s = seconds_since(start);
    rec.f_alg = res.f_star;
    rec.candidates = res.candidates_evaluated;
    rec.psi = res.search_radius;
    rec.rate_bits = rate_from_objective(res.f_star, h, rec.power);
    if (config.oracle) gram = build_gram_single(h, rec.power);
  } else {
    rec.k = config.k;
    Matrix hm(rec.n, rec.k);
    for (std::size_t i = 0; i < rec.n; ++i)
      for (std::size_t j = 0; j < rec.k; ++j) hm(i, j) = rng.normal();
    const MimoChannel channel(std::move(hm), rec.power);
    DpkSolverOptions options;
    if (config.budget) options.combination_budget = *config.budget;

    const auto start = std::chrono::steady_clock::now();
    const SolverResult res = solve_mimo(channel, options);
    rec.elapsed_alg_s = seconds_since(start);
    rec.f_alg = res.f_star;
    rec.candidates = res.candidates_evaluated;
    rec.psi = res.search_radius;
    rec.rate_bits = mimo_rate_from_objective(res.f_star);
    if (config.oracle) gram = build_gram_mimo(channel).gram;
  }

  if (gram) {
    const double radius = std::max(1.0, search_radius_psi(*gram));
    const auto start = std::chrono::steady_clock::now();
    const SolverResult oracle = brute_force_slv(*gram, radius, oracle_options);
    rec.elapsed_oracle_s = seconds_since(start);
    rec.f_oracle = oracle.f_star;
    rec.match = objectives_match(rec.f_alg, oracle.f_star);
  }

  if (!config.timing) {
    rec.elapsed_alg_s = 0.0;
    rec.elapsed_oracle_s = 0.0;
  }
  return rec;
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.n_min < 1 || config.n_max < config.n_min) throw InvalidArgument("n-range must satisfy 1 <= a <= b");
  if (!(config.power_min > 0.0) || !(config.power_max >= config.power_min) || !std::isfinite(config.power_max))
    throw InvalidArgument("power-range must satisfy 0 < p <= q");
  if (config.mode == BenchMode::kMimo && (config.k < 1 || config.k > config.n_min))
    throw InvalidArgument("mimo mode needs 1 <= k <= smallest n");

  const std::uint64_t trials = config.trials;
  std::vector<TrialRecord> records(trials);
  std::vector<std::string> budget_errors(trials);
  std::vector<std::exception_ptr> failures(trials);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    for (std::uint64_t id; (id = next.fetch_add(1)) < trials;) {
      try {
        records[id] = run_trial(config, id);
      } catch (const ResourceError& e) {
        budget_errors[id] = e.what();
      } catch (...) {
        failures[id] = std::current_exception();
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(config.threads, 1, std::max<std::uint64_t>(trials, 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::uint64_t id = 0; id < trials; ++id) {
    if (failures[id]) std::rethrow_exception(failures[id]);
    if (!budget_errors[id].empty())
      throw ResourceError("trial " + std::to_string(id) + ": " + budget_errors[id]);
  }

  BenchReport report{std::move(records), {}};
  BenchSummary& s = report.summary;
  s.trials = trials;
  for (const auto& r : report.records) {
    s.mean_candidates += static_cast<double>(r.candidates);
    s.mean_alg_seconds += r.elapsed_alg_s;
    if (r.match) {
      ++s.oracle_trials;
      s.matches += *r.match ? 1 : 0;
      s.mean_oracle_seconds += r.elapsed_oracle_s;
    }
  }
  if (trials > 0) {
    s.mean_candidates /= static_cast<double>(trials);
    s.mean_alg_seconds /= static_cast<double>(trials);
  }
  if (s.oracle_trials > 0) {
    s.match_rate = static_cast<double>(s.matches) / static_cast<double>(s.oracle_trials);
    s.mean_oracle_seconds /= static_cast<double>(s.oracle_trials);
  }
  return report;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial_id,n,k,power,seed,f_alg,f_oracle,rate_bits,elapsed_alg_s,elapsed_oracle_s,match\n";
  for (const auto& r : records) {
    out << r.trial_id << ',' << r.n << ',' << r.k << ',' << format_double(r.power) << ',' << r.seed << ','
        << format_double(r.f_alg) << ',' << (r.f_oracle ? format_double(*r.f_oracle) : "") << ','
        << format_double(r.rate_bits) << ',' << format_double(r.elapsed_alg_s) << ','
        << format_double(r.elapsed_oracle_s) << ',' << (r.match ? (*r.match ? "true" : "false") : "") << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<TrialRecord>& records) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["trial_id"] = r.trial_id;
    row["n"] = r.n;
    row["k"] = r.k;
    row["power"] = r.power;
    row["seed"] = r.seed;
    row["f_alg"] = r.f_alg;
    row["f_oracle"] = r.f_oracle ? nlohmann::ordered_json(*r.f_oracle) : nlohmann::ordered_json(nullptr);
    row["rate_bits"] = r.rate_bits;
    row["elapsed_alg_s"] = r.elapsed_alg_s;
    row["elapsed_oracle_s"] = r.elapsed_oracle_s;
    row["match"] = r.match ? nlohmann::ordered_json(*r.match) : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << '\n';
}

ResultDocument summary_document(const BenchSummary& s) {
  ResultDocument doc;
  doc.add("trials", s.trials)
      .add("oracle_trials", s.oracle_trials)
      .add("matches", s.matches)
      .add("match_rate", s.match_rate)
      .add("mean_candidates", s.mean_candidates)
      .add("mean_alg_seconds", s.mean_alg_seconds)
      .add("mean_oracle_seconds", s.mean_oracle_seconds);
  return doc;
}

unsigned threads_from_environment() {
  if (const char* env = std::getenv("CFSLV_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw InvalidArgument("CFSLV_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace cfslv
