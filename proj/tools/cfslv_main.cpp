// cfslv: exact coefficient selection for compute-and-forward relaying.
//
//   cfslv solve  --h 1,1 --power 2
//   cfslv mimo   --H channel.txt --power 2
//   cfslv oracle --gram gram.txt --radius 2.5
//   cfslv rate   --h 1,1 --power 2 --a 1,1
//   cfslv bench  --trials 100 --n-range 2:6 --power-range 0.5:10 --seed 42 --oracle
//
// Exit codes: 0 success, 1 oracle mismatch in bench, 2 usage or input error,
// 3 resource budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cfslv/bench.hpp"
#include "cfslv/errors.hpp"
#include "cfslv/gram.hpp"
#include "cfslv/io.hpp"
#include "cfslv/oracle.hpp"
#include "cfslv/rate.hpp"
#include "cfslv/solver_dpk.hpp"
#include "cfslv/solver_single.hpp"

namespace {

using namespace cfslv;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

template <class T>
std::pair<T, T> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument(std::string(what) + " must look like a:b");
  if constexpr (std::is_integral_v<T>) {
    const auto lo = parse_integer_list(text.substr(0, colon));
    const auto hi = parse_integer_list(text.substr(colon + 1));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] < 0 || hi[0] < 0)
      throw InvalidArgument(std::string(what) + " must look like a:b");
    return {static_cast<T>(lo[0]), static_cast<T>(hi[0])};
  } else {
    const auto lo = parse_double_list(text.substr(0, colon));
    const auto hi = parse_double_list(text.substr(colon + 1));
    if (lo.size() != 1 || hi.size() != 1) throw InvalidArgument(std::string(what) + " must look like a:b");
    return {lo[0], hi[0]};
  }
}

void add_result_fields(ResultDocument& doc, const SolverResult& res) {
  doc.add("psi", res.search_radius)
      .add("f_star", res.f_star)
      .add("a_star", res.a_star.entries());
}

void add_stats(ResultDocument& doc, const SolverResult& res, const char* count_name) {
  doc.add("candidates_evaluated", res.candidates_evaluated)
      .add(count_name, res.breakpoint_count)
      .add("elapsed_seconds", res.elapsed_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact shortest-vector solvers for compute-and-forward coefficient selection"};
  app.require_subcommand(1);
  // `--h` is the channel option, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  std::optional<std::uint64_t> budget;
  app.add_option("--budget", budget, "Override enumeration/combination budgets");

  std::string h_text;
  std::string a_text;
  std::string path;
  double power = 0.0;
  double radius = 0.0;

  auto* solve = app.add_subcommand("solve", "Single-antenna relay (breakpoint sweep)");
  solve->add_option("--h", h_text, "Channel gains, comma separated")->required();
  solve->add_option("--power", power, "Transmit power P")->required();

  auto* mimo = app.add_subcommand("mimo", "Multi-antenna relay (vertex enumeration)");
  mimo->add_option("--H", path, "Channel matrix file (n k header, n rows)")->required();
  mimo->add_option("--power", power, "Transmit power P")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force shortest vector of a Gram matrix");
  oracle->add_option("--gram", path, "Gram matrix file (n n header, n rows)")->required();
  oracle->add_option("--radius", radius, "Search radius (>= 1)")->required();

  auto* rate = app.add_subcommand("rate", "Computation rate of a coefficient vector");
  rate->add_option("--h", h_text, "Channel gains, comma separated")->required();
  rate->add_option("--power", power, "Transmit power P")->required();
  rate->add_option("--a", a_text, "Integer coefficients, comma separated")->required();

  auto* bench = app.add_subcommand("bench", "Random-channel benchmark and oracle certification");
  std::uint64_t trials = 1;
  std::string n_range;
  std::string power_range;
  std::uint64_t seed = 0;
  std::string mode = "single";
  std::size_t k = 1;
  bool use_oracle = false;
  bool no_timing = false;
  std::string format = "csv";
  std::string out_path;
  bench->add_option("--trials", trials, "Number of trials")->required();
  bench->add_option("--n-range", n_range, "Users per trial, a:b inclusive")->required();
  bench->add_option("--power-range", power_range, "Power drawn log-uniform in p:q")->required();
  bench->add_option("--seed", seed, "Base seed")->required();
  bench->add_option("--mode", mode, "single or mimo")->check(CLI::IsMember({"single", "mimo"}));
  bench->add_option("--k", k, "Relay antennas in mimo mode");
  bench->add_flag("--oracle", use_oracle, "Certify every trial against the brute-force oracle");
  bench->add_flag("--no-timing", no_timing, "Write zeros in the timing columns");
  bench->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", out_path, "Report file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve) {
      const ChannelVector h(parse_double_list(h_text));
      SingleSolverOptions options;
      if (budget) options.breakpoint_budget = *budget;
      const auto res = solve_single(h, power, options);
      ResultDocument doc;
      doc.add("command", std::string("solve")).add("n", std::uint64_t{h.size()}).add("power", power);
      add_result_fields(doc, res);
      doc.add("rate_bits", rate_from_objective(res.f_star, h, power));
      add_stats(doc, res, "breakpoint_count");
      std::cout << doc;
    } else if (*mimo) {
      const MimoChannel channel(read_matrix_file(path), power);
      DpkSolverOptions options;
      if (budget) options.combination_budget = *budget;
      const auto res = solve_mimo(channel, options);
      ResultDocument doc;
      doc.add("command", std::string("mimo"))
          .add("n", std::uint64_t{channel.users()})
          .add("k", std::uint64_t{channel.antennas()})
          .add("power", power);
      add_result_fields(doc, res);
      doc.add("rate_bits", mimo_rate_from_objective(res.f_star));
      add_stats(doc, res, "vertex_count");
      std::cout << doc;
    } else if (*oracle) {
      const GramMatrix g(read_matrix_file(path));
      OracleOptions options;
      if (budget) options.budget = *budget;
      const auto res = brute_force_slv(g, radius, options);
      ResultDocument doc;
      doc.add("command", std::string("oracle")).add("n", std::uint64_t{g.dim()}).add("radius", radius);
      doc.add("f_star", res.f_star).add("a_star", res.a_star.entries());
      doc.add("candidates_evaluated", res.candidates_evaluated).add("elapsed_seconds", res.elapsed_seconds);
      std::cout << doc;
    } else if (*rate) {
      const ChannelVector h(parse_double_list(h_text));
      const CoefficientVector a(parse_integer_list(a_text));
      if (a.size() != h.size()) throw InvalidArgument("--a and --h must have the same length");
      const double f = quadratic_form(build_gram_single(h, power), a);
      ResultDocument doc;
      doc.add("command", std::string("rate")).add("n", std::uint64_t{h.size()}).add("power", power);
      doc.add("a", a.entries()).add("f", f).add("rate_bits", computation_rate(h, power, a));
      std::cout << doc;
    } else if (*bench) {
      BenchConfig config;
      config.trials = trials;
      std::tie(config.n_min, config.n_max) = parse_range<std::size_t>(n_range, "--n-range");
      std::tie(config.power_min, config.power_max) = parse_range<double>(power_range, "--power-range");
      config.seed = seed;
      config.mode = mode == "mimo" ? BenchMode::kMimo : BenchMode::kSingle;
      config.k = k;
      config.oracle = use_oracle;
      config.timing = !no_timing;
      config.budget = budget;
      config.threads = threads_from_environment();

      const BenchReport report = run_bench(config);

      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw InvalidArgument("cannot open output file '" + out_path + "'");
      }
      std::ostream& report_out = out_path.empty() ? std::cout : file;
      std::ostream& summary_out = out_path.empty() ? std::cerr : std::cout;
      if (format == "json")
        write_json(report_out, report.records);
      else
        write_csv(report_out, report.records);
      summary_out << summary_document(report.summary);
      if (!report.all_matched()) return kExitMismatch;
    }
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
