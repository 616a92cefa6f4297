#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cfslv/bench.hpp"
#include "cfslv/errors.hpp"
#include "cfslv/io.hpp"

namespace cfslv {
namespace {

std::string csv_of(const BenchConfig& config) {
  std::ostringstream out;
  write_csv(out, run_bench(config).records);
  return out.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(ParseList, Doubles) {
  EXPECT_EQ(parse_double_list("1.5,-2,3e-1"), (std::vector<double>{1.5, -2, 0.3}));
  EXPECT_EQ(parse_double_list(" 1 , 2 "), (std::vector<double>{1, 2}));
  EXPECT_THROW(parse_double_list("1,,2"), InvalidArgument);
  EXPECT_THROW(parse_double_list("1,x"), InvalidArgument);
  EXPECT_THROW(parse_double_list(""), InvalidArgument);
}

TEST(ParseList, Integers) {
  EXPECT_EQ(parse_integer_list("1,-2,0"), (std::vector<Integer>{1, -2, 0}));
  EXPECT_THROW(parse_integer_list("1.5"), InvalidArgument);
}

TEST(MatrixFile, RoundTrip) {
  const Matrix m{{1.0 / 3, -2}, {1e-300, 4}, {0, 5}};
  std::stringstream s;
  write_matrix(s, m);
  EXPECT_EQ(read_matrix(s), m);
}

TEST(MatrixFile, Malformed) {
  std::istringstream a("2 2\n1 2\n3\n");
  EXPECT_THROW(read_matrix(a), InvalidArgument);
  std::istringstream b("x\n");
  EXPECT_THROW(read_matrix(b), InvalidArgument);
  std::istringstream c("1 1\n1 2\n");
  EXPECT_THROW(read_matrix(c), InvalidArgument);
  EXPECT_THROW(read_matrix_file("/nonexistent/cfslv.txt"), InvalidArgument);
}

TEST(ResultDocument, FieldOrder) {
  ResultDocument doc;
  doc.add("command", std::string("solve")).add("f_star", 2.0).add("n", std::uint64_t{2});
  doc.add("a_star", std::vector<Integer>{1, -1});
  EXPECT_EQ(doc.str(), "command=solve\nf_star=2\nn=2\na_star=[1,-1]\n");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(CounterRng, StreamsIndependentOfOrder) {
  CounterRng a(5);
  CounterRng b(5);
  const auto a0 = a();
  const auto a1 = a();
  EXPECT_EQ(b(), a0);
  EXPECT_EQ(b(), a1);
  EXPECT_NE(CounterRng(6)(), a0);
}

TEST(CounterRng, NormalMoments) {
  CounterRng rng(123);
  double sum = 0;
  double sq = 0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.01);
  EXPECT_NEAR(sq / count, 1.0, 0.02);
}

TEST(Bench, OracleColumnEmptyWithoutOracle) {
  BenchConfig config;
  config.trials = 1;
  config.n_min = config.n_max = 2;
  config.power_min = config.power_max = 1;
  config.seed = 7;
  const auto rows = lines(csv_of(config));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "trial_id,n,k,power,seed,f_alg,f_oracle,rate_bits,elapsed_alg_s,elapsed_oracle_s,match");
  std::vector<std::string> cols;
  std::stringstream row(rows[1]);
  for (std::string c; std::getline(row, c, ',');) cols.push_back(c);
  cols.resize(11);
  EXPECT_EQ(cols[0], "0");
  EXPECT_EQ(cols[1], "2");
  EXPECT_EQ(cols[4], "7");
  EXPECT_TRUE(cols[6].empty());
  EXPECT_TRUE(cols[10].empty());
}

TEST(Bench, DeterministicAcrossThreadCounts) {
  BenchConfig config;
  config.trials = 40;
  config.n_min = 2;
  config.n_max = 6;
  config.power_min = 0.5;
  config.power_max = 10;
  config.seed = 42;
  config.oracle = true;
  config.timing = false;
  config.threads = 1;
  const auto one = csv_of(config);
  config.threads = 4;
  EXPECT_EQ(csv_of(config), one);
  EXPECT_EQ(lines(one).size(), 41u);
}

TEST(Bench, SingleTrialMatchesBatch) {
  BenchConfig config;
  config.trials = 10;
  config.n_min = 2;
  config.n_max = 5;
  config.power_min = 0.5;
  config.power_max = 5;
  config.seed = 99;
  config.timing = false;
  const auto report = run_bench(config);
  const auto lone = run_trial(config, 7);
  EXPECT_EQ(lone.f_alg, report.records[7].f_alg);
  EXPECT_EQ(lone.seed, 99u ^ 7u);
}

TEST(Bench, MimoCertifies) {
  BenchConfig config;
  config.trials = 20;
  config.n_min = 3;
  config.n_max = 4;
  config.power_min = 0.5;
  config.power_max = 3;
  config.seed = 9;
  config.mode = BenchMode::kMimo;
  config.k = 2;
  config.oracle = true;
  const auto report = run_bench(config);
  EXPECT_TRUE(report.all_matched());
  EXPECT_EQ(report.summary.match_rate, 1.0);
  for (const auto& r : report.records) EXPECT_EQ(r.k, 2u);
}

TEST(Bench, CandidateMeanRespectsBound) {
  BenchConfig config;
  config.trials = 30;
  config.n_min = 2;
  config.n_max = 8;
  config.power_min = 0.1;
  config.power_max = 20;
  config.seed = 5;
  const auto report = run_bench(config);
  for (const auto& r : report.records) {
    const double bound = static_cast<double>(r.n) * (2 * std::ceil(r.psi) + 2) + static_cast<double>(r.n);
    EXPECT_LE(static_cast<double>(r.candidates), bound);
  }
}

TEST(Bench, Validation) {
  BenchConfig config;
  config.n_min = 3;
  config.n_max = 2;
  EXPECT_THROW(run_bench(config), InvalidArgument);
  config.n_max = 4;
  config.power_min = 0;
  EXPECT_THROW(run_bench(config), InvalidArgument);
  config.power_min = 1;
  config.mode = BenchMode::kMimo;
  config.k = 4;
  EXPECT_THROW(run_bench(config), InvalidArgument);
}

TEST(Bench, BudgetErrorSurfaces) {
  BenchConfig config;
  config.trials = 3;
  config.n_min = config.n_max = 4;
  config.power_min = config.power_max = 100;
  config.budget = 5;
  EXPECT_THROW(run_bench(config), ResourceError);
}

TEST(Bench, JsonMirrorsCsv) {
  BenchConfig config;
  config.trials = 3;
  config.n_min = 2;
  config.n_max = 3;
  config.seed = 1;
  config.timing = false;
  config.oracle = true;
  std::ostringstream out;
  const auto report = run_bench(config);
  write_json(out, report.records);
  const auto doc = nlohmann::ordered_json::parse(out.str());
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[1]["trial_id"], 1);
  EXPECT_EQ(doc[2]["f_alg"].get<double>(), report.records[2].f_alg);
  EXPECT_EQ(doc[0]["match"], true);
  EXPECT_EQ(doc[0].begin().key(), "trial_id");
}

}  // namespace
}  // namespace cfslv
