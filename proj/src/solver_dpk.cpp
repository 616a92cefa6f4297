#include "cfslv/solver_dpk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

#include "cfslv/eigen.hpp"
#include "cfslv/errors.hpp"

namespace cfslv {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kVertexMergeRadius = 1e-9;
constexpr double kTightTol = 1e-8;
constexpr double kParallelTol = 1e-10;
constexpr std::size_t kMaxTightGroups = 20;

struct VectorHash {
  std::size_t operator()(const std::vector<Integer>& v) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (Integer x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Advances `idx` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::vector<std::vector<double>> dedup_points(std::vector<std::vector<double>> raw) {
  std::sort(raw.begin(), raw.end());
  std::vector<std::vector<double>> kept;
  kept.reserve(raw.size());
  for (auto& p : raw) {
    bool duplicate = false;
    // kept is sorted on its first coordinate; only a thin slab can match.
    for (std::size_t i = kept.size(); i-- > 0;) {
      if (kept[i][0] < p[0] - kVertexMergeRadius) break;
      double d2 = 0.0;
      for (std::size_t c = 0; c < p.size(); ++c) d2 += (kept[i][c] - p[c]) * (kept[i][c] - p[c]);
      if (d2 <= kVertexMergeRadius * kVertexMergeRadius) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(std::move(p));
  }
  return kept;
}

class CandidateEvaluator {
 public:
  CandidateEvaluator(const GramMatrix& g, const Matrix& scaled_v)
      : g_(g), m_(scaled_v), f_min_(g.min_diagonal()) {}

  void evaluate(std::span<const double> p) {
    ++examined_;
    auto a = round_half_up_vector(m_ * p);
    auto first = std::find_if(a.begin(), a.end(), [](Integer x) { return x != 0; });
    if (first == a.end()) return;
    const bool flipped = *first < 0;
    if (flipped)
      for (Integer& x : a) x = -x;
    if (!seen_.insert(a).second) return;
    const double f = quadratic_form(g_, a);
    if (f < f_min_) {
      f_min_ = f;
      best_ = a;
      witness_.assign(p.begin(), p.end());
      if (flipped)
        for (double& x : witness_) x = -x;
    }
  }

  std::uint64_t examined() const { return examined_; }
  const std::vector<Integer>& best() const { return best_; }
  const std::vector<double>& witness() const { return witness_; }

 private:
  const GramMatrix& g_;
  const Matrix& m_;
  double f_min_;
  std::vector<Integer> best_;
  std::vector<double> witness_;
  std::unordered_set<std::vector<Integer>, VectorHash> seen_;
  std::uint64_t examined_ = 0;
};

void average_into(const VertexSet& vs, std::span<const std::size_t> members, std::vector<double>& p) {
  std::fill(p.begin(), p.end(), 0.0);
  for (std::size_t idx : members)
    for (std::size_t c = 0; c < vs.dim; ++c) p[c] += vs.points[idx][c];
  for (double& x : p) x /= static_cast<double>(members.size());
}

void check_subset_budget(std::uint64_t count, std::uint64_t budget) {
  if (count > budget)
    throw ResourceError("(k+1)-subset count exceeds combination budget " + std::to_string(budget));
}

void run_exhaustive(const VertexSet& vs, CandidateEvaluator& eval, std::uint64_t budget) {
  const std::size_t k = vs.dim;
  const std::size_t total = vs.points.size();
  if (total < k + 1) return;
  check_subset_budget(binomial(total, k + 1), budget);
  std::vector<double> p(k);
  auto idx = first_combination(k + 1);
  do {
    average_into(vs, idx, p);
    eval.evaluate(p);
  } while (next_combination(idx, total));
}

// Assigns every vertex to each rounding cell whose closure could contain it,
// then averages (k+1)-subsets within each cell. A vertex lying on t hyperplanes
// with g distinct orientations is offered to 2^g sign patterns; parallel
// hyperplanes through one point coincide and so share a side.
void run_shared_cell(const VertexSet& vs, const Matrix& m, CandidateEvaluator& eval, std::uint64_t budget) {
  const std::size_t n = m.rows();
  const std::size_t k = vs.dim;

  std::vector<double> row_norm(n);
  std::vector<std::vector<double>> direction(n, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    auto r = m.row(i);
    row_norm[i] = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    if (row_norm[i] == 0.0) continue;
    for (std::size_t c = 0; c < k; ++c) direction[i][c] = r[c] / row_norm[i];
  }

  struct Tight {
    std::size_t coord;
    double orientation;
  };

  std::map<std::vector<Integer>, std::vector<std::size_t>> cells;
  std::uint64_t patterns = 0;

  for (std::size_t vi = 0; vi < vs.points.size(); ++vi) {
    const auto y = m * vs.points[vi];
    std::vector<Integer> base(n);
    std::vector<Integer> lower(n);
    std::vector<std::vector<Tight>> groups;
    std::vector<std::vector<double>> group_dir;

    for (std::size_t i = 0; i < n; ++i) {
      const double floor_y = std::floor(y[i]);
      const double near_half = floor_y + 0.5;
      const bool tight = row_norm[i] > 0.0 && std::abs(y[i] - near_half) <= kTightTol * std::max(1.0, row_norm[i]);
      if (!tight) {
        base[i] = round_half_up(y[i]);
        continue;
      }
      lower[i] = static_cast<Integer>(floor_y);
      std::size_t gi = 0;
      double orientation = 0.0;
      for (; gi < groups.size(); ++gi) {
        double dot = 0.0;
        for (std::size_t c = 0; c < k; ++c) dot += direction[i][c] * group_dir[gi][c];
        if (std::abs(std::abs(dot) - 1.0) <= kParallelTol) {
          orientation = dot > 0.0 ? 1.0 : -1.0;
          break;
        }
      }
      if (gi == groups.size()) {
        groups.emplace_back();
        group_dir.push_back(direction[i]);
        orientation = 1.0;
      }
      groups[gi].push_back({i, orientation});
    }

    if (groups.size() > kMaxTightGroups)
      throw ResourceError("vertex lies on too many independent hyperplanes (" + std::to_string(groups.size()) + ")");
    const std::uint64_t combos = std::uint64_t{1} << groups.size();
    patterns += combos;
    check_subset_budget(patterns, budget);

    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      std::vector<Integer> a = base;
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const double side = (mask >> gi) & 1u ? 1.0 : -1.0;
        for (const auto& t : groups[gi]) a[t.coord] = lower[t.coord] + (side * t.orientation > 0.0 ? 1 : 0);
      }
      cells[std::move(a)].push_back(vi);
    }
  }

  std::vector<double> p(k);
  std::uint64_t subsets = 0;
  for (const auto& [cell, members] : cells) {
    if (members.size() < k + 1) continue;
    subsets += binomial(members.size(), k + 1);
    check_subset_budget(subsets, budget);
    auto idx = first_combination(k + 1);
    std::vector<std::size_t> chosen(k + 1);
    do {
      for (std::size_t c = 0; c <= k; ++c) chosen[c] = members[idx[c]];
      average_into(vs, chosen, p);
      eval.evaluate(p);
    } while (next_combination(idx, members.size()));
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Exact while it fits: each prefix product is itself a binomial coefficient,
  // and dividing out the gcd first keeps the intermediate within range.
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(acc, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    acc = saturating_mul(acc / g, factor);
    if (acc == std::numeric_limits<std::uint64_t>::max()) return acc;
  }
  return acc;
}

std::uint64_t vertex_bound(std::size_t n, std::size_t k, double psi) {
  const auto per_axis = static_cast<std::uint64_t>(2.0 * std::ceil(psi) + 2.0);
  std::uint64_t total = binomial(n, k);
  for (std::size_t i = 0; i < k; ++i) total = saturating_mul(total, per_axis);
  return total;
}

VertexSet vertex_set(const DpkDecomposition& dec, double psi, std::uint64_t budget) {
  if (!std::isfinite(psi) || psi < 1.0) throw InvalidArgument("search radius must be >= 1");
  const std::size_t n = dec.dim();
  const std::size_t k = dec.rank();
  const auto bound = vertex_bound(n, k, psi);
  if (bound > budget)
    throw ResourceError("vertex estimate C(n,k)(2*ceil(psi)+2)^k = " + std::to_string(bound) +
                        " exceeds budget " + std::to_string(budget));

  const Matrix m = dec.scaled_v();
  const auto half_range = static_cast<std::int64_t>(std::ceil(psi));
  const auto per_axis = static_cast<std::size_t>(2 * half_range + 2);

  std::vector<std::vector<double>> raw;
  auto pi = first_combination(k);
  do {
    const Matrix sub = m.select_rows(pi);
    const auto sv = singular_values(sub);
    if (!(sv.front() > 0.0 && sv.back() > kRankTol * sv.front())) continue;
    const LuFactorization lu(sub);
    if (lu.singular()) continue;

    std::vector<std::size_t> digit(k, 0);
    std::vector<double> c(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i)
        c[i] = static_cast<double>(static_cast<std::int64_t>(digit[i]) - half_range - 1) + 0.5;
      raw.push_back(lu.solve(c));
      std::size_t pos = 0;
      while (pos < k && ++digit[pos] == per_axis) digit[pos++] = 0;
      if (pos == k) break;
    }
  } while (next_combination(pi, n));

  return VertexSet{k, dedup_points(std::move(raw))};
}

SolverResult solve_dpk(const GramMatrix& g, const DpkDecomposition& dec, const DpkSolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (!validate_dpk(g, dec, 1e-9)) throw InvalidArgument("decomposition does not match the Gram matrix");

  const std::size_t n = g.dim();
  const double psi = search_radius_psi(g);
  const Matrix m = dec.scaled_v();
  const VertexSet vs = vertex_set(dec, psi, options.combination_budget);

  CandidateEvaluator eval(g, m);
  if (options.strategy == SubsetStrategy::kExhaustive)
    run_exhaustive(vs, eval, options.combination_budget);
  else
    run_shared_cell(vs, m, eval, options.combination_budget);

  SolverResult result(eval.best().empty() ? CoefficientVector::unit(n, g.argmin_diagonal())
                                                    : CoefficientVector(eval.best()));
  result.f_star = quadratic_form(g, result.a_star);
  result.candidates_evaluated = n + eval.examined();
  result.breakpoint_count = vs.points.size();
  result.search_radius = psi;
  result.witness = eval.witness();
  result.elapsed_seconds = seconds_since(start);
  return result;
}

SolverResult solve_mimo(const MimoChannel& channel, const DpkSolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const MimoGram mg = build_gram_mimo(channel);
  if (mg.decomposition) return solve_dpk(mg.gram, *mg.decomposition, options);

  SolverResult result(CoefficientVector::unit(channel.users(), mg.gram.argmin_diagonal()));
  result.f_star = quadratic_form(mg.gram, result.a_star);
  result.candidates_evaluated = channel.users();
  result.search_radius = search_radius_psi(mg.gram);
  result.elapsed_seconds = seconds_since(start);
  return result;
}

}  // namespace cfslv
