#include "cfslv/solver_single.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "cfslv/errors.hpp"
#include "cfslv/gram.hpp"

namespace cfslv {

namespace {

constexpr double kMergeTol = 1e-12;

// Breakpoints sorted ascending, with the coordinates whose rounding jumps at
// each one. Group g spans entries [starts[g], starts[g+1]) of `coords`.
struct BreakpointTable {
  std::vector<double> values;
  std::vector<std::size_t> starts;
  std::vector<std::size_t> coords;

  std::size_t size() const { return values.size(); }
  std::span<const std::size_t> group(std::size_t g) const {
    return {coords.data() + starts[g], starts[g + 1] - starts[g]};
  }
};

BreakpointTable build_table(const ChannelVector& h, double psi) {
  if (!std::isfinite(psi) || psi < 1.0) throw InvalidArgument("search radius must be >= 1");
  const auto half_range = static_cast<std::int64_t>(std::ceil(psi));

  std::vector<std::pair<double, std::size_t>> raw;
  raw.reserve(h.size() * static_cast<std::size_t>(2 * half_range + 2));
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double mag = std::abs(h[j]);
    if (mag == 0.0) continue;
    for (std::int64_t t = -half_range - 1; t <= half_range; ++t) {
      const double c = static_cast<double>(t) + 0.5;
      raw.emplace_back(c / mag, j);
    }
  }
  std::sort(raw.begin(), raw.end());

  BreakpointTable table;
  table.coords.reserve(raw.size());
  for (const auto& [value, j] : raw) {
    const bool merge = !table.values.empty() &&
                       value - table.values.back() <= kMergeTol * std::max(1.0, std::abs(table.values.back()));
    if (!merge) {
      table.values.push_back(value);
      table.starts.push_back(table.coords.size());
    }
    table.coords.push_back(j);
  }
  table.starts.push_back(table.coords.size());
  return table;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t breakpoint_bound(std::size_t n, double psi) {
  const double per_coord = 2.0 * std::ceil(psi) + 2.0;
  const double total = static_cast<double>(n) * per_coord;
  if (!(total < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total);
}

BreakpointSet breakpoints(const ChannelVector& h, double psi) {
  return BreakpointSet{build_table(h, psi).values};
}

SolverResult solve_single(const ChannelVector& h, double power, const SingleSolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const GramMatrix g = build_gram_single(h, power);
  const std::size_t n = h.size();
  const double scale = 1.0 + power * h.norm_squared();
  const double psi = std::sqrt(scale);

  const std::size_t unit_axis = g.argmin_diagonal();
  double f_min = g.min_diagonal();
  std::vector<Integer> best;
  double best_x = 0.0;
  std::uint64_t candidates = n;

  std::uint64_t groups = 0;
  if (!h.is_zero()) {
    const auto bound = breakpoint_bound(n, psi);
    if (bound > options.breakpoint_budget)
      throw ResourceError("breakpoint bound n(2*ceil(psi)+2) = " + std::to_string(bound) +
                          " exceeds budget " + std::to_string(options.breakpoint_budget));

    const BreakpointTable table = build_table(h, psi);
    groups = table.size();

    // Walk the midpoints left to right. Between consecutive midpoints only the
    // coordinates listed at the breakpoint in between can change, so the
    // running ‖a‖² and hᵀa are patched rather than recomputed.
    std::vector<Integer> a(n, 0);
    Integer norm_sq = 0;
    std::size_t nonzero = 0;
    double dot = 0.0;

    auto set_coord = [&](std::size_t j, Integer value) {
      const Integer old = a[j];
      if (old == value) return;
      norm_sq += value * value - old * old;
      nonzero += static_cast<std::size_t>(value != 0) - static_cast<std::size_t>(old != 0);
      dot += h[j] * static_cast<double>(value - old);
      a[j] = value;
    };
    auto refresh_dot = [&] {
      dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += h[j] * static_cast<double>(a[j]);
    };

    for (std::size_t gi = 0; gi + 1 < groups; ++gi) {
      const double x = 0.5 * (table.values[gi] + table.values[gi + 1]);
      if (gi == 0) {
        for (std::size_t j = 0; j < n; ++j) set_coord(j, round_half_up(h[j] * x));
      } else {
        for (std::size_t j : table.group(gi)) set_coord(j, round_half_up(h[j] * x));
      }
      if (gi % n == 0) refresh_dot();
      ++candidates;
      if (nonzero == 0) continue;
      const double f = scale * static_cast<double>(norm_sq) - power * dot * dot;
      if (f < f_min) {
        f_min = f;
        best = a;
        best_x = x;
      }
    }
  }

  SolverResult result(best.empty() ? CoefficientVector::unit(n, unit_axis)
                                             : canonical_sign(CoefficientVector(best)));
  result.f_star = quadratic_form(g, result.a_star);
  result.candidates_evaluated = candidates;
  result.breakpoint_count = groups;
  result.search_radius = psi;
  if (!best.empty()) {
    // ⌈−hx⌋ = −⌈hx⌋ away from half-integers, and midpoints never sit on one.
    const bool flipped = !std::equal(best.begin(), best.end(), result.a_star.entries().begin());
    result.witness = {flipped ? -best_x : best_x};
  }
  result.elapsed_seconds = seconds_since(start);
  return result;
}

}  // namespace cfslv
