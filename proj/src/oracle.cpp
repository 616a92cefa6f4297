#include "cfslv/oracle.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cfslv/errors.hpp"

namespace cfslv {

namespace {

// Slack on the incumbent bound so floating-point error in the Cholesky
// partial sums never prunes a true minimizer.
constexpr double kBoundSlack = 1e-9;

Integer isqrt_floor(double x) {
  if (x < 0.0) return -1;
  auto m = static_cast<Integer>(std::floor(std::sqrt(x)));
  while (static_cast<double>((m + 1) * (m + 1)) <= x) ++m;
  while (m > 0 && static_cast<double>(m * m) > x) --m;
  return m;
}

double unit_ball_volume(std::size_t n) {
  const double half = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

// Upper-triangular R with G = RᵀR.
Matrix cholesky_upper(const GramMatrix& g) {
  const std::size_t n = g.dim();
  Matrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = g(j, j);
    for (std::size_t l = 0; l < j; ++l) diag -= r(l, j) * r(l, j);
    if (!(diag > 0.0)) throw InvalidArgument("oracle: Gram matrix is not numerically positive definite");
    r(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = g(j, i);
      for (std::size_t l = 0; l < j; ++l) s -= r(l, j) * r(l, i);
      r(j, i) = s / r(j, j);
    }
  }
  return r;
}

void ball_recurse(std::vector<Integer>& a, std::size_t i, double remaining, bool leading_zero,
                  const std::function<void(std::span<const Integer>)>& visit) {
  const std::size_t n = a.size();
  const Integer m = isqrt_floor(remaining);
  const Integer lo = leading_zero ? 0 : -m;
  for (Integer v = lo; v <= m; ++v) {
    a[i] = v;
    const double rest = remaining - static_cast<double>(v * v);
    if (i + 1 == n) {
      if (!(leading_zero && v == 0)) visit(a);
    } else {
      ball_recurse(a, i + 1, rest, leading_zero && v == 0, visit);
    }
  }
  a[i] = 0;
}

// Fincke–Pohst style search over the ellipsoid aᵀGa ≤ bound, intersected with
// the ball ‖a‖² ≤ radius². Coordinates are fixed from the last one down, and
// the last nonzero entry is kept positive.
class EllipsoidSearch {
 public:
  EllipsoidSearch(const GramMatrix& g, double radius, std::uint64_t node_cap)
      : g_(g), r_(cholesky_upper(g)), radius_sq_(radius * radius), node_cap_(node_cap),
        a_(g.dim(), 0), bound_(g.min_diagonal() * (1.0 + kBoundSlack)) {}

  void run() { recurse(g_.dim() - 1, 0.0, 0.0, true); }

  const std::vector<Integer>& best() const { return best_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  void recurse(std::size_t i, double partial, double norm_sq, bool suffix_zero) {
    if (++nodes_ > node_cap_) throw ResourceError("oracle: search exceeded node budget");
    const std::size_t n = g_.dim();
    double shift = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) shift += r_(i, j) * static_cast<double>(a_[j]);
    const double rii = r_(i, i);
    const double center = -shift / rii;
    const double rem = bound_ - partial;
    if (rem < 0.0) return;
    const double width = std::sqrt(rem) / rii;

    const Integer ball = isqrt_floor(radius_sq_ - norm_sq);
    if (ball < 0) return;
    Integer lo = std::max<Integer>(static_cast<Integer>(std::ceil(center - width)), -ball);
    const Integer hi = std::min<Integer>(static_cast<Integer>(std::floor(center + width)), ball);
    if (suffix_zero) lo = std::max<Integer>(lo, i == 0 ? 1 : 0);

    for (Integer v = lo; v <= hi; ++v) {
      a_[i] = v;
      const double term = rii * static_cast<double>(v) + shift;
      const double next_partial = partial + term * term;
      if (next_partial > bound_) continue;
      if (i == 0) {
        ++leaves_;
        const double f = quadratic_form(g_, a_);
        if (best_.empty() || f < best_f_) {
          best_f_ = f;
          best_ = a_;
          bound_ = std::min(bound_, f * (1.0 + kBoundSlack));
        }
      } else {
        recurse(i - 1, next_partial, norm_sq + static_cast<double>(v * v), suffix_zero && v == 0);
      }
    }
    a_[i] = 0;
  }

  const GramMatrix& g_;
  Matrix r_;
  double radius_sq_;
  std::uint64_t node_cap_;
  std::vector<Integer> a_;
  double bound_;
  std::vector<Integer> best_;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::uint64_t leaves_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

void enumerate_ball(std::size_t n, double radius, const std::function<void(std::span<const Integer>)>& visit) {
  if (n == 0) return;
  std::vector<Integer> a(n, 0);
  ball_recurse(a, 0, radius * radius, true, visit);
}

SolverResult brute_force_slv(const GramMatrix& g, double radius, const OracleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (!std::isfinite(radius) || radius < 1.0) throw InvalidArgument("oracle radius must be >= 1");
  const std::size_t n = g.dim();

  const double volume = unit_ball_volume(n);
  double estimate = 0.5 * volume * std::pow(radius + 0.5 * std::sqrt(static_cast<double>(n)), static_cast<double>(n));
  if (options.gram_pruning) {
    const Matrix r = cholesky_upper(g);
    const double reach = std::sqrt(g.min_diagonal());
    double ellipsoid = 0.5 * volume;
    for (std::size_t i = 0; i < n; ++i) ellipsoid *= reach / r(i, i) + 1.0;
    estimate = std::min(estimate, ellipsoid);
  }
  if (estimate > static_cast<double>(options.budget))
    throw ResourceError("oracle: estimated search space " + std::to_string(estimate) + " exceeds budget " +
                        std::to_string(options.budget));

  std::vector<Integer> best;
  double best_f = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated = 0;

  if (options.gram_pruning) {
    const auto cap = options.budget > std::numeric_limits<std::uint64_t>::max() / 16
                         ? std::numeric_limits<std::uint64_t>::max()
                         : options.budget * 16;
    EllipsoidSearch search(g, radius, cap);
    search.run();
    best = search.best();
    evaluated = search.leaves();
  } else {
    enumerate_ball(n, radius, [&](std::span<const Integer> a) {
      ++evaluated;
      const double f = quadratic_form(g, a);
      if (f < best_f) {
        best_f = f;
        best.assign(a.begin(), a.end());
      }
    });
  }

  SolverResult result(canonical_sign(CoefficientVector(best)));
  result.f_star = quadratic_form(g, result.a_star);
  result.candidates_evaluated = evaluated;
  result.search_radius = radius;
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace cfslv
