#include "graphon/psi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "graphon/csv.hpp"
#include "graphon/errors.hpp"
#include "graphon/parallel.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

constexpr int kPairsPerStratum = 512;
constexpr int kMinRetained = 30;
constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile
constexpr double kSlopeThreshold = 0.1;
constexpr double kZeroMassThreshold = 0.01;

struct WelfordAcc {
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t n = 0;
  void add(double v) {
    ++n;
    double d1 = v - mean;
    mean += d1 / static_cast<double>(n);
    m2 += d1 * (v - mean);
  }
  double stderr_of_mean() const {
    if (n < 2) return 0.0;
    double var = m2 / static_cast<double>(n - 1);
    return std::sqrt(var / static_cast<double>(n));
  }
};

// D estimate for one pair, drawing z from the caller's stream.
InnerDistanceEstimate estimate_pair(const Graphon& w, std::span<const double> x,
                                    std::span<const double> y, int n_z, SplitMix64& rng,
                                    std::span<double> z) {
  WelfordAcc acc;
  for (int i = 0; i < n_z; ++i) {
    for (auto& c : z) c = rng.next_unit();
    acc.add(std::fabs(w(x, z) - w(y, z)));
  }
  return {acc.mean, acc.stderr_of_mean(), n_z};
}

double wilson_lower_bound(std::int64_t k, std::int64_t n) {
  if (n == 0) return 0.0;
  double phat = static_cast<double>(k) / static_cast<double>(n);
  double z2 = kZ95 * kZ95;
  double denom = 1.0 + z2 / static_cast<double>(n);
  double center = phat + z2 / (2.0 * static_cast<double>(n));
  double rad = kZ95 * std::sqrt(phat * (1.0 - phat) / static_cast<double>(n) +
                                z2 / (4.0 * static_cast<double>(n) * static_cast<double>(n)));
  return (center - rad) / denom;
}

struct WlsFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  bool ok = false;
};

// Weighted least squares of y against x with per-point standard deviations;
// the slope error comes from the propagated weights, not residuals.
WlsFit wls_line(std::span<const double> x, std::span<const double> y,
                std::span<const double> sigma) {
  const std::size_t n = x.size();
  if (n < 2) return {};
  double sw = 0.0, swx = 0.0;
  std::vector<double> wgt(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = sigma[i] > 1e-12 ? sigma[i] : 1e-12;
    wgt[i] = 1.0 / (s * s);
    sw += wgt[i];
    swx += wgt[i] * x[i];
  }
  double xbar = swx / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - xbar;
    sxx += wgt[i] * dx * dx;
    sxy += wgt[i] * dx * y[i];
  }
  if (sxx <= 0.0) return {};
  return {sxy / sxx, std::sqrt(1.0 / sxx), true};
}

void check_grid(std::span<const double> grid) {
  if (grid.size() < 2) throw BadGrid("delta grid needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw BadGrid("delta grid must be strictly positive");
    if (i > 0 && !(grid[i] < grid[i - 1]))
      throw BadGrid("delta grid must be strictly decreasing");
  }
}

}  // namespace

const char* to_string(PsiVerdictKind kind) {
  switch (kind) {
    case PsiVerdictKind::Finite: return "Finite";
    case PsiVerdictKind::Divergent: return "Divergent";
    case PsiVerdictKind::DegenerateZero: return "DegenerateZero";
  }
  return "?";
}

InnerDistanceEstimate inner_distance(const Graphon& w, const Point& x, const Point& y, int n_z,
                                     std::uint64_t seed) {
  if (static_cast<int>(x.size()) != w.dim() || static_cast<int>(y.size()) != w.dim())
    throw DimensionMismatch("inner_distance: point dimension does not match the kernel");
  if (n_z < 2) throw std::invalid_argument("inner_distance: n_z must be >= 2");
  SplitMix64 rng(substream(seed, stream_tag::inner));
  std::vector<double> z(x.size());
  return estimate_pair(w, x, y, n_z, rng, z);
}

TruncatedPsiResult psi_truncated(const Graphon& w, double q, std::span<const double> delta_grid,
                                 const PsiBudget& budget, std::uint64_t seed) {
  check_grid(delta_grid);
  if (!(q > 0.0)) throw DomainError("psi_truncated: q must be > 0");
  if (budget.n_pairs < 1) throw std::invalid_argument("psi_truncated: n_pairs must be >= 1");
  if (budget.n_z < 2) throw std::invalid_argument("psi_truncated: n_z must be >= 2");

  const int d = w.dim();
  const int n_pairs = budget.n_pairs;
  const double delta_min = delta_grid.back();
  const std::int64_t n_strata =
      (static_cast<std::int64_t>(n_pairs) + kPairsPerStratum - 1) / kPairsPerStratum;
  const std::uint64_t root = substream(seed, stream_tag::psi_pairs);

  // One D-hat per pair; strata write disjoint ranges, so any thread count
  // produces the same bits.
  std::vector<double> dhat(static_cast<std::size_t>(n_pairs));
  for_each_stratum(n_strata, resolve_threads(budget.threads), [&](std::int64_t s) {
    SplitMix64 rng(substream(root, static_cast<std::uint64_t>(s)));
    std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d)),
        z(static_cast<std::size_t>(d));
    const int begin = static_cast<int>(s) * kPairsPerStratum;
    const int end = std::min(n_pairs, begin + kPairsPerStratum);
    for (int i = begin; i < end; ++i) {
      for (auto& c : x) c = rng.next_unit();
      for (auto& c : y) c = rng.next_unit();
      InnerDistanceEstimate est = estimate_pair(w, x, y, budget.n_z, rng, z);
      // The inverse power amplifies noise near the truncation floor (Jensen
      // bias), so pairs whose relative error is worse than 10% get one shot
      // at 4x the inner budget.
      if (est.stderr_ >= std::max(est.value, delta_min) * 0.1)
        est = estimate_pair(w, x, y, 4 * budget.n_z, rng, z);
      dhat[static_cast<std::size_t>(i)] = est.value;
    }
  });

  TruncatedPsiResult result;
  result.q = q;
  result.n_pairs = n_pairs;
  result.n_z = budget.n_z;
  result.seed = seed;

  std::int64_t n_zero = 0;
  for (double dv : dhat)
    if (dv <= delta_min) ++n_zero;
  result.zero_mass = static_cast<double>(n_zero) / static_cast<double>(n_pairs);

  result.points.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    WelfordAcc acc;
    std::int64_t retained = 0;
    for (double dv : dhat) {
      if (dv > delta) {
        acc.add(std::pow(dv, -q));
        ++retained;
      } else {
        acc.add(0.0);
      }
    }
    result.points.push_back({delta, acc.mean, acc.stderr_of_mean(), retained});
  }

  // Verdict.  The zero-mass atom wins first: a kernel whose rows collide
  // exactly produces a point mass at D = 0 that no grid refinement cures.
  if (result.zero_mass > kZeroMassThreshold && wilson_lower_bound(n_zero, n_pairs) > 0.0) {
    result.verdict.kind = PsiVerdictKind::DegenerateZero;
    return result;
  }

  if (result.points.front().n_retained < kMinRetained)
    throw InsufficientSamples("psi_truncated: only " +
                              std::to_string(result.points.front().n_retained) +
                              " pairs above the largest delta (need 30)");

  // Log-log slope on the finest half of the grid.
  const std::size_t m = delta_grid.size();
  const std::size_t fit_n = std::max<std::size_t>(2, (m + 1) / 2);
  std::vector<double> lx, ly, lsig;
  for (std::size_t j = m - fit_n; j < m; ++j) {
    const PsiPoint& p = result.points[j];
    if (p.t_value <= 0.0) continue;
    lx.push_back(std::log(1.0 / p.delta));
    ly.push_back(std::log(p.t_value));
    lsig.push_back(p.t_stderr / p.t_value);
  }
  WlsFit fit = wls_line(lx, ly, lsig);
  result.verdict.log_slope = fit.slope;
  result.verdict.slope_stderr = fit.slope_stderr;

  if (fit.ok && fit.slope - kZ95 * fit.slope_stderr > kSlopeThreshold) {
    result.verdict.kind = PsiVerdictKind::Divergent;
    return result;
  }

  // Finite: extrapolate the mass still hiding below delta_min by fitting a
  // power law to the increments between consecutive grid points.
  result.verdict.kind = PsiVerdictKind::Finite;
  const PsiPoint& last = result.points[m - 1];
  const PsiPoint& prev = result.points[m - 2];

  std::vector<double> ix, iy;
  for (std::size_t j = m - fit_n; j + 1 < m; ++j) {
    double inc = result.points[j + 1].t_value - result.points[j].t_value;
    if (inc > 0.0) {
      ix.push_back(std::log(std::sqrt(result.points[j].delta * result.points[j + 1].delta)));
      iy.push_back(std::log(inc));
    }
  }
  double remainder = 0.0, remainder_stderr = 0.0;
  double last_inc = last.t_value - prev.t_value;
  if (ix.size() >= 2 && last_inc > 0.0) {
    std::vector<double> unit(ix.size(), 1.0);
    WlsFit beta = wls_line(ix, iy, unit);
    if (beta.ok && beta.slope > 0.02) {
      double rho = last.delta / prev.delta;  // < 1
      double factor = std::pow(rho, beta.slope) / (1.0 - std::pow(rho, beta.slope));
      remainder = last_inc * factor;
      // Noise on the final increment, computed over shared pairs.
      WelfordAcc inc_acc;
      for (double dv : dhat) {
        double v = (dv > last.delta && dv <= prev.delta) ? std::pow(dv, -q) : 0.0;
        inc_acc.add(v);
      }
      remainder_stderr = factor * inc_acc.stderr_of_mean();
    }
  }
  result.verdict.psi_estimate = last.t_value + remainder;
  result.verdict.psi_stderr =
      std::sqrt(last.t_stderr * last.t_stderr + remainder_stderr * remainder_stderr);
  return result;
}

std::vector<double> default_delta_grid() {
  std::vector<double> grid;
  for (int j = 0; j < 7; ++j) grid.push_back(std::pow(10.0, -1.0 - 0.5 * j));
  return grid;
}

TruncatedPsiResult classify_divergence(const Graphon& w, double q, const PsiBudget& budget,
                                       std::uint64_t seed) {
  auto grid = default_delta_grid();
  return psi_truncated(w, q, grid, budget, seed);
}

double psi_analytic_dot1(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw DomainError("psi_analytic_dot1: closed form requires 0 < q < 1");
  return std::exp2(q) * 2.0 / ((1.0 - q) * (2.0 - q));
}

double mean_abs_projection(std::span<const double> u, int n_z, std::uint64_t seed) {
  if (n_z < 1) throw std::invalid_argument("mean_abs_projection: n_z must be >= 1");
  SplitMix64 rng(substream(seed, stream_tag::cd_z));
  std::vector<double> z(u.size());
  double sum = 0.0;
  for (int i = 0; i < n_z; ++i) {
    double dot = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) dot += u[k] * rng.next_unit();
    sum += std::fabs(dot);
  }
  return sum / n_z;
}

CdEstimate estimate_cd(int d, int n_dirs, int n_z, std::uint64_t seed) {
  if (d < 1) throw DomainError("estimate_cd: d must be >= 1");
  if (n_dirs < 0 || n_z < 1) throw std::invalid_argument("estimate_cd: bad budget");

  // Shared z sample: the minimum over directions is then a minimum of
  // correlated estimates, which keeps the argmin stable.
  std::vector<Point> zs(static_cast<std::size_t>(n_z), Point(static_cast<std::size_t>(d)));
  {
    SplitMix64 zrng(substream(seed, stream_tag::cd_z));
    for (auto& z : zs)
      for (auto& c : z) c = zrng.next_unit();
  }

  auto mass = [&](const Point& u) {
    double sum = 0.0;
    for (const auto& z : zs) {
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += u[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)];
      sum += std::fabs(dot);
    }
    return sum / static_cast<double>(zs.size());
  };

  std::vector<Point> candidates;
  // All sign patterns of the main diagonal, first coordinate fixed positive
  // (u and -u give the same mass).
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::uint32_t pattern = 0; pattern < (1u << (d - 1)); ++pattern) {
    Point u(static_cast<std::size_t>(d), inv_sqrt_d);
    for (int k = 1; k < d; ++k)
      if (pattern >> (k - 1) & 1u) u[static_cast<std::size_t>(k)] = -inv_sqrt_d;
    candidates.push_back(std::move(u));
  }
  for (int k = 0; k < d; ++k) {
    Point u(static_cast<std::size_t>(d), 0.0);
    u[static_cast<std::size_t>(k)] = 1.0;
    candidates.push_back(std::move(u));
  }
  SplitMix64 drng(substream(seed, stream_tag::cd_dirs));
  for (int i = 0; i < n_dirs; ++i) {
    Point u(static_cast<std::size_t>(d));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int k = 0; k < d; ++k) {
        auto [g1, g2] = drng.next_normal_pair();
        u[static_cast<std::size_t>(k)] = g1;
        norm2 += g1 * g1;
        (void)g2;
      }
    } while (norm2 < 1e-12);
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : u) c *= inv;
    candidates.push_back(std::move(u));
  }

  CdEstimate best;
  best.d = d;
  best.n_dirs = n_dirs;
  best.n_z = n_z;
  best.seed = seed;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& u : candidates) {
    double v = mass(u);
    if (v < best.value) {
      best.value = v;
      best.direction = u;
    }
  }
  return best;
}

std::size_t write_psi_csv(const TruncatedPsiResult& result, std::ostream& out) {
  std::string text = "q,delta,t_value,t_stderr,n_pairs_retained,n_z,seed,verdict\n";
  for (const auto& p : result.points) {
    text += format_double(result.q);
    text += ',';
    text += format_double(p.delta);
    text += ',';
    text += format_double(p.t_value);
    text += ',';
    text += format_double(p.t_stderr);
    text += ',';
    text += std::to_string(p.n_retained);
    text += ',';
    text += std::to_string(result.n_z);
    text += ',';
    text += std::to_string(result.seed);
    text += ',';
    text += to_string(result.verdict.kind);
    text += '\n';
  }
  out << text;
  if (!out) throw IoError("write_psi_csv: stream write failed");
  return text.size();
}

}  // namespace graphon
