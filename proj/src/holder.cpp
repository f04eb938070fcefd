#include "graphon/holder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "graphon/csv.hpp"
#include "graphon/errors.hpp"
#include "graphon/hilbert.hpp"
#include "graphon/parallel.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

constexpr int kMinPerScale = 100;
constexpr int kMaxPlacementAttempts = 1'000'000;

void check_budget(const std::vector<double>& scales, int n_per_scale) {
  if (n_per_scale < kMinPerScale) {
    throw InvalidSpec("n_per_scale must be at least 100, got " + std::to_string(n_per_scale));
  }
  if (scales.size() < 2) {
    throw InvalidSpec("need at least 2 scales, got " + std::to_string(scales.size()));
  }
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || scales[i] > 1.0) {
      throw InvalidSpec("scales must lie in (0, 1], got " + format_double(scales[i]));
    }
    if (i > 0 && !(scales[i] < scales[i - 1])) {
      throw InvalidSpec("scales must be strictly decreasing");
    }
  }
}

// Largest |f(x) - f(y)| over pairs with |x - y| uniform in (s/2, s].
double window_max(const PairGap& gap, int k, double s, int n_pairs, SplitMix64& rng) {
  std::vector<double> x(static_cast<std::size_t>(k));
  std::vector<double> y(static_cast<std::size_t>(k));
  std::vector<double> dir(static_cast<std::size_t>(k));
  double best = 0.0;
  for (int p = 0; p < n_pairs; ++p) {
    int attempts = 0;
    for (;;) {
      if (++attempts > kMaxPlacementAttempts) {
        throw DomainError("could not place a pair of points at scale " + format_double(s) +
                          " inside the unit cube");
      }
      for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = rng.next_unit();
      if (k == 1) {
        dir[0] = (rng.next() & 1u) != 0 ? 1.0 : -1.0;
      } else {
        double norm2 = 0.0;
        for (int i = 0; i < k; i += 2) {
          auto [g0, g1] = rng.next_normal_pair();
          dir[static_cast<std::size_t>(i)] = g0;
          if (i + 1 < k) dir[static_cast<std::size_t>(i) + 1] = g1;
        }
        for (int i = 0; i < k; ++i) norm2 += dir[static_cast<std::size_t>(i)] * dir[static_cast<std::size_t>(i)];
        if (!(norm2 > 0.0)) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < k; ++i) dir[static_cast<std::size_t>(i)] *= inv;
      }
      const double r = s - rng.next_unit() * (s / 2.0);  // in (s/2, s]
      bool inside = true;
      for (int i = 0; i < k; ++i) {
        y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + r * dir[static_cast<std::size_t>(i)];
        if (y[static_cast<std::size_t>(i)] < 0.0 || y[static_cast<std::size_t>(i)] > 1.0) {
          inside = false;
          break;
        }
      }
      if (inside) break;
    }
    best = std::max(best, std::fabs(gap(x, y)));
  }
  return best;
}

struct LineFit {
  double slope = 0.0;
  double r2 = 1.0;
};

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  if (!(sxx > 0.0)) throw DegenerateFit("scale grid collapsed to a single point in log space");
  fit.slope = sxy / sxx;
  if (syy > 0.0) {
    double ssres = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double resid = (ys[i] - my) - fit.slope * (xs[i] - mx);
      ssres += resid * resid;
    }
    fit.r2 = 1.0 - ssres / syy;
  }
  return fit;
}

HolderScanTable scan_impl(const PairGap& gap, int k, std::vector<double> scales, int n_per_scale,
                          int threads, std::uint64_t seed) {
  check_budget(scales, n_per_scale);
  if (k < 1) throw InvalidSpec("scan domain dimension must be positive");

  const std::size_t m = scales.size();
  std::vector<double> window(m, 0.0);
  const std::uint64_t scan_key = substream(seed, stream_tag::holder_scan);
  for_each_stratum(m, threads, [&](std::size_t si) {
    SplitMix64 rng(substream(scan_key, static_cast<std::uint64_t>(si)));
    window[si] = window_max(gap, k, scales[si], n_per_scale, rng);
  });

  // Running maximum over finer scales turns window maxima into a
  // nondecreasing modulus-of-continuity estimate.
  std::vector<double> osc(window);
  for (std::size_t i = m - 1; i-- > 0;) osc[i] = std::max(osc[i], osc[i + 1]);

  const std::size_t n_fit = std::max<std::size_t>(2, (m + 1) / 2);
  std::vector<double> log_s;
  std::vector<double> log_o;
  log_s.reserve(n_fit);
  log_o.reserve(n_fit);
  for (std::size_t i = m - n_fit; i < m; ++i) {
    if (!(osc[i] > 0.0)) {
      throw DegenerateFit("zero oscillation at scale " + format_double(scales[i]) +
                          "; the target is constant at the finest scales");
    }
    log_s.push_back(std::log(scales[i]));
    log_o.push_back(std::log(osc[i]));
  }
  const LineFit fit = fit_line(log_s, log_o);

  HolderScanTable table;
  table.scales = std::move(scales);
  table.oscillations = std::move(osc);
  table.n_per_scale = n_per_scale;
  table.alpha_hat = fit.slope;
  table.r2 = fit.r2;
  table.seed = seed;
  return table;
}

}  // namespace

std::vector<double> default_scales() {
  std::vector<double> scales;
  for (int e = 3; e <= 14; ++e) scales.push_back(std::ldexp(1.0, -e));
  return scales;
}

HolderScanTable oscillation_scan(const PairGap& gap, int domain_dim, const ScanBudget& budget,
                                 std::uint64_t seed) {
  std::vector<double> scales = budget.scales.empty() ? default_scales() : budget.scales;
  return scan_impl(gap, domain_dim, std::move(scales), budget.n_per_scale, budget.threads, seed);
}

HolderScanTable graphon_exponent(const Graphon& w, const ScanBudget& budget, std::uint64_t seed) {
  const int d = w.dim();
  const auto k = static_cast<std::size_t>(d);
  PairGap gap = [&w, k](std::span<const double> u, std::span<const double> v) {
    return std::fabs(w(u.first(k), u.last(k)) - w(v.first(k), v.last(k)));
  };
  return oscillation_scan(gap, 2 * d, budget, seed);
}

HolderScanTable curve_exponent(const CurveMap& curve, const ScanBudget& budget,
                               std::uint64_t seed) {
  std::vector<double> scales = budget.scales.empty() ? default_scales() : budget.scales;
  const double cutoff = std::ldexp(1.0, -curve.bits);
  std::erase_if(scales, [cutoff](double s) { return s < cutoff; });
  if (scales.size() < 2) {
    throw InvalidSpec("fewer than 2 scales at or above the curve cell width " +
                      format_double(cutoff));
  }
  const CurveMap map = curve;
  PairGap gap = [map](std::span<const double> s, std::span<const double> t) {
    double a[62];
    double b[62];
    const auto d = static_cast<std::size_t>(map.dim);
    map_point_into(s[0], map, {a, d});
    map_point_into(t[0], map, {b, d});
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum);
  };
  ScanBudget local = budget;
  local.scales = std::move(scales);
  return oscillation_scan(gap, 1, local, seed);
}

std::size_t write_holder_csv(const HolderScanTable& table, std::ostream& out) {
  std::string text = "scale,oscillation,n_pairs,alpha_hat,r2,seed\n";
  for (std::size_t i = 0; i < table.scales.size(); ++i) {
    text += format_double(table.scales[i]);
    text += ',';
    text += format_double(table.oscillations[i]);
    text += ',';
    text += std::to_string(table.n_per_scale);
    text += ',';
    text += format_double(table.alpha_hat);
    text += ',';
    text += format_double(table.r2);
    text += ',';
    text += std::to_string(table.seed);
    text += '\n';
  }
  out << text;
  if (!out) throw IoError("failed writing oscillation table");
  return text.size();
}

}  // namespace graphon
