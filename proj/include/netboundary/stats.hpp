#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace netboundary {

struct CcdfPoint {
  double value = 0.0;
  double fraction = 0.0;  // fraction of samples strictly greater
};

// Weighted sample histogram; the working representation for all the
// discrete fits. Integer-valued samples lose nothing here.
using SampleHist = std::map<std::uint64_t, std::uint64_t>;

inline SampleHist make_hist(std::span<const std::uint32_t> samples) {
  SampleHist h;
  for (std::uint32_t s : samples) ++h[s];
  return h;
}

inline std::uint64_t hist_total(const SampleHist& h) {
  std::uint64_t n = 0;
  for (const auto& [v, c] : h) n += c;
  return n;
}

// Empirical CCDF with the strict "greater than" convention; one point per
// distinct value, ascending, last point 0.
inline std::vector<CcdfPoint> empirical_ccdf(const SampleHist& hist) {
  if (hist.empty()) throw std::invalid_argument("empirical_ccdf: no samples");
  if (hist.begin()->first == 0)
    throw std::invalid_argument("empirical_ccdf: samples must be positive");
  const double n = static_cast<double>(hist_total(hist));
  std::vector<CcdfPoint> out;
  out.reserve(hist.size());
  std::uint64_t seen = 0;
  for (const auto& [v, c] : hist) {
    seen += c;
    out.push_back({static_cast<double>(v), (n - seen) / n});
  }
  return out;
}

inline std::vector<CcdfPoint> empirical_ccdf(std::span<const std::uint32_t> samples) {
  return empirical_ccdf(make_hist(samples));
}

struct LogBin {
  double center = 0.0;  // geometric mean of the edges
  double lo = 0.0;
  double hi = 0.0;
  double density = 0.0;  // count / (total * width)
  std::uint64_t count = 0;
};

namespace detail {

inline std::vector<LogBin> log_bins_from_counts(const std::map<long, std::uint64_t>& counts,
                                                double total, double step) {
  std::vector<LogBin> out;
  out.reserve(counts.size());
  for (const auto& [idx, c] : counts) {
    LogBin b;
    b.lo = std::pow(10.0, static_cast<double>(idx) * step);
    b.hi = std::pow(10.0, static_cast<double>(idx + 1) * step);
    b.center = std::sqrt(b.lo * b.hi);
    b.count = c;
    b.density = static_cast<double>(c) / (total * (b.hi - b.lo));
    out.push_back(b);
  }
  return out;
}

}  // namespace detail

// Geometric binning with bins_per_decade bins per factor of 10, anchored
// at integer powers of the bin ratio. Only occupied bins are returned;
// sum of density * width over them is exactly 1.
inline std::vector<LogBin> log_binned_pdf(const SampleHist& hist, int bins_per_decade) {
  if (hist.empty()) throw std::invalid_argument("log_binned_pdf: no samples");
  if (bins_per_decade < 1) throw std::invalid_argument("log_binned_pdf: bins_per_decade >= 1");
  if (hist.begin()->first == 0)
    throw std::invalid_argument("log_binned_pdf: samples must be positive");
  const double total = static_cast<double>(hist_total(hist));
  const double step = 1.0 / bins_per_decade;
  std::map<long, std::uint64_t> counts;
  for (const auto& [v, c] : hist)
    counts[static_cast<long>(std::floor(std::log10(static_cast<double>(v)) / step + 1e-12))] += c;
  return detail::log_bins_from_counts(counts, total, step);
}

inline std::vector<LogBin> log_binned_pdf(std::span<const std::uint32_t> samples,
                                          int bins_per_decade) {
  return log_binned_pdf(make_hist(samples), bins_per_decade);
}

// Continuous-sample variant; same binning applied to real values.
inline std::vector<LogBin> log_binned_pdf(std::span<const double> samples, int bins_per_decade) {
  if (samples.empty()) throw std::invalid_argument("log_binned_pdf: no samples");
  if (bins_per_decade < 1) throw std::invalid_argument("log_binned_pdf: bins_per_decade >= 1");
  const double step = 1.0 / bins_per_decade;
  std::map<long, std::uint64_t> counts;
  for (double v : samples) {
    if (v <= 0.0) throw std::invalid_argument("log_binned_pdf: samples must be positive");
    ++counts[static_cast<long>(std::floor(std::log10(v) / step + 1e-12))];
  }
  return detail::log_bins_from_counts(counts, static_cast<double>(samples.size()), step);
}

// Hurwitz zeta sum_{k>=a} k^-s for s > 1, by direct summation plus an
// Euler-Maclaurin tail. Accurate to ~1e-13 relative; verified against
// high-precision references in the tests.
inline double hurwitz_zeta(double s, double a) {
  if (s <= 1.0) throw std::invalid_argument("hurwitz_zeta: need s > 1");
  if (a <= 0.0) throw std::invalid_argument("hurwitz_zeta: need a > 0");
  const double cut = std::max(a, a < 64.0 ? 2048.0 : a + 64.0);
  double sum = 0.0;
  for (double k = a; k < cut; k += 1.0) sum += std::pow(k, -s);
  const double K = cut;
  const double Ks = std::pow(K, -s);
  sum += K * Ks / (s - 1.0) + 0.5 * Ks + s * Ks / K / 12.0 -
         s * (s + 1.0) * (s + 2.0) * Ks / (K * K * K) / 720.0;
  return sum;
}

enum class FitMethod { mle, least_squares_loglog };

struct FitResult {
  double exponent = 0.0;   // MLE: alpha of p(k) ~ k^-alpha; LS: signed slope
  double std_error = 0.0;
  double fit_min = 0.0;
  double fit_max = 0.0;
  FitMethod method = FitMethod::mle;
  std::uint64_t sample_count = 0;
  // Vuong-style log-likelihood ratio z of power law vs geometric
  // (MLE path only). z < -2 means the geometric alternative is
  // significantly better: the power-law fit is poor.
  double lr_z = 0.0;
  bool poor_power_law = false;
};

namespace detail {

inline double dlog_zeta(double s, double a) {  // d/ds ln zeta(s, a)
  const double h = 1e-5;
  return (std::log(hurwitz_zeta(s + h, a)) - std::log(hurwitz_zeta(s - h, a))) / (2.0 * h);
}

inline double d2log_zeta(double s, double a) {
  const double h = 1e-4;
  const double f0 = std::log(hurwitz_zeta(s - h, a));
  const double f1 = std::log(hurwitz_zeta(s, a));
  const double f2 = std::log(hurwitz_zeta(s + h, a));
  return (f0 - 2.0 * f1 + f2) / (h * h);
}

struct LineFit {
  double slope = 0.0, intercept = 0.0, slope_stderr = 0.0;
  std::size_t points = 0;
};

inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("least_squares: x values are degenerate");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = n;
  if (n > 2) {
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (f.intercept + f.slope * x[i]);
      ss += r * r;
    }
    f.slope_stderr = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  }
  return f;
}

}  // namespace detail

// Discrete power-law MLE on samples k >= x_min: p(k) = k^-alpha / zeta(alpha, x_min).
// alpha solves the likelihood equation via bisection on the monotone score;
// the standard error comes from the observed Fisher information. The lr_z
// field compares the fit against a geometric (discrete exponential)
// alternative on the same samples.
inline FitResult fit_power_law_mle(const SampleHist& hist, std::uint64_t x_min) {
  if (x_min < 1) throw std::invalid_argument("fit_power_law_mle: x_min must be >= 1");
  double n = 0.0, sum_log = 0.0, sum_shift = 0.0;
  std::uint64_t v_max = 0;
  std::size_t distinct = 0;
  for (const auto& [v, c] : hist) {
    if (v < x_min) continue;
    n += static_cast<double>(c);
    sum_log += static_cast<double>(c) * std::log(static_cast<double>(v));
    sum_shift += static_cast<double>(c) * static_cast<double>(v - x_min);
    v_max = std::max(v_max, v);
    ++distinct;
  }
  if (n < 10) throw std::invalid_argument("fit_power_law_mle: fewer than 10 samples in range");
  if (distinct < 3)
    throw std::invalid_argument("fit_power_law_mle: need at least 3 distinct values");
  const double mean_log = sum_log / n;
  const double a = static_cast<double>(x_min);

  // score(alpha) = -d/dalpha ln zeta - mean_log, strictly decreasing.
  // The lower bracket stays clear of the zeta pole at alpha = 1.
  auto score = [&](double alpha) { return -detail::dlog_zeta(alpha, a) - mean_log; };
  double lo = 1.001, hi = 32.0;
  if (score(hi) > 0.0)
    throw std::invalid_argument("fit_power_law_mle: samples too concentrated for a power law");
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (score(mid) > 0.0 ? lo : hi) = mid;
  }
  const double alpha = 0.5 * (lo + hi);

  FitResult fit;
  fit.exponent = alpha;
  fit.std_error = 1.0 / std::sqrt(n * detail::d2log_zeta(alpha, a));
  fit.fit_min = a;
  fit.fit_max = static_cast<double>(v_max);
  fit.method = FitMethod::mle;
  fit.sample_count = static_cast<std::uint64_t>(n);

  // Geometric alternative p(k) = (1-rho) rho^(k - x_min); MLE rho = m/(1+m).
  const double m = sum_shift / n;
  const double rho = m / (1.0 + m);
  const double log_zeta = std::log(hurwitz_zeta(alpha, a));
  const double log_1mrho = std::log1p(-rho);
  const double log_rho = rho > 0.0 ? std::log(rho) : 0.0;
  double sum_d = 0.0, sum_d2 = 0.0;
  for (const auto& [v, c] : hist) {
    if (v < x_min) continue;
    const double ll_pl = -alpha * std::log(static_cast<double>(v)) - log_zeta;
    const double ll_geo =
        rho > 0.0 ? log_1mrho + static_cast<double>(v - x_min) * log_rho
                  : (v == x_min ? 0.0 : -1e30);
    const double d = ll_pl - ll_geo;
    sum_d += static_cast<double>(c) * d;
    sum_d2 += static_cast<double>(c) * d * d;
  }
  const double var_d = std::max(sum_d2 / n - (sum_d / n) * (sum_d / n), 0.0);
  fit.lr_z = var_d > 1e-300 ? sum_d / std::sqrt(n * var_d) : (sum_d > 0.0 ? 1e9 : -1e9);
  fit.poor_power_law = fit.lr_z < -2.0;
  return fit;
}

// x_min = 0 picks the 90th-percentile value, the default for tail fits.
inline FitResult fit_power_law_mle(std::span<const std::uint32_t> samples,
                                   std::uint64_t x_min = 0) {
  auto hist = make_hist(samples);
  if (x_min == 0) {
    const std::uint64_t total = hist_total(hist);
    std::uint64_t seen = 0;
    for (const auto& [v, c] : hist) {
      seen += c;
      if (seen >= (total * 9 + 9) / 10) {
        x_min = v;
        break;
      }
    }
  }
  return fit_power_law_mle(hist, x_min);
}

// Least-squares slope of log10 y against log10 x over points with
// x in [x_lo, x_hi] and y > 0.
inline FitResult fit_loglog_slope(std::span<const double> xs, std::span<const double> ys,
                                  double x_lo = 0.0, double x_hi = 0.0) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
  std::vector<double> lx, ly;
  double used_lo = 1e300, used_hi = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0) continue;
    if (x_lo > 0.0 && xs[i] < x_lo) continue;
    if (x_hi > 0.0 && xs[i] > x_hi) continue;
    lx.push_back(std::log10(xs[i]));
    ly.push_back(std::log10(ys[i]));
    used_lo = std::min(used_lo, xs[i]);
    used_hi = std::max(used_hi, xs[i]);
  }
  if (lx.size() < 3) throw std::invalid_argument("fit_loglog_slope: fewer than 3 usable points");
  const auto lf = detail::least_squares(lx, ly);
  FitResult fit;
  fit.exponent = lf.slope;
  fit.std_error = lf.slope_stderr;
  fit.fit_min = used_lo;
  fit.fit_max = used_hi;
  fit.method = FitMethod::least_squares_loglog;
  fit.sample_count = lf.points;
  return fit;
}

// Spec'd front door: MLE straight on the samples, or least squares on the
// log-binned pdf of the samples.
inline FitResult fit_power_law(const SampleHist& hist, std::uint64_t x_min, FitMethod method,
                               int bins_per_decade = 10) {
  if (method == FitMethod::mle) return fit_power_law_mle(hist, std::max<std::uint64_t>(x_min, 1));
  const auto bins = log_binned_pdf(hist, bins_per_decade);
  std::vector<double> xs, ys;
  for (const auto& b : bins) {
    xs.push_back(b.center);
    ys.push_back(b.density);
  }
  auto fit = fit_loglog_slope(xs, ys, static_cast<double>(x_min), 0.0);
  std::uint64_t n = 0;
  for (const auto& [v, c] : hist)
    if (v >= std::max<std::uint64_t>(x_min, 1)) n += c;
  fit.sample_count = n;
  if (n < 10) throw std::invalid_argument("fit_power_law: fewer than 10 samples in range");
  return fit;
}

// phi in s ~ d^phi from (size, internal distance) pairs, least squares on
// the log-log pairs with d in [d_lo, d_hi] (0 = open end).
inline FitResult fit_fractal_dimension(std::span<const std::pair<double, double>> size_dist,
                                       double d_lo = 0.0, double d_hi = 0.0) {
  std::vector<double> ld, ls;
  double used_lo = 1e300, used_hi = 0.0;
  for (const auto& [s, d] : size_dist) {
    if (d <= 0.0 || s <= 0.0) continue;
    if (d_lo > 0.0 && d < d_lo) continue;
    if (d_hi > 0.0 && d > d_hi) continue;
    ld.push_back(std::log10(d));
    ls.push_back(std::log10(s));
    used_lo = std::min(used_lo, d);
    used_hi = std::max(used_hi, d);
  }
  if (ld.size() < 10)
    throw std::invalid_argument("fit_fractal_dimension: fewer than 10 usable pairs");
  const auto lf = detail::least_squares(ld, ls);
  FitResult fit;
  fit.exponent = lf.slope;
  fit.std_error = lf.slope_stderr;
  fit.fit_min = used_lo;
  fit.fit_max = used_hi;
  fit.method = FitMethod::least_squares_loglog;
  fit.sample_count = lf.points;
  return fit;
}

struct Curve {
  std::vector<double> x;  // strictly increasing
  std::vector<double> y;
};

// Maximum vertical distance between linearly interpolated curves over
// their common x-range, evaluated on the union of their x-grids.
inline double collapse_metric(std::span<const Curve> curves) {
  if (curves.size() < 2) throw std::invalid_argument("collapse_metric: need at least 2 curves");
  double lo = -1e300, hi = 1e300;
  for (const auto& c : curves) {
    if (c.x.size() < 2) throw std::invalid_argument("collapse_metric: curve too short");
    for (std::size_t i = 1; i < c.x.size(); ++i)
      if (c.x[i] <= c.x[i - 1])
        throw std::invalid_argument("collapse_metric: x must be strictly increasing");
    lo = std::max(lo, c.x.front());
    hi = std::min(hi, c.x.back());
  }
  if (lo >= hi) throw std::invalid_argument("collapse_metric: curves do not overlap in x");
  auto interp = [](const Curve& c, double x) {
    const auto it = std::lower_bound(c.x.begin(), c.x.end(), x);
    if (it == c.x.begin()) return c.y.front();
    if (it == c.x.end()) return c.y.back();
    const std::size_t i = static_cast<std::size_t>(it - c.x.begin());
    const double t = (x - c.x[i - 1]) / (c.x[i] - c.x[i - 1]);
    return c.y[i - 1] + t * (c.y[i] - c.y[i - 1]);
  };
  std::vector<double> grid;
  for (const auto& c : curves)
    for (double x : c.x)
      if (x >= lo && x <= hi) grid.push_back(x);
  grid.push_back(lo);
  grid.push_back(hi);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double worst = 0.0;
  for (double x : grid) {
    double ymin = 1e300, ymax = -1e300;
    for (const auto& c : curves) {
      const double y = interp(c, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    worst = std::max(worst, ymax - ymin);
  }
  return worst;
}

}  // namespace netboundary
