#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "netboundary/graph.hpp"

namespace netboundary {

// Generating-function model of a degree distribution:
//   G0(x) = sum_k q(k) x^k,   G1(x) = G0'(x)/<k> = sum_k qt(k) x^k
// with qt(k) = (k+1) q(k+1) / <k>, the excess-degree distribution of a
// node reached along a random edge. All derived boundary/percolation
// constants hang off these two series.
class GFModel {
 public:
  static constexpr std::size_t kDefaultDegreeCap = 10000;

  // dd must be normalized; degrees above `cap` are an error of the input,
  // not silently truncated.
  static GFModel from_degree_distribution(const DegreeDistribution& dd,
                                          std::size_t cap = kDefaultDegreeCap) {
    if (dd.k_max() >= cap)
      throw std::invalid_argument("GFModel: degree exceeds coefficient cap");
    double sum = 0.0;
    for (double p : dd.pmf()) sum += p;
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("GFModel: degree distribution is not normalized");
    return GFModel(dd.pmf());
  }

  static GFModel from_pmf(std::vector<double> pmf) {
    double sum = 0.0;
    for (double p : pmf) {
      if (p < 0.0) throw std::invalid_argument("GFModel: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("GFModel: pmf is not normalized");
    return GFModel(std::move(pmf));
  }

  // Poisson(mean) truncated where the tail drops below ~1e-18 of the
  // total; for ER this makes G0 and G1 coincide coefficientwise.
  static GFModel poisson(double mean, std::size_t k_max = 0) {
    if (mean <= 0.0) throw std::invalid_argument("GFModel::poisson: mean must be positive");
    if (k_max == 0)
      k_max = static_cast<std::size_t>(mean + 40.0 * std::sqrt(mean) + 30.0);
    std::vector<double> pmf(k_max + 1);
    double log_p = -mean;  // log pmf at k = 0
    double norm = 0.0;
    for (std::size_t k = 0; k <= k_max; ++k) {
      pmf[k] = std::exp(log_p);
      norm += pmf[k];
      log_p += std::log(mean) - std::log(static_cast<double>(k + 1));
    }
    for (double& p : pmf) p /= norm;
    return GFModel(std::move(pmf));
  }

  const std::vector<double>& q() const { return q_; }
  const std::vector<double>& q_tilde() const { return qt_; }
  double mean_degree() const { return mean_k_; }
  double branching_factor() const { return ktilde_; }

  double g0(double x) const { return horner(q_, x); }
  double g1(double x) const { return horner(qt_, x); }
  double g0_prime(double x) const { return horner_derivative(q_, x); }
  double g1_prime(double x) const { return horner_derivative(qt_, x); }
  double g0_second(double x) const { return horner_second(q_, x); }

  // Inverse of G0 on [0, 1], where it is strictly increasing. Bisection
  // to machine precision.
  double g0_inverse(double r) const {
    if (r < q_[0] - 1e-12 || r > 1.0 + 1e-12)
      throw std::invalid_argument("g0_inverse: value outside [G0(0), 1]");
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g0(mid) < r ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  explicit GFModel(std::vector<double> pmf) : q_(std::move(pmf)) {
    for (std::size_t k = 0; k < q_.size(); ++k) mean_k_ += static_cast<double>(k) * q_[k];
    if (mean_k_ <= 0.0) throw std::invalid_argument("GFModel: mean degree must be positive");
    qt_.assign(q_.size() > 1 ? q_.size() - 1 : 1, 0.0);
    double m2 = 0.0;
    for (std::size_t k = 0; k < q_.size(); ++k) m2 += static_cast<double>(k) * k * q_[k];
    for (std::size_t k = 0; k + 1 < q_.size(); ++k)
      qt_[k] = static_cast<double>(k + 1) * q_[k + 1] / mean_k_;
    ktilde_ = m2 / mean_k_ - 1.0;
  }

  static double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }
  static double horner_derivative(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * c[i];
    return acc;
  }
  static double horner_second(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 2;)
      acc = acc * x + static_cast<double>(i) * static_cast<double>(i - 1) * c[i];
    return acc;
  }

  std::vector<double> q_;
  std::vector<double> qt_;
  double mean_k_ = 0.0;
  double ktilde_ = 0.0;
};

struct FixedPoint {
  double f_inf = 1.0;
  bool subcritical = false;  // ktilde <= 1: no giant component, f_inf pinned to 1
  std::uint64_t iterations = 0;
};

// Smallest fixed point of G1 in [0, 1), by iteration from 0. This is the
// probability that a random edge does not lead to the giant component.
inline FixedPoint fixed_point_f_inf(const GFModel& m, double tol = 1e-12) {
  if (tol <= 0.0) throw std::invalid_argument("fixed_point_f_inf: tol must be positive");
  FixedPoint fp;
  if (m.branching_factor() <= 1.0) {
    fp.subcritical = true;
    fp.f_inf = 1.0;
    return fp;
  }
  double f = 0.0;
  for (std::uint64_t it = 0; it < 10000000; ++it) {
    const double next = m.g1(f);
    ++fp.iterations;
    if (std::abs(next - f) < tol) {
      fp.f_inf = next;
      return fp;
    }
    f = next;
  }
  throw std::runtime_error("fixed_point_f_inf: did not converge");
}

struct DeltaExponent {
  double value = 0.0;
  bool infinite = false;  // q(1) = q(2) = 0: f(y) has an exponential singularity
};

// delta = -ln G1'(f_inf) / ln ktilde, the decay exponent of the Poincare
// limit function f(y) = f_inf + a y^-delta.
inline DeltaExponent delta_exponent(const GFModel& m, const FixedPoint& fp) {
  if (fp.subcritical || m.branching_factor() <= 1.0)
    throw std::invalid_argument("delta_exponent: model is subcritical");
  DeltaExponent d;
  const auto& q = m.q();
  const double q1 = q.size() > 1 ? q[1] : 0.0;
  const double q2 = q.size() > 2 ? q[2] : 0.0;
  if (q1 == 0.0 && q2 == 0.0) {  // Bottcher case
    d.infinite = true;
    d.value = std::numeric_limits<double>::infinity();
    return d;
  }
  const double slope = m.g1_prime(fp.f_inf);
  if (slope <= 0.0) {
    d.infinite = true;
    d.value = std::numeric_limits<double>::infinity();
    return d;
  }
  d.value = -std::log(slope) / std::log(m.branching_factor());
  return d;
}

inline DeltaExponent delta_exponent(const GFModel& m) {
  return delta_exponent(m, fixed_point_f_inf(m));
}

struct MuExponent {
  double value = 0.0;
  bool defined = false;
  bool no_fractal_boundary = false;  // minimum degree >= 3
};

// Small-B exponent of the shell-size pdf, P(B_m) ~ B_m^mu for m << d:
// mu = delta - 1 when q(1) > 0, mu = 2 delta - 1 when q(1) = 0 < q(2).
inline MuExponent mu_exponent(const GFModel& m, const DeltaExponent& d) {
  MuExponent mu;
  const auto& q = m.q();
  const double q1 = q.size() > 1 ? q[1] : 0.0;
  const double q2 = q.size() > 2 ? q[2] : 0.0;
  if (q1 == 0.0 && q2 == 0.0) {
    mu.no_fractal_boundary = true;
    return mu;
  }
  if (d.infinite) return mu;  // undefined
  mu.defined = true;
  mu.value = q1 > 0.0 ? d.value - 1.0 : 2.0 * d.value - 1.0;
  return mu;
}

inline MuExponent mu_exponent(const GFModel& m) {
  const auto& q = m.q();
  const double q1 = q.size() > 1 ? q[1] : 0.0;
  const double q2 = q.size() > 2 ? q[2] : 0.0;
  if (q1 == 0.0 && q2 == 0.0) {
    MuExponent mu;
    mu.no_fractal_boundary = true;
    return mu;
  }
  return mu_exponent(m, delta_exponent(m));
}

// Truncated pdf of the shell-m size: coefficients of
// Gm(x) = G0(G1^(m-1)(x)) up to degree b_max. Coefficients below the cap
// are exact; the discarded tail mass is reported as `deficit`.
struct ShellPdf {
  std::uint32_t shell = 0;
  std::vector<double> p;  // p[B] for B = 0..b_max
  double deficit = 0.0;
};

namespace detail {

inline void poly_mul_trunc(const std::vector<double>& a, const std::vector<double>& b,
                           std::size_t cap, std::vector<double>& out) {
  out.assign(std::min(cap + 1, a.size() + b.size() - 1), 0.0);
  for (std::size_t i = 0; i < a.size() && i <= cap; ++i) {
    if (a[i] == 0.0) continue;
    const std::size_t jmax = std::min(b.size(), cap + 1 - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
  }
}

// outer(inner(x)) truncated at degree cap, by Horner over the outer
// coefficients. Terms of degree <= cap come out exact because truncation
// only ever discards higher powers.
inline std::vector<double> poly_compose_trunc(const std::vector<double>& outer,
                                              const std::vector<double>& inner,
                                              std::size_t cap) {
  std::vector<double> acc{0.0}, tmp;
  for (std::size_t i = outer.size(); i-- > 0;) {
    poly_mul_trunc(acc, inner, cap, tmp);
    acc.swap(tmp);
    if (acc.empty()) acc.assign(1, 0.0);
    acc[0] += outer[i];
  }
  return acc;
}

}  // namespace detail

inline ShellPdf shell_size_pdf(const GFModel& m, std::uint32_t shell, std::size_t b_max) {
  if (shell < 1) throw std::invalid_argument("shell_size_pdf: shell must be >= 1");
  if (b_max < 1) throw std::invalid_argument("shell_size_pdf: b_max must be >= 1");
  std::vector<double> inner{0.0, 1.0};  // identity
  for (std::uint32_t i = 1; i < shell; ++i)
    inner = detail::poly_compose_trunc(m.q_tilde(), inner, b_max);
  ShellPdf pdf;
  pdf.shell = shell;
  pdf.p = detail::poly_compose_trunc(m.q(), inner, b_max);
  pdf.p.resize(b_max + 1, 0.0);
  double sum = 0.0;
  for (double v : pdf.p) sum += v;
  pdf.deficit = 1.0 - sum;
  return pdf;
}

// Shell recursion r_n = G0(G1^(n-m)(G0^-1(r_m))). Returns the sequence
// starting at r_start, one entry per applied step. For Poisson input this
// reduces to r_{l+1} = exp(<k>(r_l - 1)).
inline std::vector<double> iterate_r(const GFModel& m, double r_start, std::uint32_t steps,
                                     double tol = 1e-9) {
  const double r_inf = m.g0(fixed_point_f_inf(m).f_inf);
  if (r_start < r_inf - tol || r_start > 1.0 + tol)
    throw std::invalid_argument("iterate_r: r_start outside [r_inf, 1]");
  std::vector<double> seq;
  seq.reserve(steps + 1);
  seq.push_back(r_start);
  double u = m.g0_inverse(std::min(r_start, 1.0));
  for (std::uint32_t i = 0; i < steps; ++i) {
    // u lives in [f_inf, 1]; the clamp stops rounding noise from being
    // amplified out of range at the repelling fixed point u = 1.
    u = std::min(m.g1(u), 1.0);
    seq.push_back(std::min(m.g0(u), 1.0));
  }
  return seq;
}

// Branching factor within the residual fraction r of nodes:
// ktilde(r) = u G0''(u) / G0'(u) at u = G0^-1(r). At r = 1 this is the
// branching factor of the whole network.
inline double residual_branching(const GFModel& m, double r) {
  const double r_inf = m.g0(fixed_point_f_inf(m).f_inf);
  if (r <= r_inf || r > 1.0 + 1e-12)
    throw std::invalid_argument("residual_branching: r must lie in (r_inf, 1]");
  const double u = m.g0_inverse(std::min(r, 1.0));
  const double denom = m.g0_prime(u);
  if (denom <= 0.0) throw std::runtime_error("residual_branching: G0'(u) vanishes");
  return u * m.g0_second(u) / denom;
}

struct ClusterExponents {
  double tau = 0.0;
  double sigma = 0.0;
  double theta = 0.0;  // n(s) ~ s^-theta
  bool conjecture = false;  // theta = 3 extrapolated into 2 < lambda < 3
};

// Percolation cluster-size exponents for the boundary statistics:
// ER and SF with lambda > 4 sit at (tau, sigma) = (2.5, 0.5); for
// 2 < lambda < 4, tau = (2 lambda - 3)/(lambda - 2) and
// sigma = |lambda - 3|/(lambda - 2). theta = tau + sigma = 3 for
// lambda > 3, and is conjectured to stay 3 for 2 < lambda < 3.
inline ClusterExponents theoretical_cluster_exponents(std::optional<double> lambda) {
  ClusterExponents ce;
  if (!lambda || *lambda > 4.0) {
    ce.tau = 2.5;
    ce.sigma = 0.5;
    ce.theta = 3.0;
    return ce;
  }
  const double l = *lambda;
  if (l <= 2.0)
    throw std::invalid_argument("theoretical_cluster_exponents: lambda must exceed 2");
  ce.tau = (2.0 * l - 3.0) / (l - 2.0);
  ce.sigma = std::abs(l - 3.0) / (l - 2.0);
  if (l >= 3.0) {
    ce.theta = ce.tau + ce.sigma;  // identically 3 on 3 <= lambda <= 4
  } else {
    ce.theta = 3.0;
    ce.conjecture = true;
  }
  return ce;
}

}  // namespace netboundary
