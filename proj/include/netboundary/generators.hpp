#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "netboundary/graph.hpp"
#include "netboundary/random.hpp"

namespace netboundary {

struct GenerationAudit {
  std::uint64_t target_edges = 0;
  std::uint64_t realized_edges = 0;
  std::uint64_t duplicate_edges_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t even_sum_resamples = 0;      // degree-sequence parity fixes
  double below_kmin_fraction = 0.0;          // nodes pushed under k_min by erasure
};

// G(N,M) with M = round(n * mean_degree / 2) distinct edges. Fixing M
// rather than p pins the realized mean degree, which keeps ensemble
// curves comparable across N.
inline Graph generate_er(std::uint32_t n, double mean_degree, std::uint64_t seed,
                         GenerationAudit* audit = nullptr) {
  if (n < 2) throw std::invalid_argument("generate_er: need n >= 2");
  if (mean_degree <= 0.0 || mean_degree > static_cast<double>(n) - 1.0)
    throw std::invalid_argument("generate_er: mean_degree must be in (0, n-1]");
  const auto m = static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * mean_degree / 2.0));
  Rng rng(seed);
  std::vector<std::uint64_t> keys;
  keys.reserve(m + m / 16);
  // Draw in rounds, dedup, and top up; collisions are rare at the
  // densities used here.
  while (keys.size() < m) {
    const std::uint64_t need = m - keys.size();
    for (std::uint64_t i = 0; i < need; ++i) {
      std::uint64_t u = rng.below(n), v = rng.below(n);
      while (u == v) v = rng.below(n);
      if (u > v) std::swap(u, v);
      keys.push_back(u * n + v);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(keys.size());
  for (std::uint64_t key : keys)
    edges.emplace_back(static_cast<std::uint32_t>(key / n), static_cast<std::uint32_t>(key % n));
  if (audit) {
    *audit = {};
    audit->target_edges = m;
    audit->realized_edges = edges.size();
  }
  return Graph::from_canonical_edges(n, edges);
}

namespace detail {

// Stub-matching configuration model for a given degree sequence.
// Self-loops and multi-edges are erased afterwards (rejection is
// infeasible for heavy-tailed sequences at this scale); the audit
// reports how much the erasure perturbed the sequence.
inline Graph configuration_model(const std::vector<std::uint32_t>& degrees, Rng& rng,
                                 std::uint32_t k_min, GenerationAudit* audit) {
  std::uint64_t total = 0;
  for (std::uint32_t d : degrees) total += d;
  if (total % 2 != 0) throw std::logic_error("configuration_model: odd stub count");
  std::vector<std::uint32_t> stubs;
  stubs.reserve(total);
  for (std::uint32_t v = 0; v < degrees.size(); ++v)
    for (std::uint32_t i = 0; i < degrees[v]; ++i) stubs.push_back(v);
  rng.shuffle(stubs);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> raw;
  raw.reserve(total / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) raw.emplace_back(stubs[i], stubs[i + 1]);

  BuildReport report;
  auto canon = detail::canonicalize_edges(std::move(raw), report);
  auto g = Graph::from_canonical_edges(static_cast<std::uint32_t>(degrees.size()), canon);
  if (audit) {
    audit->target_edges = total / 2;
    audit->realized_edges = g.edge_count();
    audit->duplicate_edges_dropped = report.duplicate_edges_dropped;
    audit->self_loops_dropped = report.self_loops_dropped;
    std::uint64_t below = 0;
    for (std::uint32_t v = 0; v < g.node_count(); ++v)
      if (g.degree(v) < k_min) ++below;
    audit->below_kmin_fraction = static_cast<double>(below) / g.node_count();
  }
  return g;
}

}  // namespace detail

// Natural degree cutoff floor(n^(1/(lambda-1))) for a power-law sequence.
inline std::uint32_t natural_cutoff(std::uint32_t n, double lambda) {
  return static_cast<std::uint32_t>(
      std::floor(std::pow(static_cast<double>(n), 1.0 / (lambda - 1.0))));
}

// Normalized pmf q(k) proportional to k^-lambda on [k_min, k_cut].
inline std::vector<double> power_law_pmf(double lambda, std::uint32_t k_min, std::uint32_t k_cut) {
  if (k_cut < k_min) throw std::invalid_argument("power_law_pmf: k_cut < k_min");
  std::vector<double> pmf(std::size_t{k_cut} + 1, 0.0);
  double norm = 0.0;
  for (std::uint32_t k = k_min; k <= k_cut; ++k) {
    pmf[k] = std::pow(static_cast<double>(k), -lambda);
    norm += pmf[k];
  }
  for (double& p : pmf) p /= norm;
  return pmf;
}

// Random scale-free graph: degrees sampled i.i.d. from q(k) ~ k^-lambda
// on [k_min, natural cutoff], sum forced even by resampling the last
// node, then stub matching with erasure.
inline Graph generate_sf_config(std::uint32_t n, double lambda, std::uint32_t k_min,
                                std::uint64_t seed, GenerationAudit* audit = nullptr) {
  if (lambda <= 2.0)
    throw std::invalid_argument("generate_sf_config: lambda must exceed 2 (mean diverges)");
  if (n < 10) throw std::invalid_argument("generate_sf_config: need n >= 10");
  if (k_min < 1 || k_min >= n) throw std::invalid_argument("generate_sf_config: bad k_min");
  const std::uint32_t k_cut = std::max(k_min, natural_cutoff(n, lambda));
  const auto pmf = power_law_pmf(lambda, k_min, k_cut);
  std::vector<double> cdf(pmf.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) cdf[k] = (acc += pmf[k]);
  cdf.back() = 1.0;

  Rng rng(seed);
  auto draw = [&]() {
    const double u = rng.uniform01();
    const auto it = std::lower_bound(cdf.begin() + k_min, cdf.end(), u);
    return static_cast<std::uint32_t>(it - cdf.begin());
  };
  std::vector<std::uint32_t> degrees(n);
  std::uint64_t sum = 0;
  for (auto& d : degrees) sum += (d = draw());
  std::uint64_t resamples = 0;
  while (sum % 2 != 0) {
    sum -= degrees[n - 1];
    degrees[n - 1] = draw();
    sum += degrees[n - 1];
    ++resamples;
  }
  auto g = detail::configuration_model(degrees, rng, k_min, audit);
  if (audit) audit->even_sum_resamples = resamples;
  return g;
}

// Random k-regular graph via the same stub-matching path. Used as the
// k_min >= 3 control where boundary shells must not develop power-law
// tails.
inline Graph generate_regular(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                              GenerationAudit* audit = nullptr) {
  if (k < 1 || k >= n) throw std::invalid_argument("generate_regular: need 1 <= k < n");
  if ((static_cast<std::uint64_t>(n) * k) % 2 != 0)
    throw std::invalid_argument("generate_regular: n*k must be even");
  Rng rng(seed);
  std::vector<std::uint32_t> degrees(n, k);
  return detail::configuration_model(degrees, rng, k, audit);
}

}  // namespace netboundary
