#include "impact_game/montecarlo.hpp"

#include <cmath>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "impact_game/kernels/kernels.hpp"
#include "impact_game/parallel.hpp"

namespace impact_game {

void SimConfig::validate() const {
  if (n_samples < 1) throw ParameterError("n_samples must be >= 1");
  if (!std::isfinite(walk_scale) || walk_scale < 0.0) {
    throw ParameterError("walk_scale must be finite and >= 0");
  }
}

namespace {

// Deterministic parts of one agent's cost; only the price path and the
// priority draw vary between samples.
struct Fixed {
  std::vector<double> xi, eta;
  std::vector<double> impact;     // sum_{j<k} alpha^(k-j)(xi_j + eta_j)
  std::vector<double> cross;      // xi_k eta_k
  double quad_xi = 0.0;           // sum (1/2 + theta) xi_k^2
  double quad_eta = 0.0;
  double impact_xi = 0.0;         // sum impact_k xi_k
  double impact_eta = 0.0;
  double cross_total = 0.0;
};

Fixed prepare(const GameParams& p, std::span<const double> xi, std::span<const double> eta) {
  Fixed f;
  f.xi.assign(xi.begin(), xi.end());
  f.eta.assign(eta.begin(), eta.end());
  const std::size_t n = xi.size();
  f.impact.resize(n);
  f.cross.resize(n);
  const double a = p.alpha();
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) d = a * (d + xi[k - 1] + eta[k - 1]);
    f.impact[k] = d;
    f.cross[k] = xi[k] * eta[k];
  }
  const double w = 0.5 + p.theta;
  f.quad_xi = w * kernels::dot(xi, xi);
  f.quad_eta = w * kernels::dot(eta, eta);
  f.impact_xi = kernels::dot(f.impact, xi);
  f.impact_eta = kernels::dot(f.impact, eta);
  f.cross_total = kernels::sum(f.cross);
  return f;
}

void check_lengths(const GameParams& p, std::size_t a, std::size_t b) {
  if (a != p.size() || b != p.size()) {
    throw ParameterError("strategies must have length N+1 = " + std::to_string(p.size()));
  }
}

// Welford accumulator; batches merge with the parallel-variance formula.
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    n += 1.0;
    const double d = v - mean;
    mean += d / n;
    m2 += d * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
  double stderr_of_mean() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

}  // namespace

std::pair<double, double> realized_costs(const GameParams& params, std::span<const double> xi,
                                         std::span<const double> eta,
                                         std::span<const double> priority,
                                         std::span<const double> unaffected_price) {
  params.validate();
  check_lengths(params, xi.size(), eta.size());
  check_lengths(params, priority.size(), unaffected_price.size());
  const Fixed f = prepare(params, xi, eta);
  const double s0 = unaffected_price[0];
  const double first = kernels::dot(priority, f.cross);
  const double cost_xi = params.x * s0 + f.quad_xi - kernels::dot(unaffected_price, xi) +
                         f.impact_xi + first;
  const double cost_eta = params.y * s0 + f.quad_eta - kernels::dot(unaffected_price, eta) +
                          f.impact_eta + (f.cross_total - first);
  return {cost_xi, cost_eta};
}

SimResult simulate_cost(const GameParams& params, std::span<const double> xi,
                        std::span<const double> eta, const SimConfig& config) {
  params.validate();
  config.validate();
  check_lengths(params, xi.size(), eta.size());
  const Fixed f = prepare(params, xi, eta);
  const std::size_t n = xi.size();
  const std::size_t batches = (config.n_samples + kSimBatchSize - 1) / kSimBatchSize;
  std::vector<Moments> m_xi(batches);
  std::vector<Moments> m_eta(batches);
  const bool walk = config.price_model == PriceModel::random_walk;

  parallel_for(batches, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> step(0.0, config.walk_scale);
    std::vector<double> priority(n);
    std::vector<double> price(n, 0.0);
    const std::size_t begin = b * kSimBatchSize;
    const std::size_t end = std::min(config.n_samples, begin + kSimBatchSize);
    for (std::size_t s = begin; s < end; ++s) {
      std::uint64_t bits = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k % 64 == 0) bits = rng();
        priority[k] = static_cast<double>(bits & 1u);
        bits >>= 1;
      }
      if (walk) {
        // S0 starts at 0 just before time 0 and at t_0.
        for (std::size_t k = 1; k < n; ++k) price[k] = price[k - 1] + step(rng);
      }
      const double first = kernels::dot(priority, f.cross);
      const double px = walk ? kernels::dot(price, f.xi) : 0.0;
      const double pe = walk ? kernels::dot(price, f.eta) : 0.0;
      m_xi[b].add(f.quad_xi - px + f.impact_xi + first);
      m_eta[b].add(f.quad_eta - pe + f.impact_eta + (f.cross_total - first));
    }
  });

  Moments tx;
  Moments te;
  for (std::size_t b = 0; b < batches; ++b) {
    tx.merge(m_xi[b]);
    te.merge(m_eta[b]);
  }
  SimResult r;
  r.n_samples = config.n_samples;
  r.mean_xi_cost = tx.mean;
  r.mean_eta_cost = te.mean;
  r.stderr_xi = tx.stderr_of_mean();
  r.stderr_eta = te.stderr_of_mean();
  return r;
}

}  // namespace impact_game
