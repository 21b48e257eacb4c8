#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "impact_game/params.hpp"

namespace impact_game {

enum class PriceModel { constant_zero, random_walk };

struct SimConfig {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 0x5eed;
  PriceModel price_model = PriceModel::constant_zero;
  double walk_scale = 1.0;  // per-step standard deviation of the unaffected price

  void validate() const;
};

struct SimResult {
  double mean_xi_cost = 0.0;
  double mean_eta_cost = 0.0;
  double stderr_xi = 0.0;
  double stderr_eta = 0.0;
  std::size_t n_samples = 0;
};

/// Samples per independent RNG stream. Fixed so results do not depend on
/// the thread count.
inline constexpr std::size_t kSimBatchSize = 4096;

/// Realized costs (agent 1, agent 2) of one execution-priority draw.
/// priority[k] = 1 means agent 1 trades first at time k; unaffected_price[k]
/// is S0 at t_k, with S0 before time 0 equal to unaffected_price[0].
std::pair<double, double> realized_costs(const GameParams& params, std::span<const double> xi,
                                         std::span<const double> eta,
                                         std::span<const double> priority,
                                         std::span<const double> unaffected_price);

/// Monte Carlo estimate of both agents' expected costs. Deterministic for a
/// given seed and config regardless of IMPACT_GAME_THREADS.
SimResult simulate_cost(const GameParams& params, std::span<const double> xi,
                        std::span<const double> eta, const SimConfig& config);

}  // namespace impact_game
