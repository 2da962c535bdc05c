/*
 * Copyright 2026 The egb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/// \file commitment.hpp
/// \brief Day-ahead commitment optimization via Monte-Carlo approximate
///        subgradients and bisection.
///
/// The expected slot cost is convex and piecewise linear in the commitment G
/// with subgradient
///
///   g(G) = (alpha - alpha_buy_pred)  * P(zeta >  G)
///        + (alpha - alpha_sell_pred) * P(zeta <= G),
///
/// estimated by the empirical fractions of M demand samples. The first
/// coefficient is negative and the second positive under the price ordering,
/// so g is a nondecreasing step function of G and bisection converges.
/// A slot's samples are drawn once and reused across every bisection
/// evaluation, making g a fixed step function that the bisection pins down
/// exactly.
///
/// Demand samples for operator i and for the group are keyed by the same
/// (slot, sample, pair, operator) stream paths, so paired draws are common
/// random numbers across the non-cooperative and group plans.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "egb/core.hpp"
#include "egb/load_sharing.hpp"
#include "egb/rng.hpp"
#include "egb/scenario.hpp"

namespace egb {

/// Monte-Carlo and bisection controls.
struct McConfig {
  int m_samples = 1000;   ///< demand samples per slot
  double tol = 0.1;       ///< bisection interval width, Wh
  int max_iter = 200;
};

inline void validate(const McConfig& cfg) {
  if (cfg.m_samples < 1)
    throw std::invalid_argument("McConfig: m_samples must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("McConfig: tol must be > 0");
  if (cfg.max_iter < 1)
    throw std::invalid_argument("McConfig: max_iter must be >= 1");
}

/// Day-ahead commitments per slot, for one operator or for the group.
struct CommitmentPlan {
  std::vector<double> g;
};

namespace detail {

inline Rng load_stream(std::uint64_t seed, int slot, int m, int k, int i) {
  return Rng(derive_path(seed, stream::mc_loads, slot, m, k, i));
}

}  // namespace detail

/// M sampled demands of operator `mno` for one slot: realized per-BS loads
/// under the traffic error model (clamped as in scenario sampling), then
/// summed through the active-mode power model.
inline std::vector<double> sample_demands_individual(
    int mno, int slot, const TrafficModel& model, const NetworkConfig& net,
    const McConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  if (mno < 0 || mno > 1)
    throw std::invalid_argument("sample_demands_individual: mno must be 0 or 1");
  if (slot < 0 || slot >= model.n_slots())
    throw std::invalid_argument("sample_demands_individual: slot out of range");
  std::vector<double> samples(static_cast<std::size_t>(cfg.m_samples));
  for (int m = 0; m < cfg.m_samples; ++m) {
    double zeta = 0.0;
    for (int k = 0; k < net.k_pairs; ++k) {
      Rng rng = detail::load_stream(seed, slot, m, k, mno);
      const double d = sample_load(model, k, mno, slot, rng);
      zeta += bs_power(d, net.params[static_cast<std::size_t>(k)]
                              [static_cast<std::size_t>(mno)]);
    }
    samples[static_cast<std::size_t>(m)] = zeta;
  }
  return samples;
}

/// M sampled post-sharing group demands for one slot: each sample draws
/// realized loads for every BS, re-solves the optimal pair sharing, and
/// records the resulting total demand.
inline std::vector<double> sample_demands_group(int slot,
                                                const TrafficModel& model,
                                                const NetworkConfig& net,
                                                const McConfig& cfg,
                                                std::uint64_t seed) {
  validate(cfg);
  if (slot < 0 || slot >= model.n_slots())
    throw std::invalid_argument("sample_demands_group: slot out of range");
  std::vector<double> samples(static_cast<std::size_t>(cfg.m_samples));
  for (int m = 0; m < cfg.m_samples; ++m) {
    double zeta = 0.0;
    for (int k = 0; k < net.k_pairs; ++k) {
      Rng r1 = detail::load_stream(seed, slot, m, k, 0);
      Rng r2 = detail::load_stream(seed, slot, m, k, 1);
      const double d1 = sample_load(model, k, 0, slot, r1);
      const double d2 = sample_load(model, k, 1, slot, r2);
      const auto& p = net.params[static_cast<std::size_t>(k)];
      zeta += optimal_pair_share(d1, d2, p[0], p[1]).energy;
    }
    samples[static_cast<std::size_t>(m)] = zeta;
  }
  return samples;
}

/// Monte-Carlo subgradient estimate of the expected slot cost at commitment
/// g, from the empirical split of the samples around g.
inline double approx_subgradient(double g, std::span<const double> samples,
                                 double alpha, double alpha_buy_pred,
                                 double alpha_sell_pred) {
  if (samples.empty())
    throw std::invalid_argument("approx_subgradient: no samples");
  long long above = 0;
  for (double z : samples)
    if (z > g) ++above;
  const long long below = static_cast<long long>(samples.size()) - above;
  return ((alpha - alpha_buy_pred) * static_cast<double>(above) +
          (alpha - alpha_sell_pred) * static_cast<double>(below)) /
         static_cast<double>(samples.size());
}

/// Optimal commitment for one slot by bisection on the sample subgradient
/// over [0, max sample + 1]. If the subgradient has one sign over the whole
/// bracket (day-ahead price outside the predicted real-time band), the
/// corresponding boundary is returned.
inline double optimize_commitment(std::span<const double> samples,
                                  double alpha, double alpha_buy_pred,
                                  double alpha_sell_pred,
                                  const McConfig& cfg) {
  validate(cfg);
  if (samples.empty())
    throw std::invalid_argument("optimize_commitment: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  auto grad = [&](double g) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), g);
    const double above = static_cast<double>(sorted.end() - it);
    return ((alpha - alpha_buy_pred) * above +
            (alpha - alpha_sell_pred) * (m - above)) /
           m;
  };

  double lo = 0.0;
  double hi = sorted.back() + 1.0;
  if (grad(lo) >= 0.0) return lo;
  if (grad(hi) <= 0.0) return hi;
  for (int it = 0; it < cfg.max_iter && hi - lo > cfg.tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (grad(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Non-cooperative day-ahead plan of one operator: per-slot bisection over
/// its own Monte-Carlo demand samples.
inline CommitmentPlan plan_noncoop(int mno, const TrafficModel& model,
                                   const NetworkConfig& net,
                                   const PriceCurve& curve,
                                   const McConfig& cfg, std::uint64_t seed) {
  validate(net);
  validate(curve);
  if (curve.n_slots() != model.n_slots() || net.n_slots != model.n_slots())
    throw std::invalid_argument("plan_noncoop: slot count mismatch");
  CommitmentPlan plan;
  plan.g.resize(static_cast<std::size_t>(model.n_slots()));
  for (int n = 0; n < model.n_slots(); ++n) {
    const auto samples =
        sample_demands_individual(mno, n, model, net, cfg, seed);
    plan.g[static_cast<std::size_t>(n)] = optimize_commitment(
        samples, curve.alpha[static_cast<std::size_t>(n)],
        curve.alpha_buy_pred[static_cast<std::size_t>(n)],
        curve.alpha_sell_pred[static_cast<std::size_t>(n)], cfg);
  }
  return plan;
}

/// Aggregated day-ahead group plan: per-slot bisection over post-sharing
/// group demand samples.
inline CommitmentPlan plan_group(const TrafficModel& model,
                                 const NetworkConfig& net,
                                 const PriceCurve& curve, const McConfig& cfg,
                                 std::uint64_t seed) {
  validate(net);
  validate(curve);
  if (curve.n_slots() != model.n_slots() || net.n_slots != model.n_slots())
    throw std::invalid_argument("plan_group: slot count mismatch");
  CommitmentPlan plan;
  plan.g.resize(static_cast<std::size_t>(model.n_slots()));
  for (int n = 0; n < model.n_slots(); ++n) {
    const auto samples = sample_demands_group(n, model, net, cfg, seed);
    plan.g[static_cast<std::size_t>(n)] = optimize_commitment(
        samples, curve.alpha[static_cast<std::size_t>(n)],
        curve.alpha_buy_pred[static_cast<std::size_t>(n)],
        curve.alpha_sell_pred[static_cast<std::size_t>(n)], cfg);
  }
  return plan;
}

}  // namespace egb
