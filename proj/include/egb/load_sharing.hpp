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

/// \file load_sharing.hpp
/// \brief Optimal traffic offload between co-located BS pairs and the
///        resulting minimum total energy demand per slot.
///
/// For a pair, only the net offload matters. Restricted to it, the pair
/// energy is piecewise linear in the net offload with jumps only where a BS
/// drains to zero (sleep) and kinks where one fills to capacity, so an
/// optimum always lies in the finite candidate set {no-share, sleep-1,
/// sleep-2, fill-1, fill-2}. The enumeration below evaluates exactly that
/// set; pair_share_oracle cross-checks it by grid search.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "egb/core.hpp"
#include "egb/scenario.hpp"

namespace egb {

/// Offload decision for one BS pair. x1 is traffic moved from operator 1's
/// BS to operator 2's, x2 the reverse; at most one is positive.
struct PairDecision {
  double x1 = 0.0;
  double x2 = 0.0;
  double served1 = 0.0;
  double served2 = 0.0;
  double energy = 0.0;  ///< pair total power, W
  bool sleep1 = false;
  bool sleep2 = false;
};

namespace detail {

inline PairDecision eval_pair(double x1, double x2, double served1,
                              double served2, const BsParams& p1,
                              const BsParams& p2) {
  PairDecision d;
  d.x1 = x1;
  d.x2 = x2;
  d.served1 = served1 <= kSleepTolMbps ? 0.0 : served1;
  d.served2 = served2 <= kSleepTolMbps ? 0.0 : served2;
  d.energy = bs_power(d.served1, p1) + bs_power(d.served2, p2);
  d.sleep1 = d.served1 == 0.0;
  d.sleep2 = d.served2 == 0.0;
  return d;
}

// Deterministic preference between equal-energy candidates: sleep beats
// both-active, sleeping operator 1's BS beats sleeping operator 2's, and
// among both-active ties the smaller net offload wins.
inline int tie_rank(const PairDecision& d) {
  if (d.sleep1) return 0;
  if (d.sleep2) return 1;
  return 2;
}

inline bool better(const PairDecision& cand, const PairDecision& best) {
  if (cand.energy != best.energy) return cand.energy < best.energy;
  const int rc = tie_rank(cand), rb = tie_rank(best);
  if (rc != rb) return rc < rb;
  return std::abs(cand.x1 - cand.x2) < std::abs(best.x1 - best.x2);
}

inline void check_pair_inputs(double d1, double d2, const BsParams& p1,
                              const BsParams& p2) {
  validate(p1);
  validate(p2);
  if (!(d1 > 0.0) || !(d2 > 0.0))
    throw std::domain_error("pair share: loads must be positive");
  if (d1 > p1.d_max || d2 > p2.d_max)
    throw std::domain_error("pair share: load exceeds its BS capacity");
}

}  // namespace detail

/// Energy-minimizing feasible offload between a pair of co-located BSs with
/// loads d1, d2 (both positive, each within its own capacity).
inline PairDecision optimal_pair_share(double d1, double d2,
                                       const BsParams& p1,
                                       const BsParams& p2) {
  detail::check_pair_inputs(d1, d2, p1, p2);
  const double total = d1 + d2;

  PairDecision best = detail::eval_pair(0.0, 0.0, d1, d2, p1, p2);
  auto consider = [&](const PairDecision& cand) {
    if (detail::better(cand, best)) best = cand;
  };

  if (total <= p2.d_max)  // sleep BS 1, BS 2 carries everything
    consider(detail::eval_pair(d1, 0.0, 0.0, total, p1, p2));
  if (total <= p1.d_max)  // sleep BS 2
    consider(detail::eval_pair(0.0, d2, total, 0.0, p1, p2));
  if (total >= p1.d_max)  // fill BS 1 to capacity, both active
    consider(detail::eval_pair(0.0, p1.d_max - d1, p1.d_max,
                               std::max(total - p1.d_max, 0.0), p1, p2));
  if (total >= p2.d_max)  // fill BS 2 to capacity
    consider(detail::eval_pair(p2.d_max - d2, 0.0,
                               std::max(total - p2.d_max, 0.0), p2.d_max, p1,
                               p2));
  return best;
}

/// Exhaustive verification oracle: scans the net offload over its feasible
/// interval at the given step, plus the exact candidate points, and returns
/// the grid optimum under the same tie-breaking as optimal_pair_share.
inline PairDecision pair_share_oracle(double d1, double d2, const BsParams& p1,
                                      const BsParams& p2, double step) {
  detail::check_pair_inputs(d1, d2, p1, p2);
  if (!(step > 0.0))
    throw std::invalid_argument("pair_share_oracle: step must be > 0");

  // net offload y > 0 moves traffic from BS 2 to BS 1
  const double y_lo = std::max(-d1, d2 - p2.d_max);
  const double y_hi = std::min(d2, p1.d_max - d1);

  PairDecision best;
  bool have_best = false;
  auto eval_at = [&](double y) {
    if (y < y_lo || y > y_hi) return;
    const double x1 = y < 0.0 ? -y : 0.0;
    const double x2 = y > 0.0 ? y : 0.0;
    PairDecision cand = detail::eval_pair(x1, x2, d1 + y, d2 - y, p1, p2);
    if (!have_best || detail::better(cand, best)) {
      best = cand;
      have_best = true;
    }
  };

  for (double y : {y_lo, y_hi, 0.0, -d1, d2, p1.d_max - d1, d2 - p2.d_max})
    eval_at(y);
  const long long steps = static_cast<long long>((y_hi - y_lo) / step);
  for (long long j = 1; j <= steps; ++j) eval_at(y_lo + j * step);
  return best;
}

/// Minimum total energy demand of the two operators in one slot, with the
/// per-pair decisions that achieve it.
struct SlotSharing {
  double zeta = 0.0;  ///< total post-sharing demand, W
  std::vector<PairDecision> decisions;
};

inline SlotSharing shared_demand(const Scenario& sc, int slot,
                                 const NetworkConfig& net) {
  if (slot < 0 || slot >= sc.n_slots)
    throw std::invalid_argument("shared_demand: slot out of range");
  if (net.k_pairs != sc.k_pairs)
    throw std::invalid_argument("shared_demand: pair count mismatch");
  SlotSharing out;
  out.decisions.reserve(static_cast<std::size_t>(net.k_pairs));
  for (int k = 0; k < net.k_pairs; ++k) {
    const auto& p = net.params[static_cast<std::size_t>(k)];
    out.decisions.push_back(optimal_pair_share(
        sc.traffic(k, 0, slot), sc.traffic(k, 1, slot), p[0], p[1]));
    out.zeta += out.decisions.back().energy;
  }
  return out;
}

/// Energy demand of one operator in one slot with no sharing at all.
inline double no_share_demand(const Scenario& sc, int slot,
                              const NetworkConfig& net, int mno) {
  if (slot < 0 || slot >= sc.n_slots)
    throw std::invalid_argument("no_share_demand: slot out of range");
  if (mno < 0 || mno > 1)
    throw std::invalid_argument("no_share_demand: mno must be 0 or 1");
  double zeta = 0.0;
  for (int k = 0; k < net.k_pairs; ++k)
    zeta += bs_power(sc.traffic(k, mno, slot),
                     net.params[static_cast<std::size_t>(k)]
                               [static_cast<std::size_t>(mno)]);
  return zeta;
}

}  // namespace egb
