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

/// \file core.hpp
/// \brief Shared domain types, the base-station power model, and the per-slot
///        energy-cost function.
///
/// Slot lengths are normalized to one hour-equivalent, so power (W) and
/// per-slot energy (Wh) are numerically interchangeable and every cost is
/// simply price times power. Currency is a plain double; this is a
/// simulation, not an accounting system.

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace egb {

/// Served traffic at or below this threshold counts as zero (sleep mode).
/// Offload arithmetic can leave ~1e-16 Mbps of residue on a fully drained
/// BS, which must not keep it active.
inline constexpr double kSleepTolMbps = 1e-12;

/// Power-model coefficients of one base station.
struct BsParams {
  double a;      ///< transmission power slope, W per Mbps
  double b;      ///< active-mode non-transmission power, W
  double c;      ///< sleep-mode power, W (c < b)
  double d_max;  ///< maximum supportable traffic, Mbps
};

inline void validate(const BsParams& p) {
  if (!(p.a > 0.0)) throw std::invalid_argument("BsParams: a must be > 0");
  if (!(p.b > 0.0)) throw std::invalid_argument("BsParams: b must be > 0");
  if (!(p.c >= 0.0 && p.c < p.b))
    throw std::invalid_argument("BsParams: need 0 <= c < b");
  if (!(p.d_max > 0.0))
    throw std::invalid_argument("BsParams: d_max must be > 0");
}

/// Power drawn by a BS serving d Mbps: a*d + b while active, c asleep.
/// Deliberately discontinuous at d = 0; sleeping sheds the whole active
/// baseline b.
inline double bs_power(double d, const BsParams& p) {
  if (d < -kSleepTolMbps)
    throw std::domain_error("bs_power: negative traffic " + std::to_string(d));
  if (d > p.d_max + 1e-9 * (1.0 + p.d_max))
    throw std::domain_error("bs_power: traffic " + std::to_string(d) +
                            " exceeds d_max " + std::to_string(p.d_max));
  if (d <= kSleepTolMbps) return p.c;
  return p.a * d + p.b;
}

/// Day-ahead price and realized real-time buy/sell prices for one slot.
struct SlotPrices {
  double alpha;       ///< day-ahead price, currency per Wh
  double alpha_buy;   ///< realized real-time buying price (>= alpha)
  double alpha_sell;  ///< realized real-time selling price (<= alpha)
};

/// One slot's market position: committed energy plus real-time corrections.
/// At an optimum at most one of buy/sell is positive.
struct TradeDecision {
  double commitment = 0.0;  ///< day-ahead committed energy, Wh
  double buy = 0.0;         ///< real-time energy bought, Wh
  double sell = 0.0;        ///< real-time energy sold back, Wh
  double cost = 0.0;        ///< resulting bill, currency
};

/// Bill for one slot: commitment at the day-ahead price, deficit bought
/// high, surplus sold low.
inline double slot_cost(const TradeDecision& t, const SlotPrices& pr) {
  if (t.buy < 0.0 || t.sell < 0.0)
    throw std::domain_error("slot_cost: negative trade amount");
  return pr.alpha * t.commitment + pr.alpha_buy * t.buy -
         pr.alpha_sell * t.sell;
}

/// Paired-BS network of two operators: params[k][i] is operator i's BS in
/// pair k. Values are immutable after construction and safe to share across
/// threads.
struct NetworkConfig {
  int k_pairs = 0;
  int n_slots = 0;
  std::vector<std::array<BsParams, 2>> params;
};

inline void validate(const NetworkConfig& net) {
  if (net.k_pairs < 1)
    throw std::invalid_argument("NetworkConfig: k_pairs must be >= 1");
  if (net.n_slots < 1)
    throw std::invalid_argument("NetworkConfig: n_slots must be >= 1");
  if (static_cast<int>(net.params.size()) != net.k_pairs)
    throw std::invalid_argument("NetworkConfig: params size != k_pairs");
  for (const auto& pair : net.params) {
    validate(pair[0]);
    validate(pair[1]);
  }
}

/// Network where every BS of both operators uses the same coefficients.
inline NetworkConfig uniform_network(int k_pairs, int n_slots,
                                     const BsParams& p) {
  NetworkConfig net;
  net.k_pairs = k_pairs;
  net.n_slots = n_slots;
  net.params.assign(static_cast<std::size_t>(k_pairs), {p, p});
  validate(net);
  return net;
}

}  // namespace egb
