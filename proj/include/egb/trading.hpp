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

/// \file trading.hpp
/// \brief Closed-form optimal real-time buy/sell decisions.
///
/// The slot problem (minimize the bill subject to purchased energy covering
/// demand) is a one-dimensional LP whose constraint is tight at the optimum:
/// any surplus is sold since the sell price is positive. The max-forms below
/// solve it exactly; no numeric solver involved.

#pragma once

#include <algorithm>
#include <stdexcept>

#include "egb/core.hpp"

namespace egb {

/// Optimal real-time trade of one operator with commitment `commitment` and
/// realized demand `zeta`: buy the deficit, sell the surplus, never both.
inline TradeDecision individual_trade(double commitment, double zeta,
                                      const SlotPrices& pr) {
  if (commitment < 0.0 || zeta < 0.0)
    throw std::domain_error("individual_trade: negative commitment or demand");
  TradeDecision t;
  t.commitment = commitment;
  t.buy = std::max(zeta - commitment, 0.0);
  t.sell = std::max(commitment - zeta, 0.0);
  t.cost = slot_cost(t, pr);
  return t;
}

/// Optimal aggregated real-time trade of the group; identical structure with
/// the post-sharing group demand in place of the individual one.
inline TradeDecision group_trade(double commitment, double zeta_shared,
                                 const SlotPrices& pr) {
  return individual_trade(commitment, zeta_shared, pr);
}

}  // namespace egb
