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

/// \file bargaining.hpp
/// \brief Repeated Nash bargaining between two self-interested operators:
///        per-slot cost split with payments, and the day-ahead negotiation
///        over how the group commitment is divided.
///
/// Real-time: the group executes the full-cooperation optimum at the summed
/// commitments, and the Nash solution over transferable cost splits lands at
///
///   cost_i = C_group/2 + (C_i_alone - C_j_alone)/2,
///
/// which hands each side exactly half the cooperation surplus. Day-ahead:
/// with the linear approximation of the expected standalone slot cost, both
/// payoffs depend on the commitment split only through one scalar transfer
/// L, and the Nash product (U1 + L)(U2 - L) is maximized by clamping
/// (U2 - U1)/2 into L's feasible interval.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "egb/commitment.hpp"
#include "egb/core.hpp"
#include "egb/load_sharing.hpp"
#include "egb/rng.hpp"
#include "egb/scenario.hpp"
#include "egb/trading.hpp"

namespace egb {

/// Nash split of a group bill `tc` between players whose standalone costs
/// are c1 and c2: half the bill each, shifted by half the standalone gap.
inline std::pair<double, double> nash_cost_split(double tc, double c1,
                                                 double c2) {
  const double half = 0.5 * tc;
  const double shift = 0.5 * (c1 - c2);
  return {half + shift, half - shift};
}

/// One slot of the real-time bargain.
struct BargainSlotOutcome {
  TradeDecision group;                 ///< executed group trade
  std::vector<PairDecision> shares;    ///< executed load sharing
  double standalone_cost1 = 0.0;       ///< operator 1 alone at its commitment
  double standalone_cost2 = 0.0;
  double cost1 = 0.0;                  ///< bargained cost of operator 1
  double cost2 = 0.0;
  double payment_net = 0.0;            ///< > 0 means operator 1 pays
  double payoff1 = 0.0;                ///< standalone minus bargained cost
  double payoff2 = 0.0;
};

/// Core of the per-slot bargain given precomputed sharing and standalone
/// demands; the group bill is billed evenly and payment_net settles the even
/// split to the bargained one, so symmetric operators exchange nothing.
inline BargainSlotOutcome realtime_bargain_with(double g1, double g2,
                                                SlotSharing sharing,
                                                double zeta1, double zeta2,
                                                const SlotPrices& pr) {
  if (g1 < 0.0 || g2 < 0.0)
    throw std::domain_error("realtime_bargain: negative commitment");
  BargainSlotOutcome out;
  out.group = group_trade(g1 + g2, sharing.zeta, pr);
  out.shares = std::move(sharing.decisions);
  out.standalone_cost1 = individual_trade(g1, zeta1, pr).cost;
  out.standalone_cost2 = individual_trade(g2, zeta2, pr).cost;
  const auto [c1, c2] = nash_cost_split(out.group.cost, out.standalone_cost1,
                                        out.standalone_cost2);
  out.cost1 = c1;
  out.cost2 = c2;
  out.payment_net = 0.5 * (out.standalone_cost1 - out.standalone_cost2);
  out.payoff1 = out.standalone_cost1 - out.cost1;
  out.payoff2 = out.standalone_cost2 - out.cost2;
  return out;
}

/// Per-slot real-time bargain at commitments (g1, g2) on a realized slot.
inline BargainSlotOutcome realtime_bargain(double g1, double g2,
                                           const Scenario& sc, int slot,
                                           const NetworkConfig& net) {
  return realtime_bargain_with(g1, g2, shared_demand(sc, slot, net),
                               no_share_demand(sc, slot, net, 0),
                               no_share_demand(sc, slot, net, 1),
                               sc.prices[static_cast<std::size_t>(slot)]);
}

/// Solution of the reduced day-ahead Nash problem over the scalar transfer
/// L in [l_min, l_max]; infeasible when no L keeps both payoffs nonnegative.
struct NashSplit {
  bool feasible = false;
  double l_star = 0.0;
  double payoff1 = 0.0;
  double payoff2 = 0.0;
};

inline NashSplit nash_bargain_split(double ups1, double ups2, double l_min,
                                    double l_max) {
  if (l_min > l_max)
    throw std::invalid_argument("nash_bargain_split: empty L interval");
  NashSplit s;
  s.l_star = std::clamp(0.5 * (ups2 - ups1), l_min, l_max);
  s.payoff1 = ups1 + s.l_star;
  s.payoff2 = ups2 - s.l_star;
  s.feasible = s.payoff1 >= 0.0 && s.payoff2 >= 0.0;
  return s;
}

/// Disagreement-point constants of the day-ahead bargain, estimated by
/// Monte Carlo on common scenario draws, plus the raw totals they came from.
struct UpsilonEstimate {
  double upsilon1 = 0.0;  ///< E[noncoop cost 1] - E[group cost]/2
  double upsilon2 = 0.0;
  double noncoop_total1 = 0.0;
  double noncoop_total2 = 0.0;
  double group_total = 0.0;
};

inline UpsilonEstimate expected_upsilons(const CommitmentPlan& plan1,
                                         const CommitmentPlan& plan2,
                                         const CommitmentPlan& group_plan,
                                         const TrafficModel& model,
                                         const NetworkConfig& net,
                                         const PriceCurve& curve, int draws,
                                         std::uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("expected_upsilons: draws < 1");
  const int n_slots = model.n_slots();
  double nc1 = 0.0, nc2 = 0.0, grp = 0.0;
  for (int r = 0; r < draws; ++r) {
    const Scenario sc =
        sample_scenario(curve, model, derive_path(seed, stream::upsilon, r));
    for (int n = 0; n < n_slots; ++n) {
      const auto& pr = sc.prices[static_cast<std::size_t>(n)];
      nc1 += individual_trade(plan1.g[static_cast<std::size_t>(n)],
                              no_share_demand(sc, n, net, 0), pr)
                 .cost;
      nc2 += individual_trade(plan2.g[static_cast<std::size_t>(n)],
                              no_share_demand(sc, n, net, 1), pr)
                 .cost;
      grp += group_trade(group_plan.g[static_cast<std::size_t>(n)],
                         shared_demand(sc, n, net).zeta, pr)
                 .cost;
    }
  }
  UpsilonEstimate est;
  est.noncoop_total1 = nc1 / draws;
  est.noncoop_total2 = nc2 / draws;
  est.group_total = grp / draws;
  est.upsilon1 = est.noncoop_total1 - 0.5 * est.group_total;
  est.upsilon2 = est.noncoop_total2 - 0.5 * est.group_total;
  return est;
}

/// Result of the day-ahead commitment-split negotiation.
struct BargainDayOutcome {
  bool agreed = false;
  std::vector<double> g1;  ///< per-slot commitment of operator 1
  std::vector<double> g2;  ///< per-slot commitment of operator 2
  double upsilon1 = 0.0;
  double upsilon2 = 0.0;
  double payoff1 = 0.0;    ///< expected day payoff when agreed
  double payoff2 = 0.0;
  double l_star = 0.0;
  double lambda = 0.0;     ///< proportional fill fraction of operator 1
};

/// Day-ahead bargain at given disagreement constants. Only the aggregate
/// transfer L matters for the payoffs, so the split is filled proportionally:
/// g1 = lambda * G_group with the single lambda that realizes L*.
inline BargainDayOutcome dayahead_bargain_at(const CommitmentPlan& group_plan,
                                             const UpsilonEstimate& ups,
                                             const TrafficModel& model,
                                             const NetworkConfig& net,
                                             const PriceCurve& curve) {
  const int n_slots = model.n_slots();
  if (static_cast<int>(group_plan.g.size()) != n_slots ||
      curve.n_slots() != n_slots)
    throw std::invalid_argument("dayahead_bargain: slot count mismatch");

  // L(lambda) = l0 + lambda * slope from the linearized standalone costs;
  // predicted prices stand in for the unknown real-time ones.
  double l0 = 0.0, slope = 0.0;
  for (int n = 0; n < n_slots; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    double zbar1 = 0.0, zbar2 = 0.0;
    for (int k = 0; k < net.k_pairs; ++k) {
      const auto& p = net.params[static_cast<std::size_t>(k)];
      zbar1 += p[0].a * model.predicted(k, 0, n) + p[0].b;
      zbar2 += p[1].a * model.predicted(k, 1, n) + p[1].b;
    }
    const double gap = curve.alpha_buy_pred[un] - curve.alpha[un];
    l0 += 0.5 * (-gap * group_plan.g[un] +
                 curve.alpha_buy_pred[un] * (zbar2 - zbar1));
    slope += gap * group_plan.g[un];
  }

  BargainDayOutcome out;
  out.upsilon1 = ups.upsilon1;
  out.upsilon2 = ups.upsilon2;
  const NashSplit split =
      nash_bargain_split(ups.upsilon1, ups.upsilon2, l0, l0 + slope);
  if (!split.feasible) return out;  // caller falls back to non-cooperation

  out.agreed = true;
  out.l_star = split.l_star;
  out.payoff1 = split.payoff1;
  out.payoff2 = split.payoff2;
  out.lambda =
      slope > 0.0 ? std::clamp((split.l_star - l0) / slope, 0.0, 1.0) : 0.5;
  out.g1.resize(static_cast<std::size_t>(n_slots));
  out.g2.resize(static_cast<std::size_t>(n_slots));
  for (int n = 0; n < n_slots; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    out.g1[un] = out.lambda * group_plan.g[un];
    out.g2[un] = group_plan.g[un] - out.g1[un];
  }
  return out;
}

/// Full day-ahead bargain: estimate the disagreement constants by Monte
/// Carlo, then split the group plan.
inline BargainDayOutcome dayahead_bargain(const CommitmentPlan& group_plan,
                                          const CommitmentPlan& plan1,
                                          const CommitmentPlan& plan2,
                                          const TrafficModel& model,
                                          const NetworkConfig& net,
                                          const PriceCurve& curve, int draws,
                                          std::uint64_t seed) {
  const UpsilonEstimate ups = expected_upsilons(plan1, plan2, group_plan,
                                                model, net, curve, draws, seed);
  return dayahead_bargain_at(group_plan, ups, model, net, curve);
}

}  // namespace egb
