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

/// \file scenario.hpp
/// \brief Price and traffic curves, prediction-error specs, and seeded
///        sampling of realized scenarios.
///
/// Sampling is pure: a Scenario is a function of (curve, model, seed) only.
/// RNG streams are derived per (slot, BS) key path, so values are identical
/// no matter how sampling work is scheduled.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "egb/core.hpp"
#include "egb/rng.hpp"

namespace egb {

/// Day-ahead prices and predicted real-time prices per slot, plus the
/// half-widths of the uniform relative prediction errors.
struct PriceCurve {
  std::vector<double> alpha;            ///< day-ahead price per slot
  std::vector<double> alpha_buy_pred;   ///< predicted real-time buy price
  std::vector<double> alpha_sell_pred;  ///< predicted real-time sell price
  double buy_err_frac = 0.1;
  double sell_err_frac = 0.1;

  int n_slots() const { return static_cast<int>(alpha.size()); }
};

inline void validate(const PriceCurve& c) {
  if (c.alpha.empty() || c.alpha_buy_pred.size() != c.alpha.size() ||
      c.alpha_sell_pred.size() != c.alpha.size())
    throw std::invalid_argument("PriceCurve: inconsistent slot counts");
  if (!(c.buy_err_frac >= 0.0 && c.buy_err_frac < 1.0) ||
      !(c.sell_err_frac >= 0.0 && c.sell_err_frac < 1.0))
    throw std::invalid_argument("PriceCurve: error fractions must be in [0,1)");
  for (std::size_t n = 0; n < c.alpha.size(); ++n) {
    if (c.alpha[n] < 0.0 || c.alpha_sell_pred[n] < 0.0)
      throw std::invalid_argument("PriceCurve: negative price at slot " +
                                  std::to_string(n));
    if (!(c.alpha_sell_pred[n] < c.alpha[n] &&
          c.alpha[n] < c.alpha_buy_pred[n]))
      throw std::invalid_argument("price ordering violated at slot " +
                                  std::to_string(n));
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) {
    // trim surrounding whitespace
    auto b = cur.find_first_not_of(" \t\r");
    auto e = cur.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string()
                                            : cur.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_number(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": not a number: '" + s + "'");
  }
  if (pos != s.size())
    throw std::runtime_error(context + ": trailing garbage in '" + s + "'");
  return v;
}

}  // namespace detail

/// Loads a price curve from CSV with header
/// `slot,alpha,alpha_buy_pred,alpha_sell_pred` and slot indices 0..N-1.
inline PriceCurve load_price_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  PriceCurve curve;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");
  {
    const auto header = detail::split_csv_line(line);
    const std::vector<std::string> want = {"slot", "alpha", "alpha_buy_pred",
                                           "alpha_sell_pred"};
    if (header != want)
      throw std::runtime_error(path +
                               ": expected header "
                               "'slot,alpha,alpha_buy_pred,alpha_sell_pred'");
  }
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::string ctx = path + ":" + std::to_string(row + 2);
    auto f = detail::split_csv_line(line);
    if (f.size() != 4)
      throw std::runtime_error(ctx + ": expected 4 fields, got " +
                               std::to_string(f.size()));
    if (detail::parse_number(f[0], ctx) != row)
      throw std::runtime_error(ctx + ": slot index out of order");
    const double a = detail::parse_number(f[1], ctx);
    const double ab = detail::parse_number(f[2], ctx);
    const double as = detail::parse_number(f[3], ctx);
    if (!(as < a && a < ab))
      throw std::runtime_error(path + ": price ordering violated at slot " +
                               std::to_string(row));
    curve.alpha.push_back(a);
    curve.alpha_buy_pred.push_back(ab);
    curve.alpha_sell_pred.push_back(as);
    ++row;
  }
  validate(curve);
  return curve;
}

/// Built-in normalized diurnal traffic profile: a low night with the minimum
/// near 05:00 and a broad afternoon peak around 17:00. Values lie in
/// [0.3, 0.8], clipped into (0, 1].
inline std::vector<double> diurnal_profile(int n_slots) {
  if (n_slots < 1) throw std::invalid_argument("diurnal_profile: n_slots < 1");
  std::vector<double> theta(static_cast<std::size_t>(n_slots));
  const double dt = 24.0 / n_slots;
  for (int n = 0; n < n_slots; ++n) {
    const double t = n * dt;
    const double v =
        0.3 + 0.25 * (1.0 - std::cos(2.0 * std::numbers::pi * (t - 5.0) / 24.0));
    theta[static_cast<std::size_t>(n)] = std::min(1.0, v);
  }
  return theta;
}

/// Loads a normalized traffic profile from CSV with header `slot,theta`.
inline std::vector<double> load_theta_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");
  {
    auto header = detail::split_csv_line(line);
    if (header != std::vector<std::string>{"slot", "theta"})
      throw std::runtime_error(path + ": expected header 'slot,theta'");
  }
  std::vector<double> theta;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::string ctx = path + ":" + std::to_string(row + 2);
    auto f = detail::split_csv_line(line);
    if (f.size() != 2)
      throw std::runtime_error(ctx + ": expected 2 fields, got " +
                               std::to_string(f.size()));
    if (detail::parse_number(f[0], ctx) != row)
      throw std::runtime_error(ctx + ": slot index out of order");
    const double v = detail::parse_number(f[1], ctx);
    if (!(v > 0.0 && v <= 1.0))
      throw std::runtime_error(ctx + ": theta must be in (0,1]");
    theta.push_back(v);
    ++row;
  }
  if (theta.empty()) throw std::runtime_error(path + ": no data rows");
  return theta;
}

/// Per-BS traffic amplitudes on a shared diurnal profile, with the uniform
/// relative prediction-error half-width and the capacity used for clamping.
struct TrafficModel {
  std::vector<double> theta;                  ///< profile per slot, in (0,1]
  std::vector<std::array<double, 2>> chi;     ///< amplitude per (pair, op), Mbps
  double err_frac = 0.4;
  double d_max = 150.0;

  int n_slots() const { return static_cast<int>(theta.size()); }
  int k_pairs() const { return static_cast<int>(chi.size()); }

  /// Predicted mean load of operator i's BS in pair k at slot n.
  double predicted(int k, int i, int n) const {
    return chi[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
           theta[static_cast<std::size_t>(n)];
  }
};

inline void validate(const TrafficModel& m) {
  if (m.theta.empty()) throw std::invalid_argument("TrafficModel: no slots");
  if (m.chi.empty()) throw std::invalid_argument("TrafficModel: no BS pairs");
  if (!(m.err_frac >= 0.0 && m.err_frac < 1.0))
    throw std::invalid_argument("TrafficModel: err_frac must be in [0,1)");
  if (!(m.d_max > 0.0))
    throw std::invalid_argument("TrafficModel: d_max must be > 0");
  double theta_max = 0.0;
  for (double v : m.theta) {
    if (!(v > 0.0 && v <= 1.0))
      throw std::invalid_argument("TrafficModel: theta must be in (0,1]");
    theta_max = std::max(theta_max, v);
  }
  for (const auto& pair : m.chi)
    for (double x : pair) {
      if (x < 0.0) throw std::invalid_argument("TrafficModel: chi must be >= 0");
      if (x * theta_max > m.d_max)
        throw std::invalid_argument(
            "TrafficModel: predicted mean load exceeds d_max");
    }
}

enum class TrafficKind { symmetric, asymmetric };

/// Draws per-BS amplitudes: both operators on [0.1, 0.9]*d_max when
/// symmetric; operator 2 on the lighter [0.05, 0.45]*d_max when asymmetric.
/// `theta_override`, when non-null, replaces the built-in diurnal profile.
inline TrafficModel synth_traffic_model(
    TrafficKind kind, int k_pairs, double d_max, std::uint64_t seed,
    int n_slots, const std::vector<double>* theta_override = nullptr) {
  if (k_pairs < 1) throw std::invalid_argument("synth_traffic_model: K < 1");
  TrafficModel m;
  m.theta = theta_override ? *theta_override : diurnal_profile(n_slots);
  m.d_max = d_max;
  m.chi.resize(static_cast<std::size_t>(k_pairs));
  for (int k = 0; k < k_pairs; ++k)
    for (int i = 0; i < 2; ++i) {
      Rng rng(derive_path(seed, stream::traffic_model, k, i));
      const bool light = (kind == TrafficKind::asymmetric && i == 1);
      const double lo = (light ? 0.05 : 0.1) * d_max;
      const double hi = (light ? 0.45 : 0.9) * d_max;
      m.chi[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
          rng.uniform(lo, hi);
    }
  validate(m);
  return m;
}

/// Counts of boundary clamps applied while sampling realized values.
struct ClampCounts {
  long long price_buy = 0;     ///< realized buy price raised up to alpha
  long long price_sell = 0;    ///< realized sell price lowered down to alpha
  long long traffic_low = 0;   ///< realized load clamped up to 0
  long long traffic_high = 0;  ///< realized load clamped down to d_max

  ClampCounts& operator+=(const ClampCounts& o) {
    price_buy += o.price_buy;
    price_sell += o.price_sell;
    traffic_low += o.traffic_low;
    traffic_high += o.traffic_high;
    return *this;
  }
};

/// One realized load draw for (pair k, operator i, slot n). Shared by
/// scenario sampling and the day-ahead Monte-Carlo samplers so both apply
/// the same error model and clamping.
inline double sample_load(const TrafficModel& m, int k, int i, int n, Rng& rng,
                          ClampCounts* counts = nullptr) {
  const double mean = m.predicted(k, i, n);
  const double half = m.err_frac * mean;
  double d = mean + rng.uniform(-half, half);
  if (d < 0.0) {
    d = 0.0;
    if (counts) ++counts->traffic_low;
  } else if (d > m.d_max) {
    d = m.d_max;
    if (counts) ++counts->traffic_high;
  }
  return d;
}

/// Realized prices and per-BS loads for one day.
struct Scenario {
  int k_pairs = 0;
  int n_slots = 0;
  std::vector<SlotPrices> prices;  ///< realized prices per slot
  std::vector<double> loads;       ///< [n][k][i] realized traffic, Mbps
  ClampCounts clamps;

  double traffic(int k, int i, int n) const {
    return loads[(static_cast<std::size_t>(n) * k_pairs + k) * 2 +
                 static_cast<std::size_t>(i)];
  }
  double& traffic(int k, int i, int n) {
    return loads[(static_cast<std::size_t>(n) * k_pairs + k) * 2 +
                 static_cast<std::size_t>(i)];
  }
};

/// Samples one realized day. Realized prices are predicted values with
/// multiplicative uniform errors, clamped to keep
/// alpha_sell <= alpha <= alpha_buy; realized loads get additive uniform
/// errors of half-width err_frac * mean, clamped into [0, d_max]. Clamp
/// events are counted rather than resampled so draw counts stay fixed.
inline Scenario sample_scenario(const PriceCurve& curve,
                                const TrafficModel& model,
                                std::uint64_t seed) {
  validate(curve);
  validate(model);
  if (curve.n_slots() != model.n_slots())
    throw std::invalid_argument("sample_scenario: curve/model slot mismatch");
  const int n_slots = curve.n_slots();
  const int k_pairs = model.k_pairs();

  Scenario sc;
  sc.k_pairs = k_pairs;
  sc.n_slots = n_slots;
  sc.prices.resize(static_cast<std::size_t>(n_slots));
  sc.loads.resize(static_cast<std::size_t>(n_slots) * k_pairs * 2);

  for (int n = 0; n < n_slots; ++n) {
    Rng price_rng(derive_path(seed, n, 0));
    const double alpha = curve.alpha[static_cast<std::size_t>(n)];
    double buy = curve.alpha_buy_pred[static_cast<std::size_t>(n)] *
                 (1.0 + price_rng.uniform(-curve.buy_err_frac,
                                          curve.buy_err_frac));
    if (buy < alpha) {
      buy = alpha;
      ++sc.clamps.price_buy;
    }
    double sell = curve.alpha_sell_pred[static_cast<std::size_t>(n)] *
                  (1.0 + price_rng.uniform(-curve.sell_err_frac,
                                           curve.sell_err_frac));
    if (sell > alpha) {
      sell = alpha;
      ++sc.clamps.price_sell;
    }
    sc.prices[static_cast<std::size_t>(n)] = SlotPrices{alpha, buy, sell};

    for (int k = 0; k < k_pairs; ++k)
      for (int i = 0; i < 2; ++i) {
        Rng rng(derive_path(seed, n, 1 + 2 * k + i));
        sc.traffic(k, i, n) = sample_load(model, k, i, n, rng, &sc.clamps);
      }
  }
  return sc;
}

/// Built-in day-ahead price curve: cheap overnight, one steep evening peak
/// aligned with the traffic peak, with real-time predictions bracketing the
/// day-ahead price from above and below on every slot.
inline PriceCurve synth_price_curve(int n_slots) {
  if (n_slots < 1)
    throw std::invalid_argument("synth_price_curve: n_slots < 1");
  PriceCurve c;
  const double dt = 24.0 / n_slots;
  for (int n = 0; n < n_slots; ++n) {
    const double t = n * dt;
    const double peak = (t - 17.0) / 2.5;
    const double a = 0.015 + 0.105 * std::exp(-0.5 * peak * peak);
    const double w = 2.0 * std::numbers::pi * t / 24.0;
    c.alpha.push_back(a);
    c.alpha_buy_pred.push_back(a * (1.22 + 0.05 * std::sin(w)));
    c.alpha_sell_pred.push_back(a * (0.78 + 0.05 * std::cos(w)));
  }
  validate(c);
  return c;
}

}  // namespace egb
