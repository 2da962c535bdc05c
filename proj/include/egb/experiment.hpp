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

/// \file experiment.hpp
/// \brief Experiment configuration, orchestration of the three operating
///        schemes over R scenario realizations, and CSV report emission.
///
/// All three schemes are evaluated on identical realized scenarios (common
/// random numbers), which tightens per-realization comparisons without
/// biasing the averages. Everything is a pure function of the configuration,
/// so two runs with the same config produce byte-identical reports.

#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "egb/bargaining.hpp"
#include "egb/commitment.hpp"
#include "egb/core.hpp"
#include "egb/load_sharing.hpp"
#include "egb/rng.hpp"
#include "egb/scenario.hpp"
#include "egb/trading.hpp"

namespace egb {

enum class Scheme { noncoop, fullcoop, bargain };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::noncoop: return "noncoop";
    case Scheme::fullcoop: return "fullcoop";
    case Scheme::bargain: return "bargain";
  }
  return "?";
}

struct ExperimentConfig {
  int k_pairs = 50;
  int n_slots = 48;
  int m_samples = 500;
  int realizations = 50;
  std::uint64_t seed = 1;
  std::string traffic = "symmetric";  ///< symmetric | asymmetric | file:<path>
  std::string prices;                 ///< price CSV path; empty = built-in
  std::string scheme = "all";         ///< noncoop | fullcoop | bargain | all
  std::string out_dir = "out";
  BsParams bs{12.0, 1200.0, 30.0, 150.0};
  double traffic_err_frac = 0.4;  ///< uniform relative traffic error half-width
  double price_err_frac = 0.1;    ///< uniform relative price error half-width
  double mc_tol = 0.1;
  int mc_max_iter = 200;
};

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.k_pairs < 1 || cfg.n_slots < 1 || cfg.m_samples < 1 ||
      cfg.realizations < 1)
    throw std::invalid_argument("ExperimentConfig: counts must be >= 1");
  validate(cfg.bs);
}

inline std::set<Scheme> schemes_of(const ExperimentConfig& cfg) {
  if (cfg.scheme.empty()) return {Scheme::noncoop};  // baseline always runs
  if (cfg.scheme == "all")
    return {Scheme::noncoop, Scheme::fullcoop, Scheme::bargain};
  if (cfg.scheme == "noncoop") return {Scheme::noncoop};
  if (cfg.scheme == "fullcoop") return {Scheme::noncoop, Scheme::fullcoop};
  if (cfg.scheme == "bargain") return {Scheme::noncoop, Scheme::bargain};
  throw std::invalid_argument("unknown scheme '" + cfg.scheme +
                              "' (want noncoop|fullcoop|bargain|all)");
}

/// Applies one key=value option; keys mirror the CLI flag names.
inline void set_config_option(ExperimentConfig& cfg, std::string_view key,
                              std::string_view value) {
  const std::string v(value);
  auto to_count = [&](const char* what) {
    std::size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(v, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != v.size() || n < 1)
      throw std::invalid_argument(std::string(what) +
                                  ": expected a positive integer, got '" + v +
                                  "'");
    return n;
  };
  if (key == "seed") {
    try {
      cfg.seed = std::stoull(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("seed: expected an integer, got '" + v + "'");
    }
  } else if (key == "bs-pairs") {
    cfg.k_pairs = to_count("bs-pairs");
  } else if (key == "slots") {
    cfg.n_slots = to_count("slots");
  } else if (key == "mc-samples") {
    cfg.m_samples = to_count("mc-samples");
  } else if (key == "realizations") {
    cfg.realizations = to_count("realizations");
  } else if (key == "traffic") {
    if (v != "symmetric" && v != "asymmetric" && !v.starts_with("file:"))
      throw std::invalid_argument(
          "traffic: expected symmetric|asymmetric|file:<path>, got '" + v +
          "'");
    cfg.traffic = v;
  } else if (key == "prices") {
    cfg.prices = v;
  } else if (key == "scheme") {
    cfg.scheme = v;
  } else if (key == "out") {
    cfg.out_dir = v;
  } else {
    throw std::invalid_argument("unknown option '" + std::string(key) + "'");
  }
}

/// Loads a flat key=value config file ('#' starts a comment line).
inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(b, e - b + 1);
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    try {
      set_config_option(cfg, body.substr(0, eq), body.substr(eq + 1));
    } catch (const std::exception& ex) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               ex.what());
    }
  }
  return cfg;
}

/// Per-scheme averaged costs: per-slot rows plus daily totals and reductions
/// against the non-cooperative baseline.
struct SchemeReport {
  bool per_mno = false;  ///< whether per-operator rows are defined
  std::array<std::vector<double>, 2> slot_mno;
  std::vector<double> slot_total;
  std::array<double, 2> total_mno{0.0, 0.0};
  double total = 0.0;
  std::array<double, 2> reduction_mno{0.0, 0.0};
  double reduction_total = 0.0;
};

struct CostReport {
  ExperimentConfig config;
  std::vector<std::pair<Scheme, SchemeReport>> schemes;  ///< emission order
  std::vector<double> avg_payment_net;  ///< per slot; bargain scheme only

  ClampCounts scenario_clamps;  ///< over all evaluation realizations
  long long complementarity_violations = 0;
  long long group_dominance_violations = 0;

  bool bargain_agreed = false;
  double upsilon1 = 0.0, upsilon2 = 0.0;
  double day_payoff1 = 0.0, day_payoff2 = 0.0;
  double bargain_max_sum_dev = 0.0;   ///< max rel |cost1+cost2 - group cost|
  double bargain_max_diff_dev = 0.0;  ///< max scaled standalone-gap deviation
  double bargain_min_rt_payoff = std::numeric_limits<double>::infinity();
};

/// Runs the configured schemes over R common realized scenarios and returns
/// averaged per-slot and daily costs. The non-cooperative baseline always
/// runs; it anchors every reduction percentage.
inline CostReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto schemes = schemes_of(cfg);
  const bool want_fullcoop = schemes.count(Scheme::fullcoop) > 0;
  const bool want_bargain = schemes.count(Scheme::bargain) > 0;
  const bool need_group = want_fullcoop || want_bargain;

  const NetworkConfig net =
      uniform_network(cfg.k_pairs, cfg.n_slots, cfg.bs);
  PriceCurve curve = cfg.prices.empty() ? synth_price_curve(cfg.n_slots)
                                        : load_price_curve(cfg.prices);
  curve.buy_err_frac = cfg.price_err_frac;
  curve.sell_err_frac = cfg.price_err_frac;
  if (curve.n_slots() != cfg.n_slots)
    throw std::runtime_error("price curve has " +
                             std::to_string(curve.n_slots()) +
                             " slots, config expects " +
                             std::to_string(cfg.n_slots));

  TrafficModel model;
  const std::uint64_t model_seed = derive_path(cfg.seed, stream::traffic_model);
  if (cfg.traffic == "symmetric") {
    model = synth_traffic_model(TrafficKind::symmetric, cfg.k_pairs,
                                cfg.bs.d_max, model_seed, cfg.n_slots);
  } else if (cfg.traffic == "asymmetric") {
    model = synth_traffic_model(TrafficKind::asymmetric, cfg.k_pairs,
                                cfg.bs.d_max, model_seed, cfg.n_slots);
  } else if (cfg.traffic.starts_with("file:")) {
    const auto theta = load_theta_profile(cfg.traffic.substr(5));
    if (static_cast<int>(theta.size()) != cfg.n_slots)
      throw std::runtime_error("traffic profile has " +
                               std::to_string(theta.size()) +
                               " slots, config expects " +
                               std::to_string(cfg.n_slots));
    model = synth_traffic_model(TrafficKind::symmetric, cfg.k_pairs,
                                cfg.bs.d_max, model_seed, cfg.n_slots, &theta);
  } else {
    throw std::invalid_argument("unknown traffic source '" + cfg.traffic +
                                "'");
  }
  model.err_frac = cfg.traffic_err_frac;
  validate(model);

  const McConfig mc{cfg.m_samples, cfg.mc_tol, cfg.mc_max_iter};
  const std::uint64_t mc_seed = cfg.seed;  // stream::mc_loads scopes the draws

  const CommitmentPlan plan1 = plan_noncoop(0, model, net, curve, mc, mc_seed);
  const CommitmentPlan plan2 = plan_noncoop(1, model, net, curve, mc, mc_seed);
  CommitmentPlan group_plan;
  BargainDayOutcome day;
  if (need_group) group_plan = plan_group(model, net, curve, mc, mc_seed);
  if (want_bargain)
    day = dayahead_bargain(group_plan, plan1, plan2, model, net, curve,
                           cfg.realizations, cfg.seed);

  const int N = cfg.n_slots;
  const int R = cfg.realizations;
  const auto zeros = std::vector<double>(static_cast<std::size_t>(N), 0.0);
  SchemeReport rep_nc, rep_fc, rep_bg;
  rep_nc.per_mno = true;
  rep_nc.slot_mno = {zeros, zeros};
  rep_nc.slot_total = zeros;
  rep_fc.slot_total = zeros;
  rep_bg.per_mno = true;
  rep_bg.slot_mno = {zeros, zeros};
  rep_bg.slot_total = zeros;

  CostReport report;
  report.config = cfg;
  report.avg_payment_net = want_bargain ? zeros : std::vector<double>{};
  if (want_bargain) {
    report.bargain_agreed = day.agreed;
    report.upsilon1 = day.upsilon1;
    report.upsilon2 = day.upsilon2;
    report.day_payoff1 = day.payoff1;
    report.day_payoff2 = day.payoff2;
  }

  auto check_trade = [&](const TradeDecision& t) {
    if (t.buy > 0.0 && t.sell > 0.0) ++report.complementarity_violations;
  };

  for (int r = 0; r < R; ++r) {
    const Scenario sc = sample_scenario(
        curve, model, derive_path(cfg.seed, stream::realization, r));
    report.scenario_clamps += sc.clamps;

    double nc_total_r = 0.0;
    double matched_total_r = 0.0;
    for (int n = 0; n < N; ++n) {
      const std::size_t un = static_cast<std::size_t>(n);
      const SlotPrices& pr = sc.prices[un];
      const double zeta1 = no_share_demand(sc, n, net, 0);
      const double zeta2 = no_share_demand(sc, n, net, 1);
      const TradeDecision t1 = individual_trade(plan1.g[un], zeta1, pr);
      const TradeDecision t2 = individual_trade(plan2.g[un], zeta2, pr);
      check_trade(t1);
      check_trade(t2);
      rep_nc.slot_mno[0][un] += t1.cost;
      rep_nc.slot_mno[1][un] += t2.cost;
      rep_nc.slot_total[un] += t1.cost + t2.cost;
      nc_total_r += t1.cost + t2.cost;

      if (!need_group) continue;
      const SlotSharing sharing = shared_demand(sc, n, net);
      const TradeDecision tg = group_trade(group_plan.g[un], sharing.zeta, pr);
      check_trade(tg);
      rep_fc.slot_total[un] += tg.cost;
      // group dominance check at the summed non-cooperative commitments
      const TradeDecision tm =
          group_trade(plan1.g[un] + plan2.g[un], sharing.zeta, pr);
      matched_total_r += tm.cost;

      if (want_bargain) {
        if (day.agreed) {
          const BargainSlotOutcome bo = realtime_bargain_with(
              day.g1[un], day.g2[un], sharing, zeta1, zeta2, pr);
          check_trade(bo.group);
          rep_bg.slot_mno[0][un] += bo.cost1;
          rep_bg.slot_mno[1][un] += bo.cost2;
          rep_bg.slot_total[un] += bo.group.cost;
          report.avg_payment_net[un] += bo.payment_net;
          const double scale =
              std::max({1.0, std::abs(bo.group.cost),
                        std::abs(bo.standalone_cost1) +
                            std::abs(bo.standalone_cost2)});
          report.bargain_max_sum_dev = std::max(
              report.bargain_max_sum_dev,
              std::abs(bo.cost1 + bo.cost2 - bo.group.cost) / scale);
          report.bargain_max_diff_dev = std::max(
              report.bargain_max_diff_dev,
              std::abs((bo.cost1 - bo.cost2) - (bo.standalone_cost1 -
                                                bo.standalone_cost2)) /
                  scale);
          report.bargain_min_rt_payoff =
              std::min({report.bargain_min_rt_payoff, bo.payoff1, bo.payoff2});
        } else {  // disagreement: both operate non-cooperatively
          rep_bg.slot_mno[0][un] += t1.cost;
          rep_bg.slot_mno[1][un] += t2.cost;
          rep_bg.slot_total[un] += t1.cost + t2.cost;
        }
      }
    }
    if (need_group &&
        matched_total_r > nc_total_r + 1e-9 * std::max(1.0, std::abs(nc_total_r)))
      ++report.group_dominance_violations;
  }

  auto finish = [&](SchemeReport& rep) {
    for (int n = 0; n < N; ++n) {
      const std::size_t un = static_cast<std::size_t>(n);
      rep.slot_total[un] /= R;
      rep.total += rep.slot_total[un];
      if (rep.per_mno)
        for (int i = 0; i < 2; ++i) {
          rep.slot_mno[static_cast<std::size_t>(i)][un] /= R;
          rep.total_mno[static_cast<std::size_t>(i)] +=
              rep.slot_mno[static_cast<std::size_t>(i)][un];
        }
    }
  };
  finish(rep_nc);
  if (want_fullcoop) finish(rep_fc);
  if (want_bargain) {
    finish(rep_bg);
    for (auto& v : report.avg_payment_net) v /= R;
  }

  auto reduction = [](double base, double value) {
    return base != 0.0 ? 100.0 * (base - value) / base : 0.0;
  };
  report.schemes.emplace_back(Scheme::noncoop, rep_nc);
  if (want_fullcoop) {
    rep_fc.reduction_total = reduction(rep_nc.total, rep_fc.total);
    report.schemes.emplace_back(Scheme::fullcoop, rep_fc);
  }
  if (want_bargain) {
    rep_bg.reduction_total = reduction(rep_nc.total, rep_bg.total);
    for (int i = 0; i < 2; ++i)
      rep_bg.reduction_mno[static_cast<std::size_t>(i)] =
          reduction(rep_nc.total_mno[static_cast<std::size_t>(i)],
                    rep_bg.total_mno[static_cast<std::size_t>(i)]);
    report.schemes.emplace_back(Scheme::bargain, rep_bg);
  }
  return report;
}

namespace detail {

inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

/// Writes per_slot_costs.csv, summary.csv, and meta.csv into `dir`.
inline void emit_report(const CostReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out)
      throw std::runtime_error(std::string("cannot write ") + dir + "/" + name);
    return out;
  };

  {
    std::ofstream out = open("per_slot_costs.csv");
    out << "slot,scheme,mno,avg_cost\n";
    const int n_slots = report.config.n_slots;
    for (int n = 0; n < n_slots; ++n) {
      const std::size_t un = static_cast<std::size_t>(n);
      for (const auto& [scheme, rep] : report.schemes) {
        if (rep.per_mno)
          for (int i = 0; i < 2; ++i)
            out << n << ',' << scheme_name(scheme) << ',' << (i + 1) << ','
                << detail::fmt_g(rep.slot_mno[static_cast<std::size_t>(i)][un])
                << '\n';
        out << n << ',' << scheme_name(scheme) << ",total,"
            << detail::fmt_g(rep.slot_total[un]) << '\n';
        if (scheme == Scheme::bargain && !report.avg_payment_net.empty())
          out << n << ",bargain,payment_net,"
              << detail::fmt_g(report.avg_payment_net[un]) << '\n';
      }
    }
  }

  {
    std::ofstream out = open("summary.csv");
    out << "scheme,mno,total,reduction_pct\n";
    for (const auto& [scheme, rep] : report.schemes) {
      if (rep.per_mno)
        for (int i = 0; i < 2; ++i)
          out << scheme_name(scheme) << ',' << (i + 1) << ','
              << detail::fmt_g(rep.total_mno[static_cast<std::size_t>(i)])
              << ','
              << detail::fmt_g(rep.reduction_mno[static_cast<std::size_t>(i)])
              << '\n';
      out << scheme_name(scheme) << ",total," << detail::fmt_g(rep.total)
          << ',' << detail::fmt_g(rep.reduction_total) << '\n';
    }
  }

  {
    std::ofstream out = open("meta.csv");
    out << "key,value\n";
    const ExperimentConfig& c = report.config;
    out << "k_pairs," << c.k_pairs << '\n';
    out << "n_slots," << c.n_slots << '\n';
    out << "m_samples," << c.m_samples << '\n';
    out << "realizations," << c.realizations << '\n';
    out << "seed," << c.seed << '\n';
    out << "traffic," << c.traffic << '\n';
    out << "prices," << (c.prices.empty() ? "builtin" : c.prices) << '\n';
    out << "scheme," << c.scheme << '\n';
    out << "bs_a," << detail::fmt_g(c.bs.a) << '\n';
    out << "bs_b," << detail::fmt_g(c.bs.b) << '\n';
    out << "bs_c," << detail::fmt_g(c.bs.c) << '\n';
    out << "bs_d_max," << detail::fmt_g(c.bs.d_max) << '\n';
    out << "traffic_err_frac," << detail::fmt_g(c.traffic_err_frac) << '\n';
    out << "price_err_frac," << detail::fmt_g(c.price_err_frac) << '\n';
    out << "mc_tol," << detail::fmt_g(c.mc_tol) << '\n';
    out << "clamp_price_buy," << report.scenario_clamps.price_buy << '\n';
    out << "clamp_price_sell," << report.scenario_clamps.price_sell << '\n';
    out << "clamp_traffic_low," << report.scenario_clamps.traffic_low << '\n';
    out << "clamp_traffic_high," << report.scenario_clamps.traffic_high
        << '\n';
    out << "complementarity_violations," << report.complementarity_violations
        << '\n';
    out << "group_dominance_violations," << report.group_dominance_violations
        << '\n';
    out << "bargain_agreed," << (report.bargain_agreed ? 1 : 0) << '\n';
    out << "upsilon1," << detail::fmt_g(report.upsilon1) << '\n';
    out << "upsilon2," << detail::fmt_g(report.upsilon2) << '\n';
    out << "day_payoff1," << detail::fmt_g(report.day_payoff1) << '\n';
    out << "day_payoff2," << detail::fmt_g(report.day_payoff2) << '\n';
  }
}

}  // namespace egb
