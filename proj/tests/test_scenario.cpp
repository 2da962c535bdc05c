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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "egb/rng.hpp"
#include "egb/scenario.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

egb::TrafficModel single_bs_model(double chi, double theta, double d_max,
                                  double err) {
  egb::TrafficModel m;
  m.theta = {theta};
  m.chi = {{chi, chi}};
  m.err_frac = err;
  m.d_max = d_max;
  return m;
}

egb::PriceCurve flat_curve(int n, double alpha = 40.0, double buy = 50.0,
                           double sell = 20.0) {
  egb::PriceCurve c;
  c.alpha.assign(n, alpha);
  c.alpha_buy_pred.assign(n, buy);
  c.alpha_sell_pred.assign(n, sell);
  return c;
}

}  // namespace

TEST_CASE("price CSV field mapping") {
  const auto path = write_temp(
      "egb_prices_ok.csv",
      "slot,alpha,alpha_buy_pred,alpha_sell_pred\n0,40,50,20\n1,41,51,21\n");
  const auto curve = egb::load_price_curve(path);
  REQUIRE(curve.n_slots() == 2);
  CHECK(curve.alpha[0] == 40.0);
  CHECK(curve.alpha_buy_pred[0] == 50.0);
  CHECK(curve.alpha_sell_pred[0] == 20.0);
}

TEST_CASE("price CSV ordering violation names the slot") {
  const auto path = write_temp(
      "egb_prices_bad.csv",
      "slot,alpha,alpha_buy_pred,alpha_sell_pred\n0,40,35,20\n");
  CHECK_THROWS_WITH(egb::load_price_curve(path),
                    ContainsSubstring("price ordering violated at slot 0"));
}

TEST_CASE("price CSV parse errors carry context") {
  const auto bad_fields = write_temp(
      "egb_prices_fields.csv",
      "slot,alpha,alpha_buy_pred,alpha_sell_pred\n0,40,50\n");
  CHECK_THROWS_WITH(egb::load_price_curve(bad_fields),
                    ContainsSubstring("expected 4 fields"));
  const auto bad_number = write_temp(
      "egb_prices_nan.csv",
      "slot,alpha,alpha_buy_pred,alpha_sell_pred\n0,forty,50,20\n");
  CHECK_THROWS_WITH(egb::load_price_curve(bad_number),
                    ContainsSubstring("not a number"));
  const auto bad_header =
      write_temp("egb_prices_header.csv", "slot,a,b,c\n0,40,50,20\n");
  CHECK_THROWS_WITH(egb::load_price_curve(bad_header),
                    ContainsSubstring("expected header"));
  const auto bad_order = write_temp(
      "egb_prices_order.csv",
      "slot,alpha,alpha_buy_pred,alpha_sell_pred\n0,40,50,20\n2,40,50,20\n");
  CHECK_THROWS_WITH(egb::load_price_curve(bad_order),
                    ContainsSubstring("slot index out of order"));
}

TEST_CASE("shipped 48-slot curve matches the built-in one") {
  const auto path =
      std::string(EGB_SOURCE_DIR) + "/data/prices_48.csv";
  const auto curve = egb::load_price_curve(path);
  REQUIRE(curve.n_slots() == 48);
  const auto builtin = egb::synth_price_curve(48);
  for (int n = 0; n < 48; ++n) {
    CHECK_THAT(curve.alpha[n], WithinRel(builtin.alpha[n], 1e-9));
    CHECK_THAT(curve.alpha_buy_pred[n],
               WithinRel(builtin.alpha_buy_pred[n], 1e-9));
    CHECK_THAT(curve.alpha_sell_pred[n],
               WithinRel(builtin.alpha_sell_pred[n], 1e-9));
  }
}

TEST_CASE("built-in diurnal profile shape") {
  const auto theta = egb::diurnal_profile(48);
  REQUIRE(theta.size() == 48);
  int argmin = 0, argmax = 0;
  for (int n = 0; n < 48; ++n) {
    CHECK(theta[n] > 0.0);
    CHECK(theta[n] <= 1.0);
    if (theta[n] < theta[argmin]) argmin = n;
    if (theta[n] > theta[argmax]) argmax = n;
  }
  CHECK(argmin == 10);  // 05:00 with half-hour slots
  CHECK(argmax == 34);  // 17:00
  CHECK_THAT(theta[10], WithinAbs(0.3, 1e-12));
  CHECK_THAT(theta[34], WithinAbs(0.8, 1e-12));
}

TEST_CASE("theta profile CSV override") {
  const auto path =
      write_temp("egb_theta.csv", "slot,theta\n0,0.5\n1,0.75\n");
  const auto theta = egb::load_theta_profile(path);
  REQUIRE(theta.size() == 2);
  CHECK(theta[1] == 0.75);
  const auto bad = write_temp("egb_theta_bad.csv", "slot,theta\n0,1.5\n");
  CHECK_THROWS_WITH(egb::load_theta_profile(bad),
                    ContainsSubstring("theta must be in (0,1]"));
}

TEST_CASE("zero-error sampling reproduces the predictions exactly") {
  auto curve = flat_curve(4);
  curve.buy_err_frac = 0.0;
  curve.sell_err_frac = 0.0;
  egb::TrafficModel m;
  m.theta = {0.5, 0.6, 0.7, 0.8};
  m.chi = {{100.0, 80.0}, {50.0, 60.0}};
  m.err_frac = 0.0;
  m.d_max = 150.0;
  const auto sc = egb::sample_scenario(curve, m, 42);
  for (int n = 0; n < 4; ++n) {
    CHECK(sc.prices[n].alpha_buy == 50.0);
    CHECK(sc.prices[n].alpha_sell == 20.0);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        CHECK(sc.traffic(k, i, n) == m.predicted(k, i, n));
  }
  CHECK(sc.clamps.price_buy == 0);
  CHECK(sc.clamps.traffic_high == 0);
}

TEST_CASE("realized traffic stays inside the +/-40% band") {
  const auto curve = flat_curve(1);
  const auto m = single_bs_model(100.0, 1.0, 1e9, 0.4);
  for (int r = 0; r < 2000; ++r) {
    const auto sc = egb::sample_scenario(curve, m, 1000 + r);
    for (int i = 0; i < 2; ++i) {
      CHECK(sc.traffic(0, i, 0) >= 60.0);
      CHECK(sc.traffic(0, i, 0) <= 140.0);
    }
  }
}

TEST_CASE("traffic clamping at capacity is applied and counted") {
  const auto curve = flat_curve(1);
  // mean 140 with +/-40% errors spills over d_max = 150 regularly
  const auto m = single_bs_model(140.0, 1.0, 150.0, 0.4);
  long long clamped = 0, brute = 0;
  const int runs = 4000;
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t seed = 77000 + r;
    const auto sc = egb::sample_scenario(curve, m, seed);
    for (int i = 0; i < 2; ++i) CHECK(sc.traffic(0, i, 0) <= 150.0);
    clamped += sc.clamps.traffic_high;
    // replay the exact draw streams and count unclamped overshoots
    for (int i = 0; i < 2; ++i) {
      egb::Rng rng(egb::derive_path(seed, 0, 1 + i));
      const double raw = 140.0 + rng.uniform(-0.4 * 140.0, 0.4 * 140.0);
      if (raw > 150.0) {
        ++brute;
        CHECK(sc.traffic(0, i, 0) == 150.0);
      }
    }
  }
  CHECK(clamped == brute);
  CHECK(clamped > 0);
}

TEST_CASE("price clamping preserves the ordering on every slot") {
  auto curve = flat_curve(8, 40.0, 41.0, 39.0);  // narrow band, 10% errors
  egb::TrafficModel m;
  m.theta.assign(8, 1.0);
  m.chi = {{50.0, 50.0}};
  m.err_frac = 0.4;
  m.d_max = 150.0;
  long long buy_clamps = 0;
  for (int r = 0; r < 500; ++r) {
    const auto sc = egb::sample_scenario(curve, m, 31 + r);
    for (const auto& pr : sc.prices) {
      CHECK(pr.alpha_sell <= pr.alpha);
      CHECK(pr.alpha <= pr.alpha_buy);
    }
    buy_clamps += sc.clamps.price_buy;
  }
  CHECK(buy_clamps > 0);  // the narrow band forces clamps to happen
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  const auto curve = egb::synth_price_curve(48);
  const auto m = egb::synth_traffic_model(egb::TrafficKind::symmetric, 5,
                                          150.0, 99, 48);
  const auto a = egb::sample_scenario(curve, m, 1234);
  const auto b = egb::sample_scenario(curve, m, 1234);
  CHECK(a.loads == b.loads);
  for (int n = 0; n < 48; ++n) {
    CHECK(a.prices[n].alpha_buy == b.prices[n].alpha_buy);
    CHECK(a.prices[n].alpha_sell == b.prices[n].alpha_sell);
  }
  const auto c = egb::sample_scenario(curve, m, 1235);
  CHECK(a.loads != c.loads);
}

TEST_CASE("unclamped traffic errors are zero-mean") {
  const auto curve = flat_curve(1);
  const auto m = single_bs_model(100.0, 1.0, 1e9, 0.4);
  double sum = 0.0;
  const int draws = 100000;
  for (int r = 0; r < draws; ++r)
    sum += egb::sample_scenario(curve, m, 500000 + r).traffic(0, 0, 0);
  CHECK_THAT(sum / draws, WithinRel(100.0, 0.01));
}

TEST_CASE("synthesized amplitudes respect their ranges") {
  const auto sym = egb::synth_traffic_model(egb::TrafficKind::symmetric, 200,
                                            150.0, 7, 48);
  for (const auto& pair : sym.chi)
    for (double chi : pair) {
      CHECK(chi >= 15.0);
      CHECK(chi <= 135.0);
    }
  const auto asym = egb::synth_traffic_model(egb::TrafficKind::asymmetric,
                                             200, 150.0, 7, 48);
  for (const auto& pair : asym.chi) {
    CHECK(pair[0] >= 15.0);
    CHECK(pair[0] <= 135.0);
    CHECK(pair[1] >= 7.5);
    CHECK(pair[1] <= 67.5);
  }
  const auto again = egb::synth_traffic_model(egb::TrafficKind::asymmetric,
                                              200, 150.0, 7, 48);
  CHECK(asym.chi == again.chi);
}
