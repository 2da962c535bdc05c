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

#include "egb/core.hpp"
#include "egb/rng.hpp"

using egb::BsParams;
using egb::SlotPrices;
using egb::TradeDecision;

namespace {
const BsParams kMacro{12.0, 1200.0, 30.0, 150.0};
}

TEST_CASE("bs_power active and sleep modes") {
  CHECK(egb::bs_power(10.0, kMacro) == 1320.0);
  CHECK(egb::bs_power(0.0, kMacro) == 30.0);
  CHECK(egb::bs_power(150.0, kMacro) == 3000.0);
}

TEST_CASE("bs_power domain errors") {
  CHECK_THROWS_AS(egb::bs_power(-1.0, kMacro), std::domain_error);
  CHECK_THROWS_AS(egb::bs_power(150.5, kMacro), std::domain_error);
}

TEST_CASE("bs_power treats sub-tolerance residue as sleep") {
  CHECK(egb::bs_power(1e-13, kMacro) == 30.0);
  CHECK(egb::bs_power(-1e-13, kMacro) == 30.0);
  CHECK(egb::bs_power(1e-11, kMacro) > 1200.0);
}

TEST_CASE("bs_power jump at zero and monotonicity") {
  egb::Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    BsParams p{rng.uniform(1.0, 20.0), rng.uniform(100.0, 2000.0), 0.0, 0.0};
    p.c = rng.uniform(0.0, p.b * 0.5);
    p.d_max = rng.uniform(50.0, 300.0);
    const double jump = p.b - p.c;
    CHECK(jump > 0.0);
    double prev = egb::bs_power(0.0, p);
    // strictly above sleep power everywhere on (0, d_max]
    for (int j = 1; j <= 20; ++j) {
      const double d = p.d_max * j / 20.0;
      const double w = egb::bs_power(d, p);
      CHECK(w > egb::bs_power(0.0, p));
      CHECK(w >= prev);
      prev = w;
    }
  }
}

TEST_CASE("slot_cost direct evaluations") {
  const SlotPrices pr{40.0, 50.0, 20.0};
  CHECK(egb::slot_cost({100.0, 0.0, 0.0, 0.0}, pr) == 4000.0);
  CHECK(egb::slot_cost({0.0, 0.0, 0.0, 0.0}, pr) == 0.0);
  CHECK(egb::slot_cost({100.0, 20.0, 0.0, 0.0}, pr) == 5000.0);
  CHECK_THROWS_AS(egb::slot_cost({1.0, -0.5, 0.0, 0.0}, pr),
                  std::domain_error);
  CHECK_THROWS_AS(egb::slot_cost({1.0, 0.0, -0.5, 0.0}, pr),
                  std::domain_error);
}

TEST_CASE("slot_cost is linear in (commitment, buy, sell)") {
  egb::Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const SlotPrices pr{rng.uniform(1, 100), rng.uniform(100, 200),
                        rng.uniform(0.1, 1.0)};
    const TradeDecision u{rng.uniform(0, 50), rng.uniform(0, 50),
                          rng.uniform(0, 50), 0.0};
    const TradeDecision v{rng.uniform(0, 50), rng.uniform(0, 50),
                          rng.uniform(0, 50), 0.0};
    const double s = rng.uniform(0, 3), t = rng.uniform(0, 3);
    const TradeDecision mix{s * u.commitment + t * v.commitment,
                            s * u.buy + t * v.buy, s * u.sell + t * v.sell,
                            0.0};
    const double lhs = egb::slot_cost(mix, pr);
    const double rhs = s * egb::slot_cost(u, pr) + t * egb::slot_cost(v, pr);
    CHECK_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-12) ||
                        Catch::Matchers::WithinAbs(rhs, 1e-9));
  }
}

TEST_CASE("BsParams invariants enforced") {
  CHECK_THROWS_AS(egb::validate(BsParams{0.0, 1.0, 0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(egb::validate(BsParams{1.0, 0.0, 0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(egb::validate(BsParams{1.0, 1.0, 1.0, 1.0}),
                  std::invalid_argument);  // c must stay below b
  CHECK_THROWS_AS(egb::validate(BsParams{1.0, 1.0, 0.5, 0.0}),
                  std::invalid_argument);
  CHECK_NOTHROW(egb::validate(kMacro));
}

TEST_CASE("NetworkConfig validation") {
  CHECK_THROWS_AS(egb::uniform_network(0, 48, kMacro), std::invalid_argument);
  CHECK_THROWS_AS(egb::uniform_network(1, 0, kMacro), std::invalid_argument);
  const auto net = egb::uniform_network(3, 48, kMacro);
  CHECK(net.params.size() == 3);
  CHECK(net.params[2][1].b == 1200.0);
}
