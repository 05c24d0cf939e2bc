// Copyright 2026 The ILDCC Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ildcc/energy.hpp"
#include "ildcc/errors.hpp"

using namespace ildcc;

TEST_CASE("default parameters and validation") {
  const EnergyParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.e_init == 15.4);
  EnergyParams bad = p;
  bad.gamma = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.beta = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("receive energy") {
  EnergyParams p;
  CHECK(rx_energy(p) == doctest::Approx(2.56e-5));
  p.packet_len = 0.0;
  CHECK(rx_energy(p) == 0.0);
  p.packet_len = 1024.0;
  CHECK(rx_energy(p) == doctest::Approx(2.0 * 2.56e-5));
}

TEST_CASE("transmit energy") {
  const EnergyParams p;
  CHECK(tx_energy(p, 0.0) == doctest::Approx(2.56e-5));
  const double golden = 512.0 * (50e-9 + 1e-11 * std::pow(100.0, 4.8));
  CHECK(tx_energy(p, 100.0) == doctest::Approx(golden));
  CHECK(tx_energy(p, 100.0) == doctest::Approx(20.3831127).epsilon(1e-7));
  double prev = -1.0;
  for (double d = 0.0; d < 300.0; d += 7.5) {
    const double e = tx_energy(p, d);
    CHECK(e > prev);
    prev = e;
  }
  CHECK_THROWS_AS(tx_energy(p, -1.0), DomainError);
}

TEST_CASE("per-node energy per round") {
  const EnergyParams p;
  const double expect = 100 * 512 * 50e-9 + 100 * 512 * 50e-9 + 10 * 50e-7;
  CHECK(node_energy_per_round(p, 0.0) == doctest::Approx(expect));
  CHECK(node_energy_per_round(p, 2.0) > node_energy_per_round(p, 1.0));
}

TEST_CASE("per-node energy is strictly increasing in every load parameter") {
  const EnergyParams base;
  const double d = 1.7;
  const double e0 = node_energy_per_round(base, d);
  for (double EnergyParams::*field : {&EnergyParams::k_traffic, &EnergyParams::t_rate,
                                      &EnergyParams::r_rate, &EnergyParams::a_rate}) {
    EnergyParams q = base;
    q.*field *= 1.5;
    CHECK(node_energy_per_round(q, d) > e0);
  }
  double prev = -1.0;
  for (double mu_w = 0.0; mu_w < 5.0; mu_w += 0.25) {
    const double e = node_energy_per_round(base, mu_w);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("remaining energy") {
  const EnergyParams p;
  CHECK(remaining_energy(p, 1.0, 0) == doctest::Approx(15.4));
  const double ep = node_energy_per_round(p, 1.0);
  EnergyParams exact = p;
  exact.e_init = ep * 40.0;
  CHECK(remaining_energy(exact, 1.0, 40) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(remaining_energy(p, 1.0, 100000000) == 0.0);
  CHECK_THROWS_AS(remaining_energy(p, 1.0, -1), DomainError);
  const EnergyReport r = energy_report(p, 1.0, 3);
  CHECK(r.j_rx >= 0.0);
  CHECK(r.j_tx >= 0.0);
  CHECK(r.e_p == doctest::Approx(ep));
  CHECK(r.e_r == doctest::Approx(15.4 - 3 * ep));
}

TEST_CASE("lifetime in rounds") {
  const std::vector<double> one{2.0};
  CHECK(lifetime_rounds(10.0, one) == doctest::Approx(5.0));
  CHECK_THROWS_AS(lifetime_rounds(10.0, std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(lifetime_rounds(10.0, std::vector<double>{1.0, 0.0}), DomainError);

  const std::vector<double> burn{0.3, 0.7, 1.1};
  for (double c : {0.5, 2.0, 13.0}) {
    std::vector<double> scaled;
    for (double b : burn) scaled.push_back(b * c);
    CHECK(lifetime_rounds(5.0 * c, scaled) == doctest::Approx(lifetime_rounds(5.0, burn)));
  }
}

TEST_CASE("lifetime report") {
  const EnergyParams p;
  // Doubling the node count at the same distance leaves the lifetime unchanged.
  const LifetimeReport same = lifetime_report(p, 10, 1.5, 10, 1.5);
  CHECK(same.t_r == doctest::Approx(same.i_r));
  CHECK(same.e_extra == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.b1 == doctest::Approx(154.0));
  CHECK(same.b2 == doctest::Approx(154.0));

  // Shorter average distance extends lifetime.
  const LifetimeReport better = lifetime_report(p, 12, 180.0, 28, 100.0);
  CHECK(better.t_r > better.i_r);
  CHECK(better.e_extra == doctest::Approx(better.t_r - better.i_r));
  CHECK(better.t_r == doctest::Approx(p.e_init / node_energy_per_round(p, 100.0)));

  double prev = 1e300;
  for (double k : {0.5, 1.0, 2.0, 4.0}) {
    EnergyParams q = p;
    q.k_traffic = k;
    const double t_r = lifetime_report(q, 12, 150.0, 20, 120.0).t_r;
    CHECK(t_r < prev);
    CHECK(t_r >= 0.0);
    prev = t_r;
  }
}

TEST_CASE("receive-only burn reduces lifetime to stored energy over receive cost") {
  // With transmit and aggregation negligible, T_R = B / (n k R L beta).
  EnergyParams p;
  p.t_rate = 1e-300;
  p.a_rate = 1e-300;
  const std::size_t n = 25;
  const LifetimeReport r = lifetime_report(p, 15, 1.0, 10, 1.0);
  const double b = static_cast<double>(n) * p.e_init;
  CHECK(r.t_r == doctest::Approx(b / (static_cast<double>(n) * p.k_traffic * p.r_rate *
                                      p.packet_len * p.beta)));
}
