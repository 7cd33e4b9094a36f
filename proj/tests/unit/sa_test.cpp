// Copyright 2026 The compass-drag Authors
//
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

#include "compass/sa.hpp"

#include <array>
#include <cmath>
#include <map>
#include <random>

#include "compass/chimera.hpp"
#include "compass/experiment.hpp"
#include "gtest/gtest.h"
#include "test_oracles.hpp"

namespace compass {
namespace {

std::size_t state_index(const SpinConfig& s) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) idx |= (s[i] > 0 ? 1U : 0U) << i;
  return idx;
}

TEST(SAScheduleTest, BetaEndpoints) {
  SASchedule lin;
  EXPECT_EQ(lin.beta_at(0), 0.1);
  EXPECT_DOUBLE_EQ(lin.beta_at(lin.sweeps - 1), 3.0);
  SASchedule geo;
  geo.shape = BetaShape::kGeometric;
  geo.sweeps = 11;
  geo.beta_start = 0.1;
  geo.beta_end = 10.0;
  EXPECT_DOUBLE_EQ(geo.beta_at(0), 0.1);
  EXPECT_DOUBLE_EQ(geo.beta_at(5), 1.0);
  EXPECT_DOUBLE_EQ(geo.beta_at(10), 10.0);
  SASchedule one;
  one.sweeps = 1;
  EXPECT_EQ(one.beta_at(0), one.beta_start);
}

TEST(SAScheduleTest, Validation) {
  SASchedule s;
  EXPECT_NO_THROW(s.validate());
  s.beta_start = 4.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = SASchedule{};
  s.sweeps = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = SASchedule{};
  s.beta_start = 0.0;
  EXPECT_NO_THROW(s.validate());
  s.shape = BetaShape::kGeometric;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(MetropolisTest, EnergyTracksConfiguration) {
  std::mt19937_64 gen(41);
  const auto inst = testing::random_sparse_instance(12, 6, 0.4, true, gen);
  MetropolisChain chain(inst, SpinConfig(12, 1));
  Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    chain.sweep(0.7, rng, k % 2 ? ProposalOrder::kRandomSite : ProposalOrder::kSequential);
    ASSERT_NEAR(chain.energy(), ising_energy(inst, chain.spins()), 1e-9);
  }
}

TEST(MetropolisTest, ZeroTemperatureNeverRaisesEnergy) {
  std::mt19937_64 gen(42);
  const auto inst = testing::random_sparse_instance(16, 6, 0.4, true, gen);
  SpinConfig start(16);
  for (auto& s : start) s = (gen() & 1U) ? 1 : -1;
  MetropolisChain chain(inst, start);
  Rng rng(3);
  double prev = chain.energy();
  for (int k = 0; k < 5000; ++k) {
    chain.propose(gen() % 16, 1e300, rng);
    ASSERT_LE(chain.energy(), prev);
    prev = chain.energy();
  }
}

TEST(MetropolisTest, InfiniteTemperatureIsUniform) {
  IsingInstance inst(3);
  inst.set_field(0, 1.0);
  inst.add_coupling(1, 2, -1.0);
  SASchedule hot;
  hot.beta_start = 0.0;
  hot.beta_end = 0.0;
  hot.sweeps = 5;
  std::array<double, 8> counts{};
  const int samples = 8000;
  for (int k = 0; k < samples; ++k) ++counts[state_index(sa_run(inst, hot, 1000 + k))];
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - samples / 8.0) * (c - samples / 8.0) / (samples / 8.0);
  // 7 degrees of freedom, p = 0.001.
  EXPECT_LT(chi2, 24.32);
}

TEST(MetropolisTest, StationaryDistributionIsBoltzmann) {
  IsingInstance inst(3);
  inst.set_field(0, 0.5);
  inst.set_field(2, -0.25);
  inst.add_coupling(0, 1, 1.0);
  inst.add_coupling(1, 2, -0.75);
  const double beta = 1.0;

  std::array<double, 8> exact{};
  double z = 0.0;
  for (std::size_t idx = 0; idx < 8; ++idx) {
    SpinConfig s(3);
    for (std::size_t i = 0; i < 3; ++i) s[i] = ((idx >> i) & 1U) ? 1 : -1;
    exact[idx] = std::exp(-beta * ising_energy(inst, s));
    z += exact[idx];
  }
  for (auto& p : exact) p /= z;

  MetropolisChain chain(inst, SpinConfig(3, 1));
  Rng rng(4);
  std::array<double, 8> seen{};
  const int burn = 1000;
  const int sweeps = 1000000;
  for (int k = 0; k < burn + sweeps; ++k) {
    chain.sweep(beta, rng, ProposalOrder::kRandomSite);
    if (k >= burn) ++seen[state_index(chain.spins())];
  }
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const double p = seen[idx] / sweeps;
    if (exact[idx] >= 0.05) {
      EXPECT_NEAR(p / exact[idx], 1.0, 0.02) << "state " << idx;
    } else {
      EXPECT_NEAR(p, exact[idx], 0.002) << "state " << idx;
    }
  }
}

TEST(SARunTest, FerromagneticPairAligns) {
  IsingInstance pair(2);
  pair.add_coupling(0, 1, 1.0);
  int aligned = 0;
  const int runs = 2000;
  for (int k = 0; k < runs; ++k) {
    const auto s = sa_run(pair, SASchedule{}, derive_seed(5, 0, k));
    aligned += s[0] == s[1] ? 1 : 0;
  }
  EXPECT_GE(aligned, runs * 99 / 100);
}

TEST(SARunTest, DeterministicPerSeed) {
  const auto inst = random_pm1_instance(generate_chimera({2, 2, 4, {}}).graph, 8);
  SASchedule s;
  EXPECT_EQ(sa_run(inst, s, 77), sa_run(inst, s, 77));
  s.order = ProposalOrder::kSequential;
  EXPECT_EQ(sa_run(inst, s, 77), sa_run(inst, s, 77));
}

TEST(SABatchTest, RecordsAndWorkerIndependence) {
  const auto spec = ChimeraSpec{1, 2, 4, {}};
  std::vector<IsingInstance> insts;
  for (int k = 0; k < 3; ++k) insts.push_back(random_pm1_instance(generate_chimera(spec).graph, k));
  const auto batch = prepare_batch(std::move(insts));
  const auto one = sa_batch(batch, SASchedule{}, 5, 9, 1);
  const auto four = sa_batch(batch, SASchedule{}, 5, 9, 4);
  EXPECT_EQ(one, four);
  ASSERT_EQ(one.size(), 15u);
  for (std::size_t k = 0; k < one.size(); ++k) {
    const auto& r = one[k];
    EXPECT_EQ(r.instance_id, k / 5);
    EXPECT_EQ(r.run_id, k % 5);
    EXPECT_EQ(r.seed, derive_seed(9, r.instance_id, r.run_id));
    EXPECT_EQ(r.final_energy, ising_energy(batch[r.instance_id].instance, r.projected));
    EXPECT_EQ(r.success, r.final_energy == r.ground_energy);
    EXPECT_GE(r.final_energy, r.ground_energy);
  }
}

}  // namespace
}  // namespace compass
