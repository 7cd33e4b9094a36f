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

#include "compass/readout.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "gtest/gtest.h"

namespace compass {
namespace {

constexpr double kPi = std::numbers::pi;

RunRecord record(std::size_t id, std::size_t run, bool success, SpinConfig spins = {}) {
  RunRecord r;
  r.instance_id = id;
  r.run_id = run;
  r.success = success;
  r.projected = std::move(spins);
  return r;
}

TEST(ProjectTest, SignOfCosine) {
  Rng rng(1);
  const std::vector<double> theta{0.0, kPi, 0.3, -0.3, 2.0, kPi / 2 - 1e-3, kPi / 2 + 1e-3};
  EXPECT_EQ(project_spins(theta, kDefaultTieEpsilon, rng),
            (SpinConfig{1, -1, 1, 1, -1, 1, -1}));
}

TEST(ProjectTest, TieBreakIsFairAndSeeded) {
  const std::vector<double> theta(20000, kPi / 2);
  Rng a(5);
  Rng b(5);
  const auto sa = project_spins(theta, kDefaultTieEpsilon, a);
  EXPECT_EQ(sa, project_spins(theta, kDefaultTieEpsilon, b));
  const auto ups = std::count(sa.begin(), sa.end(), Spin{1});
  // 4 sigma around 10000.
  EXPECT_NEAR(static_cast<double>(ups), 10000.0, 4 * std::sqrt(5000.0));
}

TEST(ProjectTest, EpsilonWidensTieBand) {
  Rng rng(3);
  const std::vector<double> theta{kPi / 2 - 0.01};
  EXPECT_EQ(project_spins(theta, 0.0, rng)[0], 1);
  int ups = 0;
  for (int k = 0; k < 200; ++k) ups += project_spins(theta, 0.1, rng)[0] > 0 ? 1 : 0;
  EXPECT_GT(ups, 50);
  EXPECT_LT(ups, 150);
}

TEST(EnergyMatchTest, ExactForIntegralToleranceOtherwise) {
  EXPECT_TRUE(energy_matches(-8.0, -8.0, true));
  EXPECT_FALSE(energy_matches(-8.0 + 1e-12, -8.0, true));
  EXPECT_TRUE(energy_matches(-8.0 + 1e-12, -8.0, false));
  EXPECT_FALSE(energy_matches(-7.9, -8.0, false));
}

TEST(SuccessTest, Probability) {
  const std::vector<RunRecord> rs{record(3, 0, true), record(3, 1, false), record(3, 2, true),
                                  record(3, 3, true)};
  EXPECT_EQ(success_probability(rs), 0.75);
  EXPECT_THROW(success_probability(std::span<const RunRecord>{}), std::invalid_argument);
  const std::vector<RunRecord> mixed{record(1, 0, true), record(2, 0, true)};
  EXPECT_THROW(success_probability(mixed), std::invalid_argument);
}

TEST(SuccessTest, PerInstanceSortedById) {
  const std::vector<RunRecord> rs{record(5, 0, true), record(1, 0, false), record(5, 1, false),
                                  record(1, 1, false), record(2, 0, true)};
  EXPECT_EQ(success_probabilities(rs), (std::vector<double>{0.0, 1.0, 0.5}));
}

TEST(IsolatedClusterTest, Classification) {
  const SpinConfig isolated(8, -1);
  const SpinConfig cluster{1, 1, 1, 1, -1, 1, -1, 1};
  const SpinConfig other{1, -1, 1, 1, 1, 1, 1, 1};
  std::vector<RunRecord> rs;
  for (int k = 0; k < 4; ++k) rs.push_back(record(0, rs.size(), true, isolated));
  for (int k = 0; k < 32; ++k) rs.push_back(record(0, rs.size(), true, cluster));
  for (int k = 0; k < 4; ++k) rs.push_back(record(0, rs.size(), false, other));
  const auto stats = isolated_cluster_stats(rs);
  EXPECT_EQ(stats.runs, 40u);
  EXPECT_DOUBLE_EQ(stats.p_isolated, 0.1);
  EXPECT_DOUBLE_EQ(stats.p_cluster, 32.0 / 40.0 / 16.0);
  rs.push_back(record(0, 99, true, SpinConfig(7, 1)));
  EXPECT_THROW(isolated_cluster_stats(rs), std::invalid_argument);
  EXPECT_EQ(isolated_cluster_stats(std::span<const RunRecord>{}).runs, 0u);
}

TEST(HistogramTest, Binning) {
  const std::vector<double> v{0.0, 0.0, 0.04, 0.05, 0.5, 0.95, 1.0, 1.0};
  const auto h = histogram(v, 20);
  ASSERT_EQ(h.counts.size(), 20u);
  ASSERT_EQ(h.bin_edges.size(), 21u);
  EXPECT_EQ(h.bin_edges.front(), 0.0);
  EXPECT_EQ(h.bin_edges.back(), 1.0);
  EXPECT_EQ(h.counts[0], 3u);
  EXPECT_EQ(h.counts[1], 1u);
  EXPECT_EQ(h.counts[10], 1u);
  EXPECT_EQ(h.counts[19], 3u);
  EXPECT_EQ(h.n_instances, 8u);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  EXPECT_EQ(total, v.size());
  EXPECT_DOUBLE_EQ(h.extreme_fraction(0.1, 0.9), 7.0 / 8.0);
}

TEST(HistogramTest, Errors) {
  const std::vector<double> bad{0.2, 1.5};
  EXPECT_THROW(histogram(bad), std::invalid_argument);
  const std::vector<double> nan{std::nan("")};
  EXPECT_THROW(histogram(nan), std::invalid_argument);
  const std::vector<double> ok{0.5};
  EXPECT_THROW(histogram(ok, 1), std::invalid_argument);
}

TEST(HistogramTest, FractionOutside) {
  const std::vector<double> v{0.0, 0.1, 0.2, 0.5, 0.9, 1.0};
  EXPECT_DOUBLE_EQ(fraction_outside(v, 0.1, 0.9), 4.0 / 6.0);
  EXPECT_EQ(fraction_outside(std::span<const double>{}, 0.1, 0.9), 0.0);
}

TEST(WriterTest, RecordsCsv) {
  RunRecord r = record(2, 7, true, {1, -1});
  r.seed = 12345;
  r.final_energy = -8;
  r.ground_energy = -8;
  r.residual_ke = 0.125;
  std::ostringstream out;
  write_records_csv(out, std::vector<RunRecord>{r});
  EXPECT_EQ(out.str(),
            "instance_id,run_id,seed,final_energy,ground_energy,success,residual_ke\n"
            "2,7,12345,-8,-8,1,0.125\n");
}

TEST(WriterTest, RecordsJson) {
  RunRecord r = record(1, 0, false, {1, -1, -1});
  r.final_energy = -1.5;
  const auto j = nlohmann::json::parse(records_to_json(std::vector<RunRecord>{r}));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["instance_id"], 1);
  EXPECT_EQ(j[0]["success"], false);
  EXPECT_EQ(j[0]["final_energy"], -1.5);
  EXPECT_EQ(j[0]["projected"], "+--");
}

TEST(WriterTest, HistogramCsvAndScripts) {
  const std::vector<double> v{0.0, 1.0};
  std::ostringstream out;
  write_histogram_csv(out, histogram(v, 2));
  EXPECT_EQ(out.str(), "bin_lo,bin_hi,count\n0,0.5,1\n0.5,1,1\n");
  const auto gp = histogram_plot_script("histogram.csv", "p");
  EXPECT_NE(gp.find("'histogram.csv'"), std::string::npos);
  const auto tp = trajectory_plot_script({"a.csv", "b.csv"}, {0, 4}, "t");
  EXPECT_NE(tp.find("'a.csv' using 1:2"), std::string::npos);
  EXPECT_NE(tp.find("'b.csv' using 1:6"), std::string::npos);
}

}  // namespace
}  // namespace compass
