// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The cranmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cran/cellgeom.hpp"
#include "cran/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

namespace cran {
namespace {

constexpr double kIsd = 500.0;

TEST(Layout, NineteenCellsOnTwoRings) {
  EXPECT_NEAR(distance(cell_center(1, kIsd), {0.0, 0.0}), 0.0, 1e-12);
  for (int id = 2; id <= 7; ++id) EXPECT_NEAR(distance(cell_center(id, kIsd), {}), kIsd, 1e-9);
  for (int id = 8; id <= 19; ++id) {
    const double r = distance(cell_center(id, kIsd), {});
    EXPECT_NEAR(r, id % 2 == 0 ? std::numbers::sqrt3 * kIsd : 2.0 * kIsd, 1e-9) << id;
  }
  // Nearest-neighbour spacing is one inter-site distance for every pair of adjacent cells.
  for (int a = 1; a <= 19; ++a) {
    double nearest = 1e9;
    for (int b = 1; b <= 19; ++b) {
      if (a != b) nearest = std::min(nearest, distance(cell_center(a, kIsd), cell_center(b, kIsd)));
    }
    EXPECT_NEAR(nearest, kIsd, 1e-9);
  }
  EXPECT_THROW(cell_center(0, kIsd), std::out_of_range);
  EXPECT_THROW(cell_center(20, kIsd), std::out_of_range);
}

TEST(Layout, ReuseOneThirdInterferers) {
  const auto ids = interferers_of_cell1(Reuse::OneThird);
  EXPECT_EQ(ids, (std::vector<int>{8, 10, 12, 14, 16, 18}));
  EXPECT_EQ(interferers_of_cell1(Reuse::Full).size(), 18u);
}

TEST(Layout, ReuseBandsAreAProperColoring) {
  // Adjacent cells never share a band.
  for (int a = 1; a <= 19; ++a) {
    for (int b = a + 1; b <= 19; ++b) {
      if (distance(cell_center(a, kIsd), cell_center(b, kIsd)) < 1.01 * kIsd) {
        EXPECT_NE(reuse_band_of(a), reuse_band_of(b)) << a << " " << b;
      }
    }
  }
}

TEST(Layout, DeterministicAndInsideCells) {
  PropagationParams params;
  const Topology t1 = build_layout(7, 2, 1, params);
  const Topology t2 = build_layout(7, 2, 1, params);
  ASSERT_EQ(t1.num_cells(), 19);
  int ms = 0;
  int picos = 0;
  for (int c = 0; c < 19; ++c) {
    ms += static_cast<int>(t1.ms_positions[c].size());
    picos += static_cast<int>(t1.pico_positions[c].size());
    for (std::size_t i = 0; i < t1.ms_positions[c].size(); ++i) {
      EXPECT_EQ(t1.ms_positions[c][i].x, t2.ms_positions[c][i].x);
      EXPECT_EQ(t1.ms_positions[c][i].y, t2.ms_positions[c][i].y);
      EXPECT_TRUE(inside_hexagon(t1.ms_positions[c][i], t1.macro_sites[c], kIsd));
    }
    for (const Vec2& p : t1.pico_positions[c]) EXPECT_TRUE(inside_hexagon(p, t1.macro_sites[c], kIsd));
  }
  EXPECT_EQ(ms, 38);
  EXPECT_EQ(picos, 19);
}

TEST(Layout, TwentyPicosInCellOne) {
  PropagationParams params;
  const Topology t = build_layout(7, 5, 20, params);
  ASSERT_EQ(t.pico_positions[0].size(), 20u);
  for (const Vec2& p : t.pico_positions[0]) {
    EXPECT_TRUE(inside_hexagon(p, {0.0, 0.0}, kIsd));
    EXPECT_GE(distance(p, {0.0, 0.0}), params.min_macro_distance_m);
  }
  for (const Vec2& m : t.ms_positions[0]) {
    EXPECT_GE(distance(m, {0.0, 0.0}), params.min_macro_distance_m);
    for (const Vec2& p : t.pico_positions[0]) EXPECT_GE(distance(m, p), params.min_pico_distance_m);
  }
}

TEST(Layout, NoPicos) {
  const Topology t = build_layout(3, 1, 0, PropagationParams{});
  for (const auto& cell : t.pico_positions) EXPECT_TRUE(cell.empty());
  EXPECT_EQ(t.ms_positions[0].size(), 1u);
}

TEST(Layout, InvalidCounts) {
  EXPECT_THROW(build_layout(1, 0, 1, PropagationParams{}), ConfigError);
  EXPECT_THROW(build_layout(1, 1, -1, PropagationParams{}), ConfigError);
  PropagationParams bad;
  bad.inter_site_distance_m = -1.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Pathloss, Macro) {
  EXPECT_NEAR(pathloss_macro_db(1.0), 128.1, 1e-12);
  EXPECT_NEAR(pathloss_macro_db(0.1), 90.5, 1e-12);
  EXPECT_NEAR(pathloss_macro_db(10.0), 165.7, 1e-12);
  EXPECT_THROW(pathloss_macro_db(0.0), std::domain_error);
}

TEST(Pathloss, Pico) {
  EXPECT_NEAR(pathloss_pico_db(1.0), 38.0, 1e-12);
  EXPECT_NEAR(pathloss_pico_db(10.0), 68.0, 1e-12);
  EXPECT_NEAR(pathloss_pico_db(100.0), 98.0, 1e-12);
  EXPECT_THROW(pathloss_pico_db(-1.0), std::domain_error);
}

TEST(Pathloss, StrictlyIncreasing) {
  for (double d = 0.01; d < 5.0; d *= 1.3) {
    EXPECT_LT(pathloss_macro_db(d), pathloss_macro_db(d * 1.01));
    EXPECT_LT(pathloss_pico_db(d * 100), pathloss_pico_db(d * 101));
  }
}

TEST(SectorPattern, Examples) {
  EXPECT_NEAR(sector_gain_db(0.0), 0.0, 1e-15);
  EXPECT_NEAR(sector_gain_db(65.0), -12.0, 1e-12);
  EXPECT_NEAR(sector_gain_db(180.0), -20.0, 1e-12);
}

TEST(SectorPattern, EvenMonotoneBounded) {
  double previous = 0.0;
  for (double t = 0.0; t <= 180.0; t += 0.5) {
    const double g = sector_gain_db(t);
    EXPECT_EQ(g, sector_gain_db(-t));
    EXPECT_LE(g, previous);
    EXPECT_GE(g, -20.0);
    EXPECT_LE(g, 0.0);
    previous = g;
  }
}

TEST(WrapDegrees, Range) {
  EXPECT_NEAR(wrap_degrees(190.0), -170.0, 1e-12);
  EXPECT_NEAR(wrap_degrees(-190.0), 170.0, 1e-12);
  EXPECT_NEAR(wrap_degrees(720.0 + 10.0), 10.0, 1e-12);
}

TEST(Shadowing, StandardDeviations) {
  PropagationParams params;
  for (auto [cls, sd] : {std::pair{LinkClass::Macro, 10.0}, std::pair{LinkClass::Pico, 6.0}}) {
    Rng rng(21);
    const int n = 1000000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = shadowing_db(cls, params, rng);
      s += v;
      s2 += v * v;
    }
    const double mean = s / n;
    EXPECT_NEAR(std::sqrt(s2 / n - mean * mean), sd, 0.1);
  }
  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(shadowing_db(LinkClass::Macro, params, a), shadowing_db(LinkClass::Macro, params, b));
}

TEST(LinkGain, Examples) {
  PropagationParams params;
  const Node sector{NodeKind::MacroSector, {0.0, 0.0}, 30.0};
  const double a = 30.0 * std::numbers::pi / 180.0;
  const Node ms{NodeKind::Mobile, {1000.0 * std::cos(a), 1000.0 * std::sin(a)}, 0.0};
  EXPECT_NEAR(link_gain_db(sector, ms, params, 0.0), -113.1, 1e-9);
  EXPECT_NEAR(link_gain_db(ms, sector, params, 0.0), -113.1, 1e-9);

  const Node pico{NodeKind::Pico, {0.0, 0.0}, 0.0};
  const Node near{NodeKind::Mobile, {10.0, 0.0}, 0.0};
  EXPECT_NEAR(link_gain_db(pico, near, params, 0.0), -68.0, 1e-9);
  EXPECT_NEAR(link_gain_db(pico, near, params, 3.0), -65.0, 1e-9);

  Rng r1(9);
  Rng r2(9);
  EXPECT_EQ(link_gain_linear(pico, near, params, r1), link_gain_linear(pico, near, params, r2));
}

TEST(LinkGain, ClampsAndErrors) {
  PropagationParams params;
  const Node pico{NodeKind::Pico, {0.0, 0.0}, 0.0};
  const Node close{NodeKind::Mobile, {0.25, 0.0}, 0.0};
  EXPECT_NEAR(link_gain_db(pico, close, params, 0.0), -38.0, 1e-9);
  const Node same{NodeKind::Mobile, {0.0, 0.0}, 0.0};
  EXPECT_THROW(link_gain_db(pico, same, params, 0.0), std::domain_error);
  EXPECT_THROW(link_gain_db(pico, pico, params, 0.0), std::invalid_argument);
}

TEST(Units, Conversions) {
  EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-15);
  EXPECT_NEAR(dbm_to_watts(46.0), 39.810717055, 1e-8);
  EXPECT_NEAR(db_to_linear(-10.0), 0.1, 1e-15);
}

TEST(DeriveSeed, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t d = 0; d < 100; ++d) {
    for (std::uint64_t s = 0; s < 10; ++s) seen.insert(derive_seed(1, d, 3, s));
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
}

}  // namespace
}  // namespace cran
