#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "rsel/facloc.hpp"
#include "rsel/rng.hpp"

namespace fl = rsel::facloc;

namespace {

rsel::CounterStream day_stream(std::uint64_t seed) {
  return rsel::CounterStream(rsel::derive_key(seed, 0), 0, 0, rsel::StreamTag::kFacilityLocation);
}

// Midpoint rule for the integral of g(x, y) * f(x, y) over the unit square.
template <typename G>
double integrate(G g) {
  const int n = 2000;
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double x = (a + 0.5) / n, y = (b + 0.5) / n;
      acc += g(x, y) * (1.6 - std::abs(x - 0.8) - std::abs(y - 0.8));
    }
  }
  return acc / (double(n) * n);
}

fl::WarehouseDesign design(int i) { return fl::standard_designs().at(i - 1); }

}  // namespace

TEST(Density, Values) {
  EXPECT_DOUBLE_EQ(fl::density({0.8, 0.8}), 1.6);
  EXPECT_NEAR(fl::density({0.0, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(fl::density({1.0, 1.0}), 1.2, 1e-15);
}

TEST(Density, SamplerMatchesMarginalMean) {
  const double mass = integrate([](double, double) { return 1.0; });
  EXPECT_NEAR(mass, 0.92, 1e-6);
  const double mean_x = integrate([](double x, double) { return x; }) / mass;
  const double mean_y = integrate([](double, double y) { return y; }) / mass;
  auto s = day_stream(4);
  double sx = 0.0, sy = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const auto p = fl::sample_order_location(s);
    ASSERT_TRUE(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0);
    sx += p.x;
    sy += p.y;
  }
  EXPECT_NEAR(sx / n, mean_x, 0.005);
  EXPECT_NEAR(sy / n, mean_y, 0.005);
}

TEST(Travel, ManhattanMinutes) {
  EXPECT_DOUBLE_EQ(fl::manhattan({0, 0}, {0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(fl::travel_minutes({0, 0}, {0.5, 0.5}), 60.0);
  EXPECT_DOUBLE_EQ(fl::travel_minutes({0.2, 0.9}, {0.2, 0.4}), 30.0);
}

TEST(Designs, AlternativesAreGenerated) {
  const auto d = fl::standard_designs();
  ASSERT_EQ(d.size(), 10u);
  for (int i = 1; i <= 10; ++i) {
    const auto& w = d[i - 1].warehouses;
    EXPECT_NEAR(w[0].x, 0.49 + 0.01 * i, 1e-12);
    EXPECT_NEAR(w[0].y, 0.59 + 0.01 * i, 1e-12);
    EXPECT_NEAR(w[1].x, 0.59 + 0.01 * i, 1e-12);
    EXPECT_NEAR(w[1].y, 0.79 + 0.01 * i, 1e-12);
    EXPECT_EQ(d[i - 1].trucks_per_warehouse, 10u);
  }
}

TEST(Designs, Validation) {
  fl::WarehouseDesign d = design(1);
  d.warehouses[1].y = 1.2;
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d = design(1);
  d.trucks_per_warehouse = 0;
  EXPECT_THROW(d.validate(), std::invalid_argument);
  EXPECT_THROW(fl::FacilityLocationSource({}, 30), std::invalid_argument);
  EXPECT_THROW(fl::FacilityLocationSource(fl::standard_designs(), 0), std::invalid_argument);
}

TEST(SimulateDay, OrderCountAverages180) {
  auto s = day_stream(8);
  double total = 0.0;
  const int days = 400;
  for (int d = 0; d < days; ++d) {
    std::vector<fl::Order> log;
    fl::simulate_day(design(1), s, &log);
    total += static_cast<double>(log.size());
    for (const auto& o : log) ASSERT_LT(o.arrival, 540.0);
  }
  EXPECT_NEAR(total / days, 180.0, 4.0 * std::sqrt(180.0 / days));
}

TEST(SimulateDay, EventLogInvariants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = day_stream(seed);
    const auto d = design(1 + static_cast<int>(seed % 10));
    std::vector<fl::Order> log;
    const double frac = fl::simulate_day(d, s, &log);
    ASSERT_FALSE(log.empty());

    std::size_t on_time = 0;
    std::map<std::pair<std::size_t, std::size_t>, double> truck_back;
    for (std::size_t n = 0; n < log.size(); ++n) {
      const auto& o = log[n];
      ASSERT_GE(o.dispatch, o.arrival);
      ASSERT_GT(o.delivery, o.dispatch);
      ASSERT_GT(o.truck_free, o.delivery);
      ASSERT_LT(o.truck, d.trucks_per_warehouse);
      if (n > 0) {
        ASSERT_GE(o.arrival, log[n - 1].arrival);
        ASSERT_GE(o.dispatch, log[n - 1].dispatch);  // FIFO
      }
      // one trip at a time per truck
      auto [it, fresh] = truck_back.emplace(std::make_pair(o.warehouse, o.truck), o.truck_free);
      if (!fresh) {
        ASSERT_GE(o.dispatch, it->second);
        it->second = o.truck_free;
      }

      // Idle trucks per warehouse at dispatch, replayed from earlier orders.
      std::size_t busy[2] = {0, 0}, busy_before[2] = {0, 0};
      for (std::size_t m = 0; m < n; ++m) {
        if (log[m].truck_free > o.dispatch) ++busy[log[m].warehouse];
        if (log[m].truck_free > o.dispatch - 1e-9) ++busy_before[log[m].warehouse];
      }
      const bool idle[2] = {busy[0] < d.trucks_per_warehouse, busy[1] < d.trucks_per_warehouse};
      ASSERT_TRUE(idle[o.warehouse]);
      const double dist[2] = {fl::manhattan(d.warehouses[0], o.location),
                              fl::manhattan(d.warehouses[1], o.location)};
      if (idle[0] && idle[1]) {
        const std::size_t nearest = dist[1] < dist[0] ? 1 : 0;
        EXPECT_EQ(o.warehouse, nearest);
      }
      if (o.dispatch > o.arrival) {
        // The order waited: every truck was out just before it left.
        EXPECT_EQ(busy_before[0] + busy_before[1], 2 * d.trucks_per_warehouse);
      }
      const double leg = fl::travel_minutes(d.warehouses[o.warehouse], o.location);
      EXPECT_NEAR(o.truck_free - o.delivery, leg, 1e-9);
      if (o.delivery - o.arrival <= 60.0) ++on_time;
    }
    EXPECT_DOUBLE_EQ(frac, static_cast<double>(on_time) / static_cast<double>(log.size()));
  }
}

TEST(SimulateDay, MoreTrucksNeverHurt) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto base = design(3);
    auto plenty = base;
    plenty.trucks_per_warehouse = 1000000;
    auto s1 = day_stream(seed), s2 = day_stream(seed);
    std::vector<fl::Order> a, b;
    const double limited = fl::simulate_day(base, s1, &a);
    const double unlimited = fl::simulate_day(plenty, s2, &b);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_GE(unlimited, limited);
    for (std::size_t n = 0; n < a.size(); ++n) {
      EXPECT_EQ(b[n].dispatch, b[n].arrival);
      EXPECT_LE(b[n].delivery, a[n].delivery + 1e-9);
    }
  }
}

TEST(SimulateReplication, ProportionInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const auto& d : fl::standard_designs()) {
      const double p = fl::simulate_replication(d, 3, seed);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
  }
  EXPECT_THROW(fl::simulate_replication(design(1), 0, 1), std::invalid_argument);
}

TEST(SimulateReplication, Reproducible) {
  EXPECT_EQ(fl::simulate_replication(design(2), 5, 77), fl::simulate_replication(design(2), 5, 77));
  EXPECT_NE(fl::simulate_replication(design(2), 5, 77), fl::simulate_replication(design(2), 5, 78));
}

TEST(Source, NegatesProportion) {
  const fl::FacilityLocationSource src(fl::standard_designs(), 4);
  ASSERT_EQ(src.size(), 10u);
  auto a = day_stream(5), b = day_stream(5);
  EXPECT_EQ(src.sample(6, a), -fl::simulate_replication(design(7), 4, b));
}

TEST(Source, IdenticalDesignsAreExchangeable) {
  const fl::FacilityLocationSource src({design(4), design(4)}, 30);
  double sum[2] = {0, 0}, sq[2] = {0, 0};
  const int reps = 500;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::uint32_t r = 0; r < reps; ++r) {
      auto s = rsel::CounterStream::for_sample(31, r, static_cast<std::uint32_t>(i), 0,
                                               rsel::StreamTag::kFacilityLocation);
      const double x = src.sample(i, s);
      sum[i] += x;
      sq[i] += x * x;
    }
  }
  double se2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double m = sum[i] / reps;
    se2 += (sq[i] / reps - m * m) / (reps - 1);
  }
  EXPECT_LE(std::abs(sum[0] - sum[1]) / reps, 3.0 * std::sqrt(se2));
}
