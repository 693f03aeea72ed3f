#pragma once

// Two-warehouse same-day delivery simulator. Coordinates are in units of
// 30 km on the unit square; trucks travel Manhattan distances at 30 km/h, so
// one unit of distance takes 60 minutes. Times are minutes after opening.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsel/engine.hpp"
#include "rsel/rng.hpp"

namespace rsel::facloc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kDayMinutes = 540.0;
inline constexpr double kArrivalRate = 1.0 / 3.0;  // orders per minute
inline constexpr double kPickupMean = 5.0;
inline constexpr double kDeliveryMean = 10.0;
inline constexpr double kMinutesPerUnit = 60.0;
inline constexpr double kServiceTarget = 60.0;
inline constexpr double kDensityPeak = 1.6;

struct WarehouseDesign {
  std::array<Point, 2> warehouses{};
  std::size_t trucks_per_warehouse = 10;

  // Throws std::invalid_argument if a coordinate leaves [0, 1] or there are
  // no trucks.
  void validate() const;
};

struct Order {
  double arrival = 0.0;
  Point location;
  double dispatch = 0.0;
  double delivery = 0.0;
  double truck_free = 0.0;  // back at the warehouse
  std::size_t warehouse = 0;
  std::size_t truck = 0;
};

double manhattan(Point a, Point b) noexcept;
double travel_minutes(Point a, Point b) noexcept;

// Unnormalized order density 1.6 - |x - 0.8| - |y - 0.8|.
double density(Point p) noexcept;

// Rejection sampling from density() under a uniform proposal.
Point sample_order_location(CounterStream& stream);

// One day of operation. Every random draw is made before dispatching, so the
// day's orders do not depend on the fleet size. Returns the fraction of the
// day's orders delivered within the service target (1 if none arrived).
double simulate_day(const WarehouseDesign& design, CounterStream& stream,
                    std::vector<Order>* log = nullptr);

// Mean daily on-time fraction over `days` consecutive days from one stream.
double simulate_replication(const WarehouseDesign& design, std::size_t days,
                            CounterStream& stream);
double simulate_replication(const WarehouseDesign& design, std::size_t days,
                            std::uint64_t seed);

// The ten candidate layouts: warehouses at (0.49+0.01i, 0.59+0.01i) and
// (0.59+0.01i, 0.79+0.01i), i = 1..10, ten trucks each.
std::vector<WarehouseDesign> standard_designs();

// Samples are negated on-time proportions so that the best layout has the
// smallest mean.
class FacilityLocationSource final : public SamplingSource {
 public:
  FacilityLocationSource(std::vector<WarehouseDesign> designs, std::size_t days = 30);

  std::size_t size() const noexcept override { return designs_.size(); }
  double sample(std::size_t design, CounterStream& stream) const override;
  const std::vector<WarehouseDesign>& designs() const noexcept { return designs_; }

 private:
  std::vector<WarehouseDesign> designs_;
  std::size_t days_;
};

}  // namespace rsel::facloc
