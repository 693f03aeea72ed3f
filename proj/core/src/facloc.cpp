#include "rsel/facloc.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace rsel::facloc {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

struct Draw {
  double arrival;
  Point location;
  double pickup;
  double deliver;
};

// Trucks of one warehouse. Trucks that have never left are tracked by count,
// which keeps very large fleets cheap.
class Fleet {
 public:
  explicit Fleet(std::size_t trucks) : unused_(trucks) {}

  double earliest_free() const {
    if (unused_ > 0) return 0.0;
    return busy_.top().first;
  }

  // Sends the earliest available truck out; returns its id.
  std::size_t take(double free_again) {
    std::size_t id;
    if (unused_ > 0) {
      id = next_id_++;
      --unused_;
    } else {
      id = busy_.top().second;
      busy_.pop();
    }
    busy_.emplace(free_again, id);
    return id;
  }

 private:
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> busy_;
  std::size_t unused_;
  std::size_t next_id_ = 0;
};

}  // namespace

void WarehouseDesign::validate() const {
  for (const Point& p : warehouses) {
    if (!in_unit(p.x) || !in_unit(p.y)) {
      throw std::invalid_argument("WarehouseDesign: coordinates must lie in [0, 1]");
    }
  }
  if (trucks_per_warehouse == 0) {
    throw std::invalid_argument("WarehouseDesign: need at least one truck");
  }
}

double manhattan(Point a, Point b) noexcept {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double travel_minutes(Point a, Point b) noexcept { return manhattan(a, b) * kMinutesPerUnit; }

double density(Point p) noexcept {
  return kDensityPeak - std::abs(p.x - 0.8) - std::abs(p.y - 0.8);
}

Point sample_order_location(CounterStream& stream) {
  for (;;) {
    const Point p{stream.uniform(), stream.uniform()};
    if (stream.uniform() * kDensityPeak <= density(p)) return p;
  }
}

double simulate_day(const WarehouseDesign& design, CounterStream& stream,
                    std::vector<Order>* log) {
  std::vector<Draw> draws;
  draws.reserve(256);
  double clock = 0.0;
  for (;;) {
    clock += stream.exponential(1.0 / kArrivalRate);
    if (clock >= kDayMinutes) break;
    Draw d;
    d.arrival = clock;
    d.location = sample_order_location(stream);
    d.pickup = stream.exponential(kPickupMean);
    d.deliver = stream.exponential(kDeliveryMean);
    draws.push_back(d);
  }
  if (draws.empty()) return 1.0;

  std::array<Fleet, 2> fleets{Fleet(design.trucks_per_warehouse),
                              Fleet(design.trucks_per_warehouse)};
  std::size_t on_time = 0;
  for (const Draw& d : draws) {
    // FIFO: each order leaves when a truck is first available at or after its
    // arrival, and orders are handled in arrival order.
    const double ready = std::min(fleets[0].earliest_free(), fleets[1].earliest_free());
    const double dispatch = std::max(d.arrival, ready);
    std::size_t chosen = 2;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w < 2; ++w) {
      if (fleets[w].earliest_free() > dispatch) continue;
      const double dist = manhattan(design.warehouses[w], d.location);
      if (dist < nearest) {
        nearest = dist;
        chosen = w;
      }
    }
    const double leg = nearest * kMinutesPerUnit;
    const double delivered = dispatch + d.pickup + leg + d.deliver;
    const double free_again = delivered + leg;
    const std::size_t truck = fleets[chosen].take(free_again);
    if (delivered - d.arrival <= kServiceTarget) ++on_time;
    if (log) {
      log->push_back(Order{d.arrival, d.location, dispatch, delivered, free_again, chosen, truck});
    }
  }
  return static_cast<double>(on_time) / static_cast<double>(draws.size());
}

double simulate_replication(const WarehouseDesign& design, std::size_t days,
                            CounterStream& stream) {
  design.validate();
  if (days == 0) throw std::invalid_argument("simulate_replication: days must be >= 1");
  double total = 0.0;
  for (std::size_t day = 0; day < days; ++day) total += simulate_day(design, stream);
  return total / static_cast<double>(days);
}

double simulate_replication(const WarehouseDesign& design, std::size_t days,
                            std::uint64_t seed) {
  CounterStream stream(derive_key(seed, 0), 0, 0, StreamTag::kFacilityLocation);
  return simulate_replication(design, days, stream);
}

std::vector<WarehouseDesign> standard_designs() {
  std::vector<WarehouseDesign> designs;
  for (int i = 1; i <= 10; ++i) {
    const double s = 0.01 * i;
    WarehouseDesign d;
    d.warehouses = {Point{0.49 + s, 0.59 + s}, Point{0.59 + s, 0.79 + s}};
    designs.push_back(d);
  }
  return designs;
}

FacilityLocationSource::FacilityLocationSource(std::vector<WarehouseDesign> designs,
                                               std::size_t days)
    : designs_(std::move(designs)), days_(days) {
  if (designs_.empty()) throw std::invalid_argument("FacilityLocationSource: no designs");
  if (days_ == 0) throw std::invalid_argument("FacilityLocationSource: days must be >= 1");
  for (const auto& d : designs_) d.validate();
}

double FacilityLocationSource::sample(std::size_t design, CounterStream& stream) const {
  return -simulate_replication(designs_.at(design), days_, stream);
}

}  // namespace rsel::facloc
