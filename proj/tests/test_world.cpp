#include <catch2/catch_amalgamated.hpp>

#include "vanetsim/rng.hpp"
#include "vanetsim/world.hpp"

using namespace vanetsim;

namespace {

RoadModel square_km() {
  RoadModel road;
  road.area_width = 1000.0;
  road.area_height = 1000.0;
  road.rsru_positions = {Position{500.0, 500.0}};
  return road;
}

}  // namespace

TEST_CASE("straight-line step away from boundaries") {
  VehicleState v;
  v.pos = {500.0, 500.0};
  v.speed = 10.0;
  v.heading = {1.0, 0.0};
  const auto moved = advance_vehicle(v, 1.0, square_km());
  REQUIRE(moved.pos.x == Catch::Approx(510.0));
  REQUIRE(moved.pos.y == Catch::Approx(500.0));
  REQUIRE(moved.heading.x == 1.0);
}

TEST_CASE("boundary reflection mirrors position and negates heading") {
  // Raw step lands at x=1009; reflected at the 1000 m wall: 2*1000-1009=991.
  VehicleState v;
  v.pos = {999.0, 500.0};
  v.speed = 10.0;
  v.heading = {1.0, 0.0};
  const auto moved = advance_vehicle(v, 1.0, square_km());
  REQUIRE(moved.pos.x == Catch::Approx(991.0));
  REQUIRE(moved.pos.y == Catch::Approx(500.0));
  REQUIRE(moved.heading.x == -1.0);
}

TEST_CASE("two half steps equal one full step away from boundaries") {
  VehicleState v;
  v.pos = {300.0, 400.0};
  v.speed = 20.0;
  v.heading = {0.6, 0.8};
  const auto road = square_km();
  const auto whole = advance_vehicle(v, 1.0, road);
  const auto halves = advance_vehicle(advance_vehicle(v, 0.5, road), 0.5, road);
  REQUIRE(halves.pos.x == Catch::Approx(whole.pos.x));
  REQUIRE(halves.pos.y == Catch::Approx(whole.pos.y));
}

TEST_CASE("positions stay inside the area under long random walks") {
  RngStreams rng(5);
  const auto road = square_km();
  for (int trial = 0; trial < 50; ++trial) {
    VehicleState v;
    v.pos = place_uniform(rng, RngStream::Mobility, road);
    v.heading = random_heading(rng, RngStream::Mobility);
    v.speed = rng.uniform(RngStream::Mobility, 0.0, 400.0);  // allow huge steps
    for (int step = 0; step < 200; ++step) {
      v = advance_vehicle(v, 0.7, road);
      REQUIRE(v.pos.x >= 0.0);
      REQUIRE(v.pos.x <= road.area_width);
      REQUIRE(v.pos.y >= 0.0);
      REQUIRE(v.pos.y <= road.area_height);
    }
  }
}

TEST_CASE("range gate is inclusive at the boundary") {
  REQUIRE(in_range({0, 0}, {250, 0}, 250.0));
  REQUIRE_FALSE(in_range({0, 0}, {250.01, 0}, 250.0));
}

TEST_CASE("scaled 3-4-5 triangle lands exactly on the range boundary") {
  // 150^2 + 200^2 = 250^2 holds exactly in floating point.
  REQUIRE(in_range({0, 0}, {150, 200}, 250.0));
}

TEST_CASE("random headings are unit vectors") {
  RngStreams rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto h = random_heading(rng, RngStream::Mobility);
    REQUIRE(h.x * h.x + h.y * h.y == Catch::Approx(1.0));
  }
}

TEST_CASE("legitimate speed draws stay strictly inside the envelope") {
  RngStreams rng(7);
  DetectionParams d;
  for (int i = 0; i < 10000; ++i) {
    const double s = draw_legit_speed(rng, RngStream::Mobility, d);
    REQUIRE(s > d.v_min);
    REQUIRE(s < d.v_max);
  }
}

TEST_CASE("hop delay equals the base when jitter is zero") {
  RngStreams rng(8);
  ScenarioConfig cfg;
  cfg.hop_delay_base = 0.002;
  cfg.hop_delay_jitter = 0.0;
  REQUIRE(hop_delay(rng, RngStream::Channel, cfg) == 0.002);
}

TEST_CASE("hop delay jitter is additive and bounded") {
  RngStreams rng(9);
  ScenarioConfig cfg;
  for (int i = 0; i < 1000; ++i) {
    const double d = hop_delay(rng, RngStream::Channel, cfg);
    REQUIRE(d >= cfg.hop_delay_base);
    REQUIRE(d < cfg.hop_delay_base + cfg.hop_delay_jitter);
  }
}

TEST_CASE("empty buffer accepts a packet") {
  RsruBuffer buf(150);
  REQUIRE(buf.push(Packet{}));
  REQUIRE(buf.size() == 1);
}

TEST_CASE("buffer holds exactly its capacity") {
  RsruBuffer buf(150);
  Packet pkt;
  for (int i = 0; i < 150; ++i) {
    pkt.seq = static_cast<std::uint64_t>(i);
    REQUIRE(buf.push(pkt));
  }
  REQUIRE(buf.size() == 150);
  pkt.seq = 150;
  REQUIRE_FALSE(buf.push(pkt));  // the 151st arrival is a drop
  REQUIRE(buf.size() == 150);
  REQUIRE(buf.front().seq == 0);  // FIFO order intact
}

TEST_CASE("unit-capacity buffer alternates accept and drop") {
  RsruBuffer buf(1);
  REQUIRE(buf.push(Packet{}));
  REQUIRE_FALSE(buf.push(Packet{}));
  buf.pop();
  REQUIRE(buf.push(Packet{}));
}

TEST_CASE("buffer length never exceeds capacity under random churn") {
  RngStreams rng(10);
  RsruBuffer buf(7);
  for (int i = 0; i < 5000; ++i) {
    if (rng.uniform(RngStream::Mobility, 0.0, 1.0) < 0.6) {
      buf.push(Packet{});
    } else if (!buf.empty()) {
      buf.pop();
    }
    REQUIRE(buf.size() <= 7);
  }
}

TEST_CASE("road model places one RSRU at the area center") {
  ScenarioConfig cfg;
  const auto road = RoadModel::from_config(cfg);
  REQUIRE(road.rsru_positions.size() == 1);
  REQUIRE(road.rsru_positions[0].x == 500.0);
  REQUIRE(road.rsru_positions[0].y == 500.0);
  REQUIRE(in_range(road.rsru_positions[0],
                   Position{cfg.area_width / 2, cfg.area_height / 2}, 0.0));
}
