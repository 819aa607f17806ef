#include <doctest.h>

#include <cmath>

#include "wsn/netmodel.hpp"
#include "wsn/rng.hpp"

using namespace wsn;

namespace {

// Independent oracle: closed-form inversion of the log-distance model.
// level(d) = -(ref + 10*exp*log10(d))  =>  d(level) = 10^((-level - ref)/(10*exp))
double radius_for_threshold(const RadioModel& m, double threshold_db) {
  return std::pow(10.0, (-threshold_db - m.ref_loss_db) / (10.0 * m.exponent));
}

}  // namespace

TEST_CASE("euclidean distance basics") {
  CHECK(euclidean_distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(euclidean_distance({-1, -1}, {-1, -1}) == doctest::Approx(0.0));
  CHECK(euclidean_distance({2, 7}, {9, 7}) == doctest::Approx(7.0));
  // symmetry
  Position a{12.5, 3.25}, b{-4.0, 88.0};
  CHECK(euclidean_distance(a, b) == doctest::Approx(euclidean_distance(b, a)));
}

TEST_CASE("received level at reference distances") {
  RadioModel m;  // ref 40 dB, exponent 2
  CHECK(received_level_db(m, 1.0) == doctest::Approx(-40.0));
  CHECK(received_level_db(m, 10.0) == doctest::Approx(-60.0));
  CHECK(received_level_db(m, 100.0) == doctest::Approx(-80.0));
  // each decade of distance costs 10*exponent dB
  for (double d : {2.0, 5.0, 17.0, 63.0}) {
    CHECK(received_level_db(m, 10.0 * d) ==
          doctest::Approx(received_level_db(m, d) - 20.0));
  }
}

TEST_CASE("co-located transmitter clamps to the 0 dB ceiling") {
  RadioModel m;
  CHECK(received_level_db(m, 0.0) == doctest::Approx(0.0));
  CHECK(received_level_db(m, -3.0) == doctest::Approx(0.0));
}

TEST_CASE("eavesdrop boundary is inclusive") {
  RadioModel m;
  m.sense_threshold_db = -60.0;  // exactly 10 m with the default loss model
  Position tx{0, 0};
  CHECK(can_eavesdrop(m, Position{10.0, 0.0}, tx));        // exactly at radius
  CHECK(can_eavesdrop(m, Position{9.999, 0.0}, tx));       // inside
  CHECK_FALSE(can_eavesdrop(m, Position{10.001, 0.0}, tx)); // outside
  CHECK(can_eavesdrop(m, tx, tx));                          // co-located
}

TEST_CASE("sensing radii for the three studied thresholds") {
  RadioModel m;
  struct Row {
    double threshold_db;
    double radius_m;
  };
  // radius oracle computed by inverting the model by hand:
  // r = 10^((-th - 40) / 20)
  const Row rows[] = {
      {-60.0, 10.0},
      {-75.0, 56.234132519},
      {-78.0, 79.432823472},
  };
  for (const auto& row : rows) {
    m.sense_threshold_db = row.threshold_db;
    CHECK(radius_for_threshold(m, row.threshold_db) ==
          doctest::Approx(row.radius_m).epsilon(1e-9));
    // level at the analytic radius sits exactly on the threshold
    CHECK(received_level_db(m, row.radius_m) ==
          doctest::Approx(row.threshold_db).epsilon(1e-9));
    // an inclusive boundary means the analytic radius itself is audible
    CHECK(can_eavesdrop(m, Position{row.radius_m, 0.0}, Position{0, 0}));
    CHECK_FALSE(
        can_eavesdrop(m, Position{row.radius_m * 1.001, 0.0}, Position{0, 0}));
  }
}

TEST_CASE("widening the threshold widens the audible set") {
  RadioModel narrow, wide;
  narrow.sense_threshold_db = -60.0;
  wide.sense_threshold_db = -78.0;
  auto s = rng::Stream::of(99, 1);
  Position tx{50, 50};
  int audible_narrow = 0, audible_wide = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Position p{s.uniform_range(2 * i, 0.0, 100.0),
               s.uniform_range(2 * i + 1, 0.0, 100.0)};
    bool n = can_eavesdrop(narrow, p, tx);
    bool w = can_eavesdrop(wide, p, tx);
    if (n) CHECK(w);  // anything the tight radio hears, the wide one hears
    audible_narrow += n;
    audible_wide += w;
  }
  CHECK(audible_wide > audible_narrow);
}

TEST_CASE("received level decreases strictly with distance") {
  RadioModel m;
  auto s = rng::Stream::of(7, 2);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    double d1 = s.uniform_range(2 * i, 0.01, 500.0);
    double d2 = d1 + s.uniform_range(2 * i + 1, 0.01, 50.0);
    CHECK(received_level_db(m, d2) < received_level_db(m, d1));
  }
}
