#include <doctest.h>

#include <cmath>
#include <limits>

#include "wsn/energy.hpp"
#include "wsn/errors.hpp"
#include "wsn/rng.hpp"

using namespace wsn;

TEST_CASE("transmit cost per bit matches the closed form") {
  EnergyParams p;
  CHECK(transmit_power_per_bit(p, 0.0) == doctest::Approx(p.a1));
  // hand-computed: 50e-9 + 100e-12 * 54^2 = 50e-9 + 2.916e-7 = 3.416e-7
  CHECK(transmit_power_per_bit(p, 54.0) == doctest::Approx(3.416e-7).epsilon(1e-12));
  // hand-computed: 50e-9 + 100e-12 * 79^2 = 50e-9 + 6.241e-7 = 6.741e-7
  CHECK(transmit_power_per_bit(p, 79.0) == doctest::Approx(6.741e-7).epsilon(1e-12));
  CHECK(receive_power_per_bit(p) == doctest::Approx(50e-9));
}

TEST_CASE("steady-state burn reproduces the published operating points") {
  EnergyParams p;
  TrafficRates r;  // 512 bit/s in, 512 bit/s generated

  // Operating point 1: relay 54 m from the sink.
  // By hand: 512*50e-9 + 1024*(50e-9 + 100e-12*54^2)
  //        = 2.56e-5 + 1024*3.416e-7 = 3.753984e-4 J/s
  const double burn54 = per_second_consumption(p, r, 54.0);
  CHECK(burn54 == doctest::Approx(3.753984e-4).epsilon(1e-12));
  // published figure is 0.000375 at 1% print precision
  CHECK(std::abs(burn54 - 0.000375) / 0.000375 < 0.01);

  // Its battery: 58.53087 J -> published lifetime 156082.3 s (0.2%)
  const double life54 = lifetime_seconds(58.53087, burn54);
  CHECK(life54 == doctest::Approx(58.53087 / 3.753984e-4).epsilon(1e-12));
  CHECK(std::abs(life54 - 156082.3) / 156082.3 < 0.002);

  // Operating point 2: relay 79 m from the sink.
  // By hand: 2.56e-5 + 1024*6.741e-7 = 7.158784e-4 J/s
  const double burn79 = per_second_consumption(p, r, 79.0);
  CHECK(burn79 == doctest::Approx(7.158784e-4).epsilon(1e-12));
  CHECK(std::abs(burn79 - 0.000716) / 0.000716 < 0.01);

  // A nearly drained battery of 0.070435 J -> about 98.37 s
  const double life79 = lifetime_seconds(0.070435, burn79);
  CHECK(std::abs(life79 - 98.37274) / 98.37274 < 0.002);
}

TEST_CASE("boot-interval charge follows R * I^2 * t") {
  EnergyParams p;  // R = 1 ohm, I = 8 mA
  CHECK(boot_energy(p, 0.0) == doctest::Approx(0.0));
  // 1 * (8e-3)^2 * 3e5 = 6.4e-5 * 3e5 = 19.2 J
  CHECK(boot_energy(p, 3.0e5) == doctest::Approx(19.2).epsilon(1e-12));
  CHECK(boot_energy(p, 1.0e6) == doctest::Approx(64.0).epsilon(1e-12));
}

TEST_CASE("lifetime edge cases") {
  CHECK(lifetime_seconds(0.0, 1.0) == doctest::Approx(0.0));
  CHECK(lifetime_seconds(0.0, 0.0) == doctest::Approx(0.0));
  CHECK(std::isinf(lifetime_seconds(5.0, 0.0)));
  CHECK(lifetime_seconds(5.0, 0.0) > 0);
}

TEST_CASE("residual after install") {
  CHECK(residual_after_ids(10.0, 1.0) == doctest::Approx(9.0));
  CHECK(residual_after_ids(1.0, 1.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)residual_after_ids(0.5, 1.0), SimError);
}

TEST_CASE("energy state debits clamp and report the moment of death") {
  EnergyState s;
  s.initial_j = 1.0;
  CHECK_FALSE(s.debit(0.4));
  CHECK(s.alive);
  CHECK(s.remaining_j() == doctest::Approx(0.6));
  CHECK(s.debit(2.0));  // depleting debit reports death exactly once
  CHECK_FALSE(s.alive);
  CHECK(s.consumed_j == doctest::Approx(1.0));  // clamped, never over-spends
  CHECK(s.remaining_j() == doctest::Approx(0.0));
  CHECK_FALSE(s.debit(1.0));  // already dead: no second death report
  CHECK(s.consumed_j == doctest::Approx(1.0));
}

TEST_CASE("1000 random operating points satisfy the model identities") {
  EnergyParams p;
  auto s = rng::Stream::of(4242, 11);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double d = s.uniform_range(4 * i, 0.0, 250.0);
    const double boot_t = s.uniform_range(4 * i + 1, 1.0e3, 1.0e6);
    const double e_p = s.uniform_range(4 * i + 2, 0.0, 1.0);
    TrafficRates r;
    r.r_ri = s.uniform_range(4 * i + 3, 1.0, 4096.0);
    r.r_gi = 512.0;

    // lifetime * burn returns the charge
    const double e_i = boot_energy(p, boot_t);
    const double burn = per_second_consumption(p, r, d);
    const double life = lifetime_seconds(e_i, burn);
    CHECK(life * burn == doctest::Approx(e_i).epsilon(1e-9));

    // burn decomposes into receive + transmit parts
    const double recomposed =
        r.r_ri * receive_power_per_bit(p) +
        (r.r_ri + r.r_gi) * transmit_power_per_bit(p, d);
    CHECK(burn == doctest::Approx(recomposed).epsilon(1e-12));

    // the install residual plus the install cost returns the charge
    if (e_i >= e_p) {
      CHECK(residual_after_ids(e_i, e_p) + e_p == doctest::Approx(e_i).epsilon(1e-9));
    }

    // zero-distance transmit cost collapses to the base term
    CHECK(transmit_power_per_bit(p, 0.0) == doctest::Approx(p.a1));

    // transmit cost grows strictly with distance
    const double d2 = d + s.uniform_range(4 * i + 2000000, 0.001, 50.0);
    CHECK(transmit_power_per_bit(p, d2) > transmit_power_per_bit(p, d));
  }
}
