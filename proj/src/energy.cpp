#include "wsn/energy.hpp"

#include <cmath>
#include <limits>

#include "wsn/errors.hpp"

namespace wsn {

bool EnergyState::debit(double j) {
  if (!alive || j <= 0.0) return false;
  consumed_j += j;
  if (consumed_j >= initial_j) {
    consumed_j = initial_j;  // clamp: no overdraft
    alive = false;
    return true;
  }
  return false;
}

double transmit_power_per_bit(const EnergyParams& p, double d_m) {
  if (d_m < 0.0) throw SimError("transmit distance must be non-negative");
  return p.a1 + p.a2 * std::pow(d_m, p.n);
}

double receive_power_per_bit(const EnergyParams& p) { return p.B; }

double per_second_consumption(const EnergyParams& p, const TrafficRates& r,
                              double d_m) {
  return r.r_ri * receive_power_per_bit(p) +
         (r.r_ri + r.r_gi) * transmit_power_per_bit(p, d_m);
}

double boot_energy(const EnergyParams& p, double t_s) {
  if (t_s < 0.0) throw SimError("boot time must be non-negative");
  return p.R * p.I * p.I * t_s;
}

double lifetime_seconds(double initial_j, double per_second_j) {
  if (initial_j <= 0.0) return 0.0;
  if (per_second_j <= 0.0) return std::numeric_limits<double>::infinity();
  return initial_j / per_second_j;
}

double residual_after_ids(double e_i, double e_p) {
  if (e_p < 0.0) throw SimError("install cost must be non-negative");
  if (e_p > e_i) throw SimError("insufficient energy to install IDS");
  return e_i - e_p;
}

}  // namespace wsn
