#pragma once

#include <cstdint>

// Node energy model.
//
// Transmission of one bit over distance d costs a1 + a2 * d^n joules, and
// reception costs a flat B joules per bit.  A node that receives r_ri bit/s
// and originates r_gi bit/s therefore burns
//
//     e_it = r_ri * B + (r_ri + r_gi) * (a1 + a2 * d^n)    [J/s]
//
// Initial charge comes from a boot-time measurement e_i = R * I^2 * t, and
// the projected lifetime of a node is simply e_i / e_it.

namespace wsn {

struct EnergyParams {
  double a1 = 50e-9;    // J/bit, distance-independent transmit cost
  double a2 = 100e-12;  // J/bit/m^n, amplifier cost
  double n = 2.0;       // path-loss exponent for the amplifier term
  double B = 50e-9;     // J/bit, receive cost
  double R = 1.0;       // ohm, boot measurement resistance
  double I = 8e-3;      // A, boot measurement current
};

struct TrafficRates {
  double r_ri = 512.0;  // bit/s received (relay inbound)
  double r_gi = 512.0;  // bit/s generated by the node itself
};

// Per-node battery bookkeeping.  All spends are clamped: a node can never
// consume more than it started with, and it dies exactly when the remaining
// charge reaches zero.
struct EnergyState {
  double initial_j = 0.0;
  double consumed_j = 0.0;
  bool alive = true;

  double remaining_j() const { return initial_j - consumed_j; }

  // Spends `j` joules (clamped to the remaining charge).  Returns true if
  // this debit depleted the node, i.e. the node died just now.
  bool debit(double j);
};

// Transmit cost per bit over distance d_m: a1 + a2 * d^n.
double transmit_power_per_bit(const EnergyParams& p, double d_m);

// Receive cost per bit (flat).
double receive_power_per_bit(const EnergyParams& p);

// Steady-state consumption in J/s for a node at distance d_m from its sink,
// receiving r.r_ri bit/s and sending r.r_ri + r.r_gi bit/s.
double per_second_consumption(const EnergyParams& p, const TrafficRates& r,
                              double d_m);

// Initial charge measured over a boot interval of t_s seconds: R * I^2 * t.
double boot_energy(const EnergyParams& p, double t_s);

// Projected lifetime in seconds for a charge of initial_j at a burn rate of
// per_second_j.  Zero charge lives 0 s; zero burn lives forever (+inf).
double lifetime_seconds(double initial_j, double per_second_j);

// Charge left after installing the intrusion-detection program, which costs
// e_p joules.  Throws SimError if the node cannot afford the install.
double residual_after_ids(double e_i, double e_p);

}  // namespace wsn
