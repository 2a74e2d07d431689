#pragma once

// Radio propagation, link capacity and the failure processes:
//   - two-ray ground-reflection received power (far-field form),
//   - Shannon capacity against a flat noise floor,
//   - per-step transient link failure with delayed revival,
//   - Weibull node lifetimes and the agents' software survival weight.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "manetmc/rng.hpp"

namespace manetmc {

struct RadioParams {
  double p_t_watts = 1.0;   // transmit power
  double g_t = 1.0;         // transmit antenna gain
  double g_r = 1.0;         // receive antenna gain
  double h_t = 1.5;         // m, transmit antenna height
  double h_r = 1.5;         // m, receive antenna height
  double noise_watts = 1e-12;
  double bandwidth_hz = 1e6;
  double capacity_threshold_bps = 8e6;  // a link exists iff capacity >= this
};

struct FailureParams {
  double lfp = 0.2;                   // per-step probability an up link fails
  double link_revival_rate = 0.05;    // per s, failed-link repair intensity
  double node_weibull_shape = 1.5;
  double node_weibull_scale = 450000.0;  // s
  double agent_weibull_shape = 1.0;
  double agent_weibull_scale = 900000.0;  // s
  double p_t_migration = 0.9;         // per-hop migration success probability
};

// Two-ray ground-reflection received power at distance d (far field):
//   p_r = p_t * g_t * g_r * (h_t * h_r)^2 / d^4.
inline double received_power(double d, const RadioParams& rp) {
  if (d <= 0.0) throw std::invalid_argument("received_power: coincident nodes");
  const double hh = rp.h_t * rp.h_r;
  const double d2 = d * d;
  return rp.p_t_watts * rp.g_t * rp.g_r * hh * hh / (d2 * d2);
}

// Shannon capacity in bit/s; zero received power means zero capacity.
inline double link_capacity(double p_r, const RadioParams& rp) {
  if (p_r < 0.0) throw std::invalid_argument("link_capacity: negative power");
  return rp.bandwidth_hz * std::log2(1.0 + p_r / rp.noise_watts);
}

// Largest distance whose link capacity still meets the threshold; useful for
// reasoning about the connectivity geometry of a parameter set.
inline double link_range(const RadioParams& rp) {
  const double snr = std::exp2(rp.capacity_threshold_bps / rp.bandwidth_hz) - 1.0;
  if (snr <= 0.0) return std::numeric_limits<double>::infinity();
  const double pr_min = snr * rp.noise_watts;
  const double hh = rp.h_t * rp.h_r;
  return std::sqrt(std::sqrt(rp.p_t_watts * rp.g_t * rp.g_r * hh * hh / pr_min));
}

// Transient state of a link between two in-range nodes. `Fresh` means no
// memory: either the pair never was in range or it left range since.
enum class LinkMemory : unsigned char { Fresh, Up, Down };

struct LinkStatus {
  bool usable;        // does the link carry traffic this step
  LinkMemory memory;  // state carried into the next step
};

// Evaluate one link for one step. An up (or fresh) link fails this step with
// probability lfp. A down link is repaired with probability
// 1 - exp(-link_revival_rate * delta_t) and carries traffic again from the
// following step. Capacity below the threshold means no link and no memory.
// Consumes exactly one draw whenever the pair is in range, so paired sweeps
// stay aligned.
inline LinkStatus link_up(double d, const RadioParams& rp,
                          const FailureParams& fp, double delta_t,
                          LinkMemory prev, Rng& rng) {
  const double cap =
      d == 0.0 ? std::numeric_limits<double>::infinity()
               : link_capacity(received_power(d, rp), rp);
  if (cap < rp.capacity_threshold_bps) return {false, LinkMemory::Fresh};
  const double u = rng.uniform();
  if (prev == LinkMemory::Down) {
    const bool revived = u < -std::expm1(-fp.link_revival_rate * delta_t);
    return {false, revived ? LinkMemory::Up : LinkMemory::Down};
  }
  return u < fp.lfp ? LinkStatus{false, LinkMemory::Down}
                    : LinkStatus{true, LinkMemory::Up};
}

// Weibull lifetime draw for a node; the node is operational while the
// simulation clock is below its lifetime.
inline double sample_node_lifetime(const FailureParams& fp, Rng& rng) {
  return rng.weibull(fp.node_weibull_shape, fp.node_weibull_scale);
}

// Whether a freshly drawn node survives past time t.
inline bool sample_node_operational(double t, const FailureParams& fp, Rng& rng) {
  return sample_node_lifetime(fp, rng) > t;
}

// Deterministic software-survival weight of an agent over an episode that
// ran for duration_s seconds: exp(-(T/scale)^shape).
inline double agent_reliability(double duration_s, const FailureParams& fp) {
  if (duration_s < 0.0) throw std::invalid_argument("agent_reliability: negative duration");
  return std::exp(-std::pow(duration_s / fp.agent_weibull_scale,
                            fp.agent_weibull_shape));
}

}  // namespace manetmc
