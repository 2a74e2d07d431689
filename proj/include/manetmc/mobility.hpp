#pragma once

// Node mobility models on a rectangular area with reflecting borders:
//   - random-waypoint: pick a waypoint, travel straight at a fixed speed,
//     pause on arrival, repeat.
//   - smooth-random: straight-line motion with bounded acceleration toward a
//     target speed that is redrawn at exponentially spaced epochs.
//   - group: followers copy their leader's velocity with bounded speed and
//     heading deviations; leaders do random-waypoint.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "manetmc/rng.hpp"

namespace manetmc {

enum class MobilityModel { Rwmm, Srmm, Rpgm };

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct MobilityParams {
  MobilityModel model = MobilityModel::Srmm;
  double v_max = 3.0;          // m/s
  double pause_time = 30.0;    // s, waypoint dwell
  double a_max = 1.5;          // m/s^2, speed-change bound
  double sdr = 0.3;            // group speed deviation ratio, (0,1)
  double adr = 0.3;            // group angle deviation ratio, (0,1)
  double phi_max = M_PI;       // rad, max group heading deviation
  double area_width = 1000.0;  // m
  double area_height = 1000.0; // m
  double delta_t = 15.0;       // s per simulation step
  // leader_of[i] == i marks a leader; only used by the group model.
  std::vector<int> leader_of;
};

struct Kinematics {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;    // m/s, current speed
  double phi = 0.0;  // rad, heading
  double a = 0.0;    // m/s^2, current acceleration (smooth-random only)
  std::optional<Vec2> waypoint;  // random-waypoint leg target
  double pause_remaining = 0.0;  // s left of the current dwell
  double target_speed = 0.0;     // smooth-random: speed the node accelerates to
  double retarget_in = 0.0;      // s until the next target-speed redraw
};

struct BoundedPose {
  double x, y, phi;
};

inline double normalize_angle(double phi) {
  phi = std::fmod(phi, 2.0 * M_PI);
  if (phi <= -M_PI) phi += 2.0 * M_PI;
  if (phi > M_PI) phi -= 2.0 * M_PI;
  return phi;
}

// Reflect a position back into the area, mirroring the heading component
// along each violated side.
inline BoundedPose apply_boundary(double x, double y, double phi,
                                  const MobilityParams& p) {
  const double w = p.area_width, h = p.area_height;
  for (int guard = 0; guard < 64 && (x < 0.0 || x > w); ++guard) {
    if (x < 0.0) x = -x;
    if (x > w) x = 2.0 * w - x;
    phi = M_PI - phi;
  }
  for (int guard = 0; guard < 64 && (y < 0.0 || y > h); ++guard) {
    if (y < 0.0) y = -y;
    if (y > h) y = 2.0 * h - y;
    phi = -phi;
  }
  // Pathological overshoots (v*dt many times the area) land on a clamp.
  x = std::clamp(x, 0.0, w);
  y = std::clamp(y, 0.0, h);
  return {x, y, normalize_angle(phi)};
}

namespace detail {

// Start a fresh random-waypoint leg: uniform waypoint, speed in
// (0.1*v_max, v_max], heading toward the waypoint.
inline void begin_leg(Kinematics& k, const MobilityParams& p, Rng& rng) {
  Vec2 wp{rng.uniform() * p.area_width, rng.uniform() * p.area_height};
  k.waypoint = wp;
  k.v = 0.1 * p.v_max + (1.0 - rng.uniform()) * 0.9 * p.v_max;
  k.phi = std::atan2(wp.y - k.y, wp.x - k.x);
}

}  // namespace detail

// One step of the random-waypoint model.
inline Kinematics step_rwmm(Kinematics k, const MobilityParams& p, Rng& rng) {
  if (k.pause_remaining > 0.0) {
    k.pause_remaining = std::max(0.0, k.pause_remaining - p.delta_t);
    if (k.pause_remaining == 0.0) detail::begin_leg(k, p, rng);
    return k;
  }
  if (!k.waypoint) detail::begin_leg(k, p, rng);
  const double dx = k.waypoint->x - k.x;
  const double dy = k.waypoint->y - k.y;
  const double dist = std::hypot(dx, dy);
  const double travel = k.v * p.delta_t;
  if (dist > 0.0 && travel < dist) {
    k.phi = std::atan2(dy, dx);
    k.x += p.delta_t * k.v * std::cos(k.phi);
    k.y += p.delta_t * k.v * std::sin(k.phi);
  } else {
    // Arrival within one step's travel: snap and dwell.
    k.x = k.waypoint->x;
    k.y = k.waypoint->y;
    k.waypoint.reset();
    if (p.pause_time > 0.0) {
      k.pause_remaining = p.pause_time;
    } else {
      detail::begin_leg(k, p, rng);
    }
  }
  return k;
}

// One step of the smooth-random model: the node accelerates toward its
// target speed (position integrating v*t + a*t^2/2 exactly) and cruises for
// the rest of the step once the target is reached.
inline Kinematics step_srmm(Kinematics k, const MobilityParams& p, Rng& rng) {
  const double dt = p.delta_t;
  double disp;
  if (k.a != 0.0) {
    const double target = std::clamp(k.target_speed, 0.0, p.v_max);
    const double t_star = std::max(0.0, (target - k.v) / k.a);
    if (t_star > dt) {
      disp = k.v * dt + 0.5 * k.a * dt * dt;
      k.v = std::clamp(k.v + k.a * dt, 0.0, p.v_max);
    } else {
      disp = k.v * t_star + 0.5 * k.a * t_star * t_star +
             target * (dt - t_star);
      k.v = target;
      k.a = 0.0;
    }
  } else {
    disp = k.v * dt;
  }
  k.x += disp * std::cos(k.phi);
  k.y += disp * std::sin(k.phi);
  k.retarget_in -= dt;
  if (k.retarget_in <= 0.0) {
    k.target_speed = rng.uniform() * p.v_max;
    const double mag = (1.0 - rng.uniform()) * p.a_max;  // (0, a_max]
    k.a = k.target_speed > k.v ? mag : (k.target_speed < k.v ? -mag : 0.0);
    k.retarget_in += rng.exponential(60.0);
  }
  const BoundedPose b = apply_boundary(k.x, k.y, k.phi, p);
  k.x = b.x;
  k.y = b.y;
  k.phi = b.phi;
  return k;
}

// One step of a group-model follower. The leader must already have been
// advanced this step (it moves by the random-waypoint rules).
inline Kinematics step_rpgm(Kinematics k, const Kinematics& leader,
                            const MobilityParams& p, Rng& rng) {
  const double u1 = rng.uniform_signed();
  const double u2 = rng.uniform_signed();
  const double leader_speed = leader.pause_remaining > 0.0 ? 0.0 : leader.v;
  k.v = std::max(0.0, leader_speed + u1 * p.sdr * p.v_max);
  k.phi = normalize_angle(leader.phi + u2 * p.adr * p.phi_max);
  k.x += p.delta_t * k.v * std::cos(k.phi);
  k.y += p.delta_t * k.v * std::sin(k.phi);
  const BoundedPose b = apply_boundary(k.x, k.y, k.phi, p);
  k.x = b.x;
  k.y = b.y;
  k.phi = b.phi;
  return k;
}

// Initial node state: uniform position, model-specific leg/speed setup.
inline Kinematics init_kinematics(const MobilityParams& p, bool is_leader,
                                  Rng& rng) {
  Kinematics k;
  k.x = rng.uniform() * p.area_width;
  k.y = rng.uniform() * p.area_height;
  switch (p.model) {
    case MobilityModel::Rwmm:
      detail::begin_leg(k, p, rng);
      break;
    case MobilityModel::Srmm:
      k.phi = rng.uniform(0.0, 2.0 * M_PI);
      k.v = rng.uniform() * p.v_max;
      k.target_speed = k.v;
      k.retarget_in = rng.exponential(60.0);
      break;
    case MobilityModel::Rpgm:
      if (is_leader) detail::begin_leg(k, p, rng);
      break;
  }
  return k;
}

// Advance a whole population one step. `kin` is indexed by node id; for the
// group model leaders are stepped before their followers.
inline void step_population(std::vector<Kinematics>& kin,
                            const MobilityParams& p,
                            std::vector<Rng>& node_rng) {
  const int n = static_cast<int>(kin.size());
  switch (p.model) {
    case MobilityModel::Rwmm:
      for (int i = 0; i < n; ++i) kin[i] = step_rwmm(kin[i], p, node_rng[i]);
      break;
    case MobilityModel::Srmm:
      for (int i = 0; i < n; ++i) kin[i] = step_srmm(kin[i], p, node_rng[i]);
      break;
    case MobilityModel::Rpgm: {
      if (static_cast<int>(p.leader_of.size()) != n)
        throw std::invalid_argument("group model requires a leader assignment per node");
      for (int i = 0; i < n; ++i)
        if (p.leader_of[i] == i) kin[i] = step_rwmm(kin[i], p, node_rng[i]);
      for (int i = 0; i < n; ++i)
        if (p.leader_of[i] != i)
          kin[i] = step_rpgm(kin[i], kin[p.leader_of[i]], p, node_rng[i]);
      break;
    }
  }
}

}  // namespace manetmc
