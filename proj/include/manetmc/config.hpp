#pragma once

// Scenario configuration: the full parameter set for a simulation, a flat
// "key = value" text format with '#' comments and dotted key paths, and the
// matching serializer. Unknown keys and out-of-range values are reported
// with their line number.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "manetmc/mobility.hpp"
#include "manetmc/radio.hpp"

namespace manetmc {

enum class ReliabilityMode { Fractional, AllOrNothing };
enum class KilledAgentPolicy { Frozen, Excluded };

struct ScenarioConfig {
  int n_nodes = 25;
  int m_agents = 25;
  int q_runs = 200;
  int sp_total = 2;       // providers to discover
  int max_fr = 20;        // distinct agents a node tolerates
  double duration_min = 750.0;
  int observer_node = -1; // -1: highest node id
  ReliabilityMode reliability_mode = ReliabilityMode::Fractional;
  KilledAgentPolicy killed_agents = KilledAgentPolicy::Frozen;
  std::uint64_t seed = 1;
  int rpgm_group_size = 5;
  MobilityParams mobility;
  RadioParams radio;
  FailureParams failure;

  double duration_s() const { return duration_min * 60.0; }
  int step_budget() const {
    return static_cast<int>(std::llround(duration_s() / mobility.delta_t));
  }
  int observer() const { return observer_node < 0 ? n_nodes - 1 : observer_node; }
};

struct ConfigError : std::runtime_error {
  int line;  // 0 when not tied to a specific line
  ConfigError(int line_no, const std::string& msg)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) +
                                             ": " + msg
                                       : msg),
        line(line_no) {}
};

namespace detail {

inline double parse_double(const std::string& v, const std::string& key, int line) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError(line, key + ": expected a number, got '" + v + "'");
  return x;
}

inline long long parse_int(const std::string& v, const std::string& key, int line) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError(line, key + ": expected an integer, got '" + v + "'");
  return x;
}

inline void check(bool ok, int line, const std::string& msg) {
  if (!ok) throw ConfigError(line, msg);
}

}  // namespace detail

inline std::string to_string(MobilityModel m) {
  switch (m) {
    case MobilityModel::Rwmm: return "RWMM";
    case MobilityModel::Srmm: return "SRMM";
    case MobilityModel::Rpgm: return "RPGM";
  }
  return "?";
}

inline std::string to_string(ReliabilityMode m) {
  return m == ReliabilityMode::Fractional ? "fractional" : "all_or_nothing";
}

inline std::string to_string(KilledAgentPolicy p) {
  return p == KilledAgentPolicy::Frozen ? "frozen" : "excluded";
}

// Apply one "key = value" assignment. `line` is used for error reporting
// only; pass 0 for programmatic overrides (e.g. sweep values).
inline void set_config_key(ScenarioConfig& c, const std::string& key,
                           const std::string& value, int line = 0) {
  using detail::parse_double;
  using detail::parse_int;
  auto d = [&] { return parse_double(value, key, line); };
  auto i = [&] { return static_cast<int>(parse_int(value, key, line)); };

  if (key == "n_nodes") c.n_nodes = i();
  else if (key == "m_agents") c.m_agents = i();
  else if (key == "q_runs") c.q_runs = i();
  else if (key == "sp_total") c.sp_total = i();
  else if (key == "max_fr") c.max_fr = i();
  else if (key == "lfp" || key == "failure.lfp") c.failure.lfp = d();
  else if (key == "duration_min") c.duration_min = d();
  else if (key == "observer_node") c.observer_node = i();
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_int(value, key, line));
  else if (key == "rpgm_group_size") c.rpgm_group_size = i();
  else if (key == "reliability_mode") {
    if (value == "fractional") c.reliability_mode = ReliabilityMode::Fractional;
    else if (value == "all_or_nothing") c.reliability_mode = ReliabilityMode::AllOrNothing;
    else throw ConfigError(line, "reliability_mode: expected fractional|all_or_nothing");
  } else if (key == "killed_agents") {
    if (value == "frozen") c.killed_agents = KilledAgentPolicy::Frozen;
    else if (value == "excluded") c.killed_agents = KilledAgentPolicy::Excluded;
    else throw ConfigError(line, "killed_agents: expected frozen|excluded");
  } else if (key == "mobility.model") {
    if (value == "RWMM") c.mobility.model = MobilityModel::Rwmm;
    else if (value == "SRMM") c.mobility.model = MobilityModel::Srmm;
    else if (value == "RPGM") c.mobility.model = MobilityModel::Rpgm;
    else throw ConfigError(line, "mobility.model: expected RWMM|SRMM|RPGM");
  }
  else if (key == "mobility.v_max") c.mobility.v_max = d();
  else if (key == "mobility.pause_time") c.mobility.pause_time = d();
  else if (key == "mobility.a_max") c.mobility.a_max = d();
  else if (key == "mobility.sdr") c.mobility.sdr = d();
  else if (key == "mobility.adr") c.mobility.adr = d();
  else if (key == "mobility.phi_max") c.mobility.phi_max = d();
  else if (key == "mobility.area_width") c.mobility.area_width = d();
  else if (key == "mobility.area_height") c.mobility.area_height = d();
  else if (key == "mobility.delta_t") c.mobility.delta_t = d();
  else if (key == "radio.p_t_watts") c.radio.p_t_watts = d();
  else if (key == "radio.g_t") c.radio.g_t = d();
  else if (key == "radio.g_r") c.radio.g_r = d();
  else if (key == "radio.h_t") c.radio.h_t = d();
  else if (key == "radio.h_r") c.radio.h_r = d();
  else if (key == "radio.noise_watts") c.radio.noise_watts = d();
  else if (key == "radio.bandwidth_hz") c.radio.bandwidth_hz = d();
  else if (key == "radio.capacity_threshold_bps") c.radio.capacity_threshold_bps = d();
  else if (key == "failure.link_revival_rate") c.failure.link_revival_rate = d();
  else if (key == "failure.node_weibull_shape") c.failure.node_weibull_shape = d();
  else if (key == "failure.node_weibull_scale") c.failure.node_weibull_scale = d();
  else if (key == "failure.agent_weibull_shape") c.failure.agent_weibull_shape = d();
  else if (key == "failure.agent_weibull_scale") c.failure.agent_weibull_scale = d();
  else if (key == "failure.p_t_migration") c.failure.p_t_migration = d();
  else throw ConfigError(line, "unknown key '" + key + "'");
}

// Range checks across the whole configuration. Also derives the group
// leader assignment for the group mobility model.
inline void validate_config(ScenarioConfig& c) {
  using detail::check;
  check(c.n_nodes >= 1, 0, "n_nodes must be >= 1");
  check(c.m_agents >= 1, 0, "m_agents must be >= 1");
  check(c.q_runs >= 1, 0, "q_runs must be >= 1");
  check(c.sp_total >= 0, 0, "sp_total must be >= 0");
  check(c.sp_total <= c.n_nodes, 0, "sp_total must be <= n_nodes");
  check(c.max_fr >= 1, 0, "max_fr must be >= 1");
  check(c.duration_min > 0.0, 0, "duration_min must be > 0");
  check(c.observer_node >= -1 && c.observer_node < c.n_nodes, 0,
        "observer_node out of range");
  check(c.rpgm_group_size >= 1, 0, "rpgm_group_size must be >= 1");
  check(c.mobility.v_max > 0.0, 0, "mobility.v_max must be > 0");
  check(c.mobility.pause_time >= 0.0, 0, "mobility.pause_time must be >= 0");
  check(c.mobility.a_max > 0.0, 0, "mobility.a_max must be > 0");
  check(c.mobility.sdr > 0.0 && c.mobility.sdr < 1.0, 0, "mobility.sdr must be in (0,1)");
  check(c.mobility.adr > 0.0 && c.mobility.adr < 1.0, 0, "mobility.adr must be in (0,1)");
  check(c.mobility.phi_max > 0.0, 0, "mobility.phi_max must be > 0");
  check(c.mobility.area_width > 0.0, 0, "mobility.area_width must be > 0");
  check(c.mobility.area_height > 0.0, 0, "mobility.area_height must be > 0");
  check(c.mobility.delta_t > 0.0, 0, "mobility.delta_t must be > 0");
  check(c.radio.p_t_watts > 0.0, 0, "radio.p_t_watts must be > 0");
  check(c.radio.g_t > 0.0 && c.radio.g_r > 0.0, 0, "radio gains must be > 0");
  check(c.radio.h_t > 0.0 && c.radio.h_r > 0.0, 0, "radio antenna heights must be > 0");
  check(c.radio.noise_watts > 0.0, 0, "radio.noise_watts must be > 0");
  check(c.radio.bandwidth_hz > 0.0, 0, "radio.bandwidth_hz must be > 0");
  check(c.radio.capacity_threshold_bps > 0.0, 0,
        "radio.capacity_threshold_bps must be > 0");
  check(c.failure.lfp >= 0.0 && c.failure.lfp <= 1.0, 0, "lfp must be in [0,1]");
  check(c.failure.link_revival_rate >= 0.0, 0, "failure.link_revival_rate must be >= 0");
  check(c.failure.node_weibull_shape > 0.0 && c.failure.node_weibull_scale > 0.0, 0,
        "node lifetime parameters must be > 0");
  check(c.failure.agent_weibull_shape > 0.0 && c.failure.agent_weibull_scale > 0.0, 0,
        "agent lifetime parameters must be > 0");
  check(c.failure.p_t_migration >= 0.0 && c.failure.p_t_migration <= 1.0, 0,
        "failure.p_t_migration must be in [0,1]");
  // Round-robin blocks of rpgm_group_size nodes; the first of each block leads.
  c.mobility.leader_of.assign(c.n_nodes, 0);
  for (int v = 0; v < c.n_nodes; ++v)
    c.mobility.leader_of[v] = (v / c.rpgm_group_size) * c.rpgm_group_size;
}

// Parse a whole config text. Missing keys keep their defaults.
inline ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos
                                          ? std::string_view::npos
                                          : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(line_no, "expected 'key = value'");
    set_config_key(c, key, value, line_no);
  }
  validate_config(c);
  return c;
}

// Canonical text form; parse_config(serialize_config(c)) reproduces c.
inline std::string serialize_config(const ScenarioConfig& c) {
  std::string out;
  char buf[160];
  auto put_num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
  };
  auto put_int = [&](const char* key, long long v) {
    std::snprintf(buf, sizeof buf, "%s = %lld\n", key, v);
    out += buf;
  };
  auto put_str = [&](const char* key, const std::string& v) {
    out += key;
    out += " = ";
    out += v;
    out += '\n';
  };
  put_int("n_nodes", c.n_nodes);
  put_int("m_agents", c.m_agents);
  put_int("q_runs", c.q_runs);
  put_int("sp_total", c.sp_total);
  put_int("max_fr", c.max_fr);
  put_num("lfp", c.failure.lfp);
  put_num("duration_min", c.duration_min);
  put_int("observer_node", c.observer_node);
  put_str("reliability_mode", to_string(c.reliability_mode));
  put_str("killed_agents", to_string(c.killed_agents));
  put_int("seed", static_cast<long long>(c.seed));
  put_int("rpgm_group_size", c.rpgm_group_size);
  put_str("mobility.model", to_string(c.mobility.model));
  put_num("mobility.v_max", c.mobility.v_max);
  put_num("mobility.pause_time", c.mobility.pause_time);
  put_num("mobility.a_max", c.mobility.a_max);
  put_num("mobility.sdr", c.mobility.sdr);
  put_num("mobility.adr", c.mobility.adr);
  put_num("mobility.phi_max", c.mobility.phi_max);
  put_num("mobility.area_width", c.mobility.area_width);
  put_num("mobility.area_height", c.mobility.area_height);
  put_num("mobility.delta_t", c.mobility.delta_t);
  put_num("radio.p_t_watts", c.radio.p_t_watts);
  put_num("radio.g_t", c.radio.g_t);
  put_num("radio.g_r", c.radio.g_r);
  put_num("radio.h_t", c.radio.h_t);
  put_num("radio.h_r", c.radio.h_r);
  put_num("radio.noise_watts", c.radio.noise_watts);
  put_num("radio.bandwidth_hz", c.radio.bandwidth_hz);
  put_num("radio.capacity_threshold_bps", c.radio.capacity_threshold_bps);
  put_num("failure.link_revival_rate", c.failure.link_revival_rate);
  put_num("failure.node_weibull_shape", c.failure.node_weibull_shape);
  put_num("failure.node_weibull_scale", c.failure.node_weibull_scale);
  put_num("failure.agent_weibull_shape", c.failure.agent_weibull_shape);
  put_num("failure.agent_weibull_scale", c.failure.agent_weibull_scale);
  put_num("failure.p_t_migration", c.failure.p_t_migration);
  return out;
}

}  // namespace manetmc
