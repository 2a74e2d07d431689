#pragma once

// Parameter sweeps: rerun the Monte Carlo estimate while one configuration
// key walks through a list of values, everything else (including the base
// seed) held fixed so the cells share their random numbers.

#include <cstdio>
#include <string>
#include <vector>

#include "manetmc/config.hpp"
#include "manetmc/estimator.hpp"

namespace manetmc {

struct SweepPoint {
  std::string value;  // the swept key's value, exactly as given
  ReliabilityReport report;
};

struct SweepResult {
  std::string param;
  std::vector<SweepPoint> points;
};

// One Monte Carlo cell per value of `param`. Values are applied through the
// regular config parser, so anything a config file accepts works here.
inline SweepResult run_sweep(const ScenarioConfig& base, const std::string& param,
                             const std::vector<std::string>& values,
                             int jobs = 1) {
  if (values.empty()) throw std::invalid_argument("run_sweep: no values");
  SweepResult out;
  out.param = param;
  out.points.reserve(values.size());
  for (const std::string& v : values) {
    ScenarioConfig c = base;
    set_config_key(c, param, v);
    validate_config(c);
    out.points.push_back({v, monte_carlo(c, jobs)});
  }
  return out;
}

// CSV rendering, one row per sweep cell. Numbers use %.9g so reruns are
// byte-identical.
inline std::string sweep_csv(const SweepResult& sweep) {
  std::string out = "param,mean_lambda,std_lambda,r_service,mean_m\n";
  char buf[160];
  for (const SweepPoint& p : sweep.points) {
    const ReliabilityReport& r = p.report;
    std::snprintf(buf, sizeof buf, ",%.9g,%.9g,%.9g,%.9g\n", r.mean_lambda,
                  r.std_lambda, r.mean_r_service, r.mean_m);
    out += p.value;
    out += buf;
  }
  return out;
}

}  // namespace manetmc
