#pragma once

// Umbrella header: the whole library.

#include "manetmc/rng.hpp"
#include "manetmc/mobility.hpp"
#include "manetmc/radio.hpp"
#include "manetmc/topology.hpp"
#include "manetmc/agents.hpp"
#include "manetmc/config.hpp"
#include "manetmc/estimator.hpp"
#include "manetmc/sweep.hpp"
#include "manetmc/plot.hpp"
