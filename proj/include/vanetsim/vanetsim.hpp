#pragma once

#include "vanetsim/attack.hpp"
#include "vanetsim/attack_profile.hpp"
#include "vanetsim/detectors.hpp"
#include "vanetsim/domain.hpp"
#include "vanetsim/engine.hpp"
#include "vanetsim/metrics.hpp"
#include "vanetsim/rng.hpp"
#include "vanetsim/scenario_io.hpp"
#include "vanetsim/simulation.hpp"
#include "vanetsim/sweep.hpp"
#include "vanetsim/world.hpp"
