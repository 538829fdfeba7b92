#pragma once

#include "qbattery/errors.hpp"
#include "qbattery/operators.hpp"
#include "qbattery/topology.hpp"
#include "qbattery/hamiltonian.hpp"
#include "qbattery/evolution.hpp"
#include "qbattery/metrics.hpp"
#include "qbattery/experiments.hpp"
#include "qbattery/series_io.hpp"
#include "qbattery/svg.hpp"
#include "qbattery/config.hpp"
