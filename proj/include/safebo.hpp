#pragma once

#include "safebo/baselines.hpp"
#include "safebo/benchmarks.hpp"
#include "safebo/confidence.hpp"
#include "safebo/config.hpp"
#include "safebo/csv.hpp"
#include "safebo/errors.hpp"
#include "safebo/gp_model.hpp"
#include "safebo/grid.hpp"
#include "safebo/harness.hpp"
#include "safebo/kernel.hpp"
#include "safebo/msafeopt.hpp"
#include "safebo/pendulum.hpp"
#include "safebo/safe_set.hpp"
