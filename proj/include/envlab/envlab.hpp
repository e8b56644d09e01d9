#pragma once

#include "envlab/rational.hpp"
#include "envlab/types.hpp"
#include "envlab/scenario.hpp"
#include "envlab/tables.hpp"
#include "envlab/analytic.hpp"
#include "envlab/ladder.hpp"
#include "envlab/montecarlo.hpp"
#include "envlab/summary.hpp"
#include "envlab/output.hpp"
