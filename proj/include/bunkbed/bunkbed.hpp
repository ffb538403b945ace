#pragma once

// Umbrella header.

#include "bunkbed/aux_results.hpp"
#include "bunkbed/class_enumeration.hpp"
#include "bunkbed/component_prob.hpp"
#include "bunkbed/counting.hpp"
#include "bunkbed/errors.hpp"
#include "bunkbed/exact.hpp"
#include "bunkbed/graph.hpp"
#include "bunkbed/monte_carlo.hpp"
#include "bunkbed/parallel.hpp"
#include "bunkbed/rational.hpp"
#include "bunkbed/union_find.hpp"
#include "bunkbed/verifier.hpp"
