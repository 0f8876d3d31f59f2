#pragma once

#include "fuzzygh/tnorm.hpp"
#include "fuzzygh/value_fn.hpp"
#include "fuzzygh/metric.hpp"
#include "fuzzygh/space.hpp"
#include "fuzzygh/hausdorff.hpp"
#include "fuzzygh/covering.hpp"
#include "fuzzygh/gluing.hpp"
#include "fuzzygh/ghdist.hpp"
#include "fuzzygh/sequences.hpp"
