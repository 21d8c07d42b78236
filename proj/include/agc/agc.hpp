#pragma once

// Umbrella header: the whole library.

#include "agc/canonical.hpp"
#include "agc/contraction.hpp"
#include "agc/equivalence.hpp"
#include "agc/error.hpp"
#include "agc/field.hpp"
#include "agc/form.hpp"
#include "agc/graph.hpp"
#include "agc/hyperlines.hpp"
#include "agc/json_io.hpp"
#include "agc/projective.hpp"
#include "agc/rng.hpp"
#include "agc/strata.hpp"
#include "agc/trees.hpp"
