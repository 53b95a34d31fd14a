#pragma once

// Umbrella header for the whole library.

#include "gsmatch/breakpoints.hpp"
#include "gsmatch/contour.hpp"
#include "gsmatch/cost.hpp"
#include "gsmatch/dp_matcher.hpp"
#include "gsmatch/fdcm.hpp"
#include "gsmatch/geometry.hpp"
#include "gsmatch/groups.hpp"
#include "gsmatch/mask.hpp"
#include "gsmatch/normalize.hpp"
#include "gsmatch/params.hpp"
#include "gsmatch/perturb.hpp"
#include "gsmatch/retrieval.hpp"
#include "gsmatch/shape.hpp"
#include "gsmatch/svg.hpp"
#include "gsmatch/synthetic.hpp"
