#pragma once

// Umbrella header: geometric constants of finite-dimensional normed spaces,
// estimated by deterministic sampling of the constraint sets plus
// derivative-free local refinement.

#include "geoconst/audit.hpp"
#include "geoconst/constants.hpp"
#include "geoconst/error.hpp"
#include "geoconst/io.hpp"
#include "geoconst/manifold.hpp"
#include "geoconst/norm.hpp"
#include "geoconst/norm_spec.hpp"
#include "geoconst/section.hpp"
#include "geoconst/sweep.hpp"
#include "geoconst/vec.hpp"
