#pragma once

// Umbrella header: the full wireless-powered relay security toolkit.

#include "wprs/analytic.hpp"
#include "wprs/bessel.hpp"
#include "wprs/channel.hpp"
#include "wprs/config.hpp"
#include "wprs/core.hpp"
#include "wprs/energy.hpp"
#include "wprs/experiment.hpp"
#include "wprs/iqi.hpp"
#include "wprs/link.hpp"
#include "wprs/mc.hpp"
#include "wprs/quadrature.hpp"
#include "wprs/rng.hpp"
