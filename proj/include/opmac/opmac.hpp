#pragma once

// Umbrella header: opportunistic random medium access for full-duplex Poisson
// bipolar networks. Interference-conditioned opportunity prediction, the
// proportionally-fair fixed-point optimizer plus its closed-form surrogate,
// and a slotted Monte Carlo comparison of access schemes.

#include "opmac/channel.hpp"
#include "opmac/cli_io.hpp"
#include "opmac/closed_form.hpp"
#include "opmac/config.hpp"
#include "opmac/csv.hpp"
#include "opmac/deployment.hpp"
#include "opmac/empty_ball.hpp"
#include "opmac/fixed_point.hpp"
#include "opmac/geometry.hpp"
#include "opmac/opportunity.hpp"
#include "opmac/params.hpp"
#include "opmac/quadrature.hpp"
#include "opmac/rng.hpp"
#include "opmac/schemes.hpp"
#include "opmac/simulator.hpp"
#include "opmac/sir.hpp"
#include "opmac/stats.hpp"
#include "opmac/sweep.hpp"
#include "opmac/two_pair.hpp"
#include "opmac/units.hpp"
