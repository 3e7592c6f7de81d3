#pragma once

#include <algorithm>

#include "wprs/core.hpp"

namespace wprs {
namespace energy {

// Time-switching harvest-then-transmit configuration with saturating
// (nonlinear) harvesters.  A block of unit duration spends fraction alpha
// harvesting and splits the rest evenly between the two data hops, which is
// where the 2*alpha/(1-alpha) power-concentration factor comes from.
struct EhConfig {
    double alpha = 0.5;   // harvesting fraction of the block, in (0,1)
    double sigma1 = 0.5;  // source harvester conversion efficiency, in (0,1]
    double sigma2 = 0.5;  // relay harvester conversion efficiency, in (0,1]
    double gamma1 = 10.0; // source harvester input saturation level
    double gamma2 = 10.0; // relay harvester input saturation level
    double p_b = 100.0;   // beacon transmit power, linear scale
    double t_block = 1.0; // block duration (normalized)

    void validate() const {
        core::check_in_open_unit(alpha, "alpha");
        core::check_positive(sigma1, "sigma1");
        core::check_positive(sigma2, "sigma2");
        if (sigma1 > 1.0)
            throw core::invalid_argument_error("sigma1 must lie in (0,1]");
        if (sigma2 > 1.0)
            throw core::invalid_argument_error("sigma2 must lie in (0,1]");
        core::check_positive(gamma1, "gamma1");
        core::check_positive(gamma2, "gamma2");
        core::check_nonnegative(p_b, "p_b");
        core::check_positive(t_block, "t_block");
    }

    // Harvested-energy-to-transmit-power factors for the two transmitters.
    double a1() const { return 2.0 * alpha * sigma1 / (1.0 - alpha); }
    double a2() const { return 2.0 * alpha * sigma2 / (1.0 - alpha); }

    // Transmit power of the source when the beacon->source gain is u:
    // the harvester input p_b*u is clipped at gamma1, then scaled by a1.
    double source_power(double u) const {
        core::check_nonnegative(u, "u");
        return a1() * std::min(p_b * u, gamma1);
    }

    // Transmit power of a relay with beacon->relay gain u.
    double relay_power(double u) const {
        core::check_nonnegative(u, "u");
        return a2() * std::min(p_b * u, gamma2);
    }

    // Beacon gain at which the source harvester saturates (the knee).
    double knee_gain_source() const { return gamma1 / p_b; }
    double knee_gain_relay() const { return gamma2 / p_b; }
};

} // namespace energy
} // namespace wprs
