#pragma once

#include <cmath>
#include <complex>

#include "wprs/core.hpp"

namespace wprs {
namespace iqi {

inline constexpr double pi = 3.14159265358979323846;

inline double degrees_to_radians(double deg) { return deg * (pi / 180.0); }

// Transmit/receive amplitude and phase mismatch of one link.  Phases are
// radians here; the config layer accepts degrees and converts on load.
struct IqiMismatch {
    double xi_t = 1.0;  // transmit amplitude mismatch (ideal: 1)
    double phi_t = 0.0; // transmit phase mismatch, radians (ideal: 0)
    double xi_r = 1.0;  // receive amplitude mismatch
    double phi_r = 0.0; // receive phase mismatch, radians

    static IqiMismatch ideal() { return IqiMismatch{}; }

    static IqiMismatch from_degrees(double xi_t, double phi_t_deg, double xi_r, double phi_r_deg) {
        return IqiMismatch{xi_t, degrees_to_radians(phi_t_deg), xi_r, degrees_to_radians(phi_r_deg)};
    }

    void validate() const {
        core::check_positive(xi_t, "iqi.xi_t");
        core::check_positive(xi_r, "iqi.xi_r");
        core::check_finite(phi_t, "iqi.phi_t");
        core::check_finite(phi_r, "iqi.phi_r");
    }
};

// Direct-path and image-path mixing coefficients of the quadrature front ends.
struct IqiCoefficients {
    std::complex<double> mu_t, nu_t; // transmit side
    std::complex<double> mu_r, nu_r; // receive side
};

inline IqiCoefficients coefficients_from_mismatch(const IqiMismatch& m) {
    m.validate();
    const std::complex<double> jphi_t(0.0, m.phi_t);
    const std::complex<double> jphi_r(0.0, m.phi_r);
    IqiCoefficients c;
    c.mu_t = 0.5 * (1.0 + m.xi_t * std::exp(jphi_t));
    c.nu_t = 0.5 * (1.0 - m.xi_t * std::exp(-jphi_t));
    c.mu_r = 0.5 * (1.0 + m.xi_r * std::exp(-jphi_r));
    c.nu_r = 0.5 * (1.0 - m.xi_r * std::exp(jphi_r));
    return c;
}

// Effective per-link power gains after both front ends:
//   p scales the desired signal, q the mirror-image self-interference, and
//   g the wideband power seen by an energy detector at the receiver.
// An ideal front end gives exactly (p,q,g) = (1,0,1).
struct IqiLinkGains {
    double p = 1.0;
    double q = 0.0;
    double g = 1.0;
};

inline IqiLinkGains link_gains(const IqiCoefficients& c) {
    const double p = std::norm(c.mu_t * c.mu_r + std::conj(c.nu_t) * c.nu_r);
    const double q = std::norm(c.mu_r * c.nu_t + std::conj(c.mu_t) * c.nu_r);
    const double g = std::norm(c.mu_r + c.nu_r);
    return IqiLinkGains{p, q, g};
}

inline IqiLinkGains link_gains(const IqiMismatch& m) {
    return link_gains(coefficients_from_mismatch(m));
}

// Largest SINR any channel realization can reach: p/q.  With q = 0 the image
// path vanishes and the SINR is unbounded; that case is reported through the
// explicit flag rather than a floating-point infinity.
struct SinrCeiling {
    bool unbounded = false;
    double value = 0.0; // valid only when !unbounded

    // True when a target threshold eps is reachable below the ceiling.
    bool exceeds(double eps) const { return unbounded || value > eps; }
};

inline SinrCeiling sinr_ceiling(const IqiLinkGains& gains) {
    if (gains.q <= 0.0)
        return SinrCeiling{true, 0.0};
    return SinrCeiling{false, gains.p / gains.q};
}

// Effective gains of every data link class.  Front ends may differ per link
// (e.g. a better-calibrated eavesdropper), so each class carries its own set.
struct IqiSet {
    IqiLinkGains sr, rd, se, re;

    static IqiSet uniform(const IqiMismatch& m) {
        const IqiLinkGains g = link_gains(m);
        return IqiSet{g, g, g, g};
    }

    static IqiSet ideal() { return IqiSet{}; }
};

} // namespace iqi
} // namespace wprs
