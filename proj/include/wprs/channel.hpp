#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "wprs/core.hpp"
#include "wprs/rng.hpp"

namespace wprs {
namespace channel {

// The six statistical link classes of the network.  Relays are i.i.d., so one
// class covers all per-relay instances of a hop.
enum class LinkClass {
    BeaconSource,       // power beacon -> source (energy link)
    BeaconRelay,        // power beacon -> relay (energy link)
    SourceRelay,        // source -> relay (first data hop)
    RelayDestination,   // relay -> destination (second data hop)
    SourceEavesdropper, // source -> eavesdropper (wiretap on hop 1)
    RelayEavesdropper   // relay -> eavesdropper (wiretap on hop 2)
};

inline const char* link_class_name(LinkClass c) {
    switch (c) {
    case LinkClass::BeaconSource: return "bs";
    case LinkClass::BeaconRelay: return "br";
    case LinkClass::SourceRelay: return "sr";
    case LinkClass::RelayDestination: return "rd";
    case LinkClass::SourceEavesdropper: return "se";
    case LinkClass::RelayEavesdropper: return "re";
    }
    return "?";
}

inline bool is_energy_link(LinkClass c) {
    return c == LinkClass::BeaconSource || c == LinkClass::BeaconRelay;
}

inline bool is_eavesdropper_link(LinkClass c) {
    return c == LinkClass::SourceEavesdropper || c == LinkClass::RelayEavesdropper;
}

// Channel-estimation-error model.  Fixed keeps the error variance constant;
// SnrDependent shrinks it as the training SNR proxy rho grows:
//   sigma_e^2 = omega / (1 + delta * rho * omega).
struct CeeModel {
    enum class Kind { Fixed, SnrDependent };

    Kind kind = Kind::Fixed;
    double value = 0.0; // sigma_e^2 (Fixed) or delta (SnrDependent)

    static CeeModel fixed(double sigma_e2) {
        core::check_nonnegative(sigma_e2, "cee.sigma_e2");
        return CeeModel{Kind::Fixed, sigma_e2};
    }

    static CeeModel snr_dependent(double delta) {
        core::check_positive(delta, "cee.delta");
        return CeeModel{Kind::SnrDependent, delta};
    }

    double variance(double omega, double rho) const {
        if (kind == Kind::Fixed)
            return value;
        return omega / (1.0 + value * rho * omega);
    }
};

// Everything evaluators need about one link class at one operating point.
struct LinkStats {
    double omega = 1.0;    // mean channel power d^-beta
    double sigma_e2 = 0.0; // estimation-error variance
    double lambda = 1.0;   // rate of the exponential estimated-gain law
    double noise = 1.0;    // receiver noise power (data links)
};

// Static geometry and statistics of the network: relay count, distances,
// path-loss exponent, per-link noise, and the estimation-error models.
struct NetworkModel {
    int m = 2; // number of relays

    double d_bs = 1.0;
    double d_br = 1.0;
    double d_sr = 1.5;
    double d_rd = 1.5;
    double d_se = 2.0;
    double d_re = 1.5;

    double beta = 3.0; // path-loss exponent

    double n_sr = 1.0;
    double n_rd = 1.0;
    double n_se = 1.0;
    double n_re = 1.0;

    CeeModel cee;                     // data links (estimated)
    std::optional<CeeModel> cee_eve;  // eavesdropper links; falls back to cee

    void validate() const {
        if (m < 1 || m > 64)
            throw core::invalid_argument_error("m must lie in [1,64]");
        core::check_positive(d_bs, "distances.bs");
        core::check_positive(d_br, "distances.br");
        core::check_positive(d_sr, "distances.sr");
        core::check_positive(d_rd, "distances.rd");
        core::check_positive(d_se, "distances.se");
        core::check_positive(d_re, "distances.re");
        core::check_positive(beta, "beta");
        core::check_positive(n_sr, "noise.sr");
        core::check_positive(n_rd, "noise.rd");
        core::check_positive(n_se, "noise.se");
        core::check_positive(n_re, "noise.re");
    }

    double distance(LinkClass c) const {
        switch (c) {
        case LinkClass::BeaconSource: return d_bs;
        case LinkClass::BeaconRelay: return d_br;
        case LinkClass::SourceRelay: return d_sr;
        case LinkClass::RelayDestination: return d_rd;
        case LinkClass::SourceEavesdropper: return d_se;
        case LinkClass::RelayEavesdropper: return d_re;
        }
        throw core::invalid_argument_error("unknown link class");
    }

    double omega(LinkClass c) const { return std::pow(distance(c), -beta); }

    // Noise power at the receiver of a data link.  Energy links feed a
    // harvester, not a detector, so they have no noise figure here.
    double noise(LinkClass c) const {
        switch (c) {
        case LinkClass::SourceRelay: return n_sr;
        case LinkClass::RelayDestination: return n_rd;
        case LinkClass::SourceEavesdropper: return n_se;
        case LinkClass::RelayEavesdropper: return n_re;
        default:
            throw core::invalid_argument_error("energy links carry no noise figure");
        }
    }

    // Estimation-error variance of a link at beacon power pb.  Energy links
    // are not estimated (the harvester integrates total power), so their
    // variance is exactly zero.  The SNR proxy is rho = pb / N_j.
    double estimation_variance(LinkClass c, double pb) const {
        if (is_energy_link(c))
            return 0.0;
        const CeeModel& model =
            (is_eavesdropper_link(c) && cee_eve.has_value()) ? *cee_eve : cee;
        return model.variance(omega(c), pb / noise(c));
    }

    // Rate of the exponential law of the *estimated* channel power gain:
    //   lambda = 1 / (omega - sigma_e^2).
    // The estimate carries the part of the channel power not lost to the
    // estimation error, so sigma_e^2 >= omega is degenerate.
    double estimated_gain_rate(LinkClass c, double pb) const {
        const double om = omega(c);
        const double s2 = estimation_variance(c, pb);
        if (s2 >= om)
            throw core::domain_error(
                std::string("estimation variance ") + std::to_string(s2) +
                " >= mean channel power " + std::to_string(om) + " on link " +
                link_class_name(c));
        return 1.0 / (om - s2);
    }

    LinkStats stats(LinkClass c, double pb) const {
        LinkStats s;
        s.omega = omega(c);
        s.sigma_e2 = estimation_variance(c, pb);
        s.lambda = estimated_gain_rate(c, pb);
        s.noise = is_energy_link(c) ? 0.0 : noise(c);
        return s;
    }
};

// One draw of an exponentially distributed channel power gain.
inline double sample_gain(double lambda, rng::ChunkStream& stream) {
    core::check_positive(lambda, "lambda");
    return stream.exponential(lambda);
}

} // namespace channel
} // namespace wprs
