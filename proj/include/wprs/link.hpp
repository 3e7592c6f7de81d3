#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wprs/core.hpp"
#include "wprs/iqi.hpp"

namespace wprs {
namespace link {

// Relay-selection schemes for the two-hop decode-and-forward path.
enum class Scheme {
    Rrs, // fixed/random relay: pick one relay regardless of channel state
    Srs, // suboptimal: pick the relay with the best first hop
    Ors  // opportunistic: pick the relay with the best end-to-end bottleneck
};

// Which eavesdropper observation an intercept metric scores.
enum class IpMode {
    Direct, // eavesdropper overhears the source transmission (hop 1)
    Relay   // eavesdropper overhears the selected relay (hop 2)
};

inline const char* scheme_name(Scheme s) {
    switch (s) {
    case Scheme::Rrs: return "rrs";
    case Scheme::Srs: return "srs";
    case Scheme::Ors: return "ors";
    }
    return "?";
}

inline const char* ip_mode_name(IpMode m) {
    return m == IpMode::Direct ? "ip_direct" : "ip_relay";
}

// Detection SINR of one data link with a mismatched front end and imperfect
// channel knowledge.  x is the *estimated* channel power gain, power the
// transmit power.  The image path (q) turns both the signal and the residual
// estimation error into self-interference, and the front end scales the
// noise floor by g:
//   sinr = power*p*x / (power*(p*sigma_e2 + q*x + q*sigma_e2) + g*noise).
inline double sinr(double x, double power, double noise, double sigma_e2,
                   const iqi::IqiLinkGains& gains) {
    const double num = power * gains.p * x;
    const double den =
        power * (gains.p * sigma_e2 + gains.q * x + gains.q * sigma_e2) + gains.g * noise;
    return num / den;
}

// Achievable rate of one hop: the usable block fraction (1-alpha) is split
// between the two hops, hence the factor (1-alpha)/2.
inline double hop_capacity(double sinr_value, double alpha) {
    return 0.5 * (1.0 - alpha) * std::log2(1.0 + sinr_value);
}

// Decision threshold in the SINR domain for the rate target r_th.  The
// exponent inverts the (1-alpha)/2 rate prefactor without the +1 inside the
// log, so the threshold is 2^(2*r_th/(1-alpha)); at r_th = 0 it equals 1,
// and hop_capacity(eps, alpha) > r_th always holds (the decision rule is
// conservative relative to the Shannon map).
inline double threshold_epsilon(double r_th, double alpha) {
    core::check_nonnegative(r_th, "r_th");
    core::check_in_open_unit(alpha, "alpha");
    return std::exp2(2.0 * r_th / (1.0 - alpha));
}

// Decode-and-forward end-to-end SINR: the weaker hop limits the path.
inline double df_bottleneck(double sinr_hop1, double sinr_hop2) {
    return std::min(sinr_hop1, sinr_hop2);
}

// Index of the relay a scheme picks, given per-relay hop SINRs.
// Ties resolve to the lowest index so selection is deterministic.
inline std::size_t select_srs(const std::vector<double>& sinr_hop1) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sinr_hop1.size(); ++i)
        if (sinr_hop1[i] > sinr_hop1[best])
            best = i;
    return best;
}

inline std::size_t select_ors(const std::vector<double>& sinr_hop1,
                              const std::vector<double>& sinr_hop2) {
    std::size_t best = 0;
    double best_val = df_bottleneck(sinr_hop1[0], sinr_hop2[0]);
    for (std::size_t i = 1; i < sinr_hop1.size(); ++i) {
        const double v = df_bottleneck(sinr_hop1[i], sinr_hop2[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    return best;
}

} // namespace link
} // namespace wprs
