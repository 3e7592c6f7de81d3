#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "wprs/bessel.hpp"
#include "wprs/channel.hpp"
#include "wprs/core.hpp"
#include "wprs/energy.hpp"
#include "wprs/iqi.hpp"
#include "wprs/link.hpp"
#include "wprs/quadrature.hpp"

namespace wprs {
namespace analytic {

// Optional evaluation report: how far numerical noise pushed a probability
// outside [0,1] before clamping, and whether a validity rule short-circuited
// the formula (beacon off, or the SINR ceiling below the threshold).
struct EvalDiagnostics {
    double max_excursion = 0.0;
    bool short_circuited = false;
    std::string reason; // "no_power" or "ceiling" when short_circuited
};

namespace detail {

inline void note_short_circuit(EvalDiagnostics* diag, const char* reason) {
    if (diag) {
        diag->short_circuited = true;
        diag->reason = reason;
    }
}

// Closed-form ingredients of Pr{SINR > eps} for one data link whose
// transmitter runs on beacon energy.  With beacon gain u and the harvester
// clipping at gain e = gamma_sat/p_b, the conditional exceed probability of
// the estimated data gain x is exp(-lam_x * threshold(u)), where
//   threshold(u) = (g*N*eps + c_err*min(u/e,1)) / (c*min(u/e,1))
// in the linear regime and theta past the knee.  Averaging over
// u ~ Exp(lam_b) splits into a finite integral on [0, lambda_up] (done by
// quadrature) plus a Bessel-K1 closed piece plus the saturated tail.
struct HopLadder {
    bool valid = false;   // p - q*eps > 0 and beacon on; otherwise exceed = 0
    double c = 0.0;       // a * p_b * (p - q*eps)       (signal coefficient)
    double c_err = 0.0;   // sigma_e2 * a * p_b * eps * (p + q) (error floor)
    double e = 0.0;       // gamma_sat / p_b             (harvester knee gain)
    double t = 0.0;       // data-gain threshold exactly at the knee
    double theta = 0.0;   // data-gain threshold in the saturated regime
    double beta = 0.0;    // 4 * lam_b * g * N * eps     (Bessel argument)
    double lambda_up = 0.0; // c*t - c_err = g*N*eps/e   (quadrature upper limit)
    double lam_b = 0.0;   // beacon-link exponential rate
    double lam_x = 0.0;   // data-link exponential rate
};

inline HopLadder make_hop_ladder(double lam_b, double lam_x, double sigma_e2,
                                 double a, double gamma_sat, double pb,
                                 const iqi::IqiLinkGains& gains, double noise,
                                 double eps) {
    HopLadder L;
    L.lam_b = lam_b;
    L.lam_x = lam_x;
    const double margin = gains.p - gains.q * eps;
    if (pb <= 0.0 || margin <= 0.0)
        return L; // invalid: the threshold is unreachable, exceed = 0
    L.valid = true;
    L.c = a * pb * margin;
    L.c_err = sigma_e2 * a * pb * eps * (gains.p + gains.q);
    L.e = gamma_sat / pb;
    const double g_n_eps = gains.g * noise * eps;
    L.t = g_n_eps / (L.c * L.e) + L.c_err / L.c;
    L.theta = (eps * sigma_e2 * a * gamma_sat * (gains.p + gains.q) + g_n_eps) /
              (a * gamma_sat * margin);
    L.beta = 4.0 * lam_b * g_n_eps;
    L.lambda_up = g_n_eps / L.e; // == c*t - c_err
    if (!(L.lambda_up > 0.0) || !(L.t > 0.0) || !(L.theta > 0.0))
        throw core::domain_error("degenerate constant ladder in closed-form evaluation");
    return L;
}

// The linear-regime average with an arbitrary effective data rate `rate`:
//   (1/c) exp(-rate*c_err/c) [ sqrt(beta*c/rate) K1(sqrt(beta*rate/c))
//                              - int_0^lambda_up exp(-beta/(4x) - rate*x/c) dx ].
// The bracket is the [lambda_up, inf) tail of the Bessel-type integral,
// evaluated as (closed full integral) - (quadrature head).
inline double tail_average(const HopLadder& L, double rate,
                           const quadrature::ChebyshevRule& rule) {
    const double gamma_rate = rate / L.c;
    const double bessel_arg = std::sqrt(L.beta * gamma_rate);
    const double full = std::sqrt(L.beta / gamma_rate) * bessel::bessel_k1(bessel_arg);
    const double head = rule.integrate(
        [&](double x) { return std::exp(-0.25 * L.beta / x - gamma_rate * x); },
        L.lambda_up);
    return std::exp(-rate * L.c_err / L.c) * (full - head) / L.c;
}

// Pr{SINR > eps} for a single harvested link.
inline double exceed_probability(const HopLadder& L,
                                 const quadrature::ChebyshevRule& rule) {
    if (!L.valid)
        return 0.0;
    const double sat = std::exp(-L.lam_b * L.e) *
                       (std::exp(-L.lam_x * L.theta) - std::exp(-L.lam_x * L.t));
    return L.lam_x * tail_average(L, L.lam_x, rule) + sat;
}

// Pr{max over m i.i.d. links of SINR > eps} when all m links share the same
// transmitter (the beacon gain u is common).  Expanding the order statistic
// binomially keeps every term in the same ladder with rate (s+1)*lam_x.
// The alternating sum loses precision for m beyond roughly 30; the relay
// count is capped at 64 well before the expansion becomes meaningless.
inline double exceed_probability_best(const HopLadder& L, int m,
                                      const quadrature::ChebyshevRule& rule) {
    if (!L.valid)
        return 0.0;
    const double knee_weight = std::exp(-L.lam_b * L.e);
    double acc = (1.0 - std::pow(1.0 - std::exp(-L.lam_x * L.theta), m)) * knee_weight;
    double binom = 1.0; // C(m-1, s), updated by the running ratio
    for (int s = 0; s < m; ++s) {
        if (s > 0)
            binom *= static_cast<double>(m - s) / s;
        const double rate = L.lam_x * (s + 1);
        const double sign = (s % 2 == 0) ? 1.0 : -1.0;
        const double below_knee = tail_average(L, rate, rule);
        const double at_knee = std::exp(-rate * L.t) / rate;
        acc += m * L.lam_x * binom * sign * (below_knee - knee_weight * at_knee);
    }
    return acc;
}

inline double floor_threshold(const iqi::IqiLinkGains& gains, double sigma_e2,
                              double eps) {
    const double margin = gains.p - gains.q * eps;
    if (margin <= 0.0)
        return -1.0; // sentinel: unreachable threshold, outage floor is 1
    return eps * sigma_e2 * (gains.p + gains.q) / margin;
}

} // namespace detail

// Every constant of the closed-form machinery at one operating point, for
// inspection and invariant tests.  Index pairs: [0]=hop1 of the fixed-relay
// path, [1]=hop2, [2]=hop1 under best-first-hop selection, [3]=its hop2,
// [4]=source->eavesdropper, [5]=relay->eavesdropper.
struct AnalyticConstants {
    double eps = 0.0;                // SINR threshold
    double a1 = 0.0, a2 = 0.0;       // harvest-to-power factors
    double e1 = 0.0, e2 = 0.0;       // harvester knee gains
    std::array<double, 6> c{};       // signal coefficients
    std::array<double, 6> c_err{};   // estimation-error coefficients
    std::array<double, 6> t{};       // knee thresholds
    std::array<double, 6> theta{};   // saturated-regime thresholds
    std::array<double, 6> beta{};    // Bessel-argument factors
    std::array<double, 6> gamma{};   // rate/c ratios
    std::array<double, 6> lambda_up{}; // quadrature upper limits
    std::array<bool, 6> valid{};     // per-entry validity (ceiling rule)
    std::array<double, 4> h{};       // high-power outage floor thresholds
                                     // (sr, rd, se, re); -1 when unreachable
    std::vector<double> xi_terms;    // signed binomial ladder of the
                                     // best-first-hop expansion, s = 0..m-1
};

namespace detail {

// All per-link ingredients the evaluators share at one operating point.
struct Scenario {
    double eps;
    channel::LinkStats bs, br, sr, rd, se, re;
    HopLadder hop1, hop2, hop_se, hop_re;
};

inline Scenario make_scenario(const channel::NetworkModel& model,
                              const energy::EhConfig& eh, const iqi::IqiSet& gains,
                              double r_th) {
    model.validate();
    eh.validate();
    Scenario s;
    s.eps = link::threshold_epsilon(r_th, eh.alpha);
    if (eh.p_b <= 0.0)
        return s; // beacon off: ladders stay invalid, stats are unused
    s.bs = model.stats(channel::LinkClass::BeaconSource, eh.p_b);
    s.br = model.stats(channel::LinkClass::BeaconRelay, eh.p_b);
    s.sr = model.stats(channel::LinkClass::SourceRelay, eh.p_b);
    s.rd = model.stats(channel::LinkClass::RelayDestination, eh.p_b);
    s.se = model.stats(channel::LinkClass::SourceEavesdropper, eh.p_b);
    s.re = model.stats(channel::LinkClass::RelayEavesdropper, eh.p_b);
    s.hop1 = make_hop_ladder(s.bs.lambda, s.sr.lambda, s.sr.sigma_e2, eh.a1(),
                             eh.gamma1, eh.p_b, gains.sr, s.sr.noise, s.eps);
    s.hop2 = make_hop_ladder(s.br.lambda, s.rd.lambda, s.rd.sigma_e2, eh.a2(),
                             eh.gamma2, eh.p_b, gains.rd, s.rd.noise, s.eps);
    s.hop_se = make_hop_ladder(s.bs.lambda, s.se.lambda, s.se.sigma_e2, eh.a1(),
                               eh.gamma1, eh.p_b, gains.se, s.se.noise, s.eps);
    s.hop_re = make_hop_ladder(s.br.lambda, s.re.lambda, s.re.sigma_e2, eh.a2(),
                               eh.gamma2, eh.p_b, gains.re, s.re.noise, s.eps);
    return s;
}

} // namespace detail

inline AnalyticConstants build_constants(const channel::NetworkModel& model,
                                         const energy::EhConfig& eh,
                                         const iqi::IqiSet& gains, double r_th) {
    if (eh.p_b <= 0.0)
        throw core::invalid_argument_error(
            "constant ladder requires a powered beacon (p_b > 0)");
    const detail::Scenario s = detail::make_scenario(model, eh, gains, r_th);

    AnalyticConstants k;
    k.eps = s.eps;
    k.a1 = eh.a1();
    k.a2 = eh.a2();
    k.e1 = eh.knee_gain_source();
    k.e2 = eh.knee_gain_relay();

    // Entries 0/2 share the first-hop ladder; 1/3 share the second-hop one.
    const std::array<const detail::HopLadder*, 6> hops = {
        &s.hop1, &s.hop2, &s.hop1, &s.hop2, &s.hop_se, &s.hop_re};
    for (std::size_t i = 0; i < hops.size(); ++i) {
        const detail::HopLadder& L = *hops[i];
        k.valid[i] = L.valid;
        if (!L.valid)
            continue;
        k.c[i] = L.c;
        k.c_err[i] = L.c_err;
        k.t[i] = L.t;
        k.theta[i] = L.theta;
        k.beta[i] = L.beta;
        k.gamma[i] = L.lam_x / L.c;
        k.lambda_up[i] = L.lambda_up;
    }

    k.h[0] = detail::floor_threshold(gains.sr, s.sr.sigma_e2, s.eps);
    k.h[1] = detail::floor_threshold(gains.rd, s.rd.sigma_e2, s.eps);
    k.h[2] = detail::floor_threshold(gains.se, s.se.sigma_e2, s.eps);
    k.h[3] = detail::floor_threshold(gains.re, s.re.sigma_e2, s.eps);

    double binom = 1.0;
    for (int sidx = 0; sidx < model.m; ++sidx) {
        if (sidx > 0)
            binom *= static_cast<double>(model.m - sidx) / sidx;
        const double sign = (sidx % 2 == 0) ? 1.0 : -1.0;
        k.xi_terms.push_back(model.m * s.sr.lambda * binom * sign);
    }
    return k;
}

// Outage probability of the fixed-relay path: both hops must clear eps, and
// the hops are independent given their own beacon gains.
inline double op_rrs(const channel::NetworkModel& model, const energy::EhConfig& eh,
                     const iqi::IqiSet& gains, double r_th,
                     const quadrature::QuadratureConfig& quad,
                     EvalDiagnostics* diag = nullptr) {
    quad.validate();
    const detail::Scenario s = detail::make_scenario(model, eh, gains, r_th);
    if (eh.p_b <= 0.0) {
        detail::note_short_circuit(diag, "no_power");
        return 1.0;
    }
    if (!s.hop1.valid || !s.hop2.valid) {
        detail::note_short_circuit(diag, "ceiling");
        return 1.0;
    }
    const quadrature::ChebyshevRule rule(quad.y);
    const double i1 = detail::exceed_probability(s.hop1, rule);
    const double i2 = detail::exceed_probability(s.hop2, rule);
    double* exc = diag ? &diag->max_excursion : nullptr;
    return core::clamp01(1.0 - i1 * i2, exc);
}

// Outage probability under best-first-hop relay selection.
inline double op_srs(const channel::NetworkModel& model, const energy::EhConfig& eh,
                     const iqi::IqiSet& gains, double r_th,
                     const quadrature::QuadratureConfig& quad,
                     EvalDiagnostics* diag = nullptr) {
    quad.validate();
    const detail::Scenario s = detail::make_scenario(model, eh, gains, r_th);
    if (eh.p_b <= 0.0) {
        detail::note_short_circuit(diag, "no_power");
        return 1.0;
    }
    if (!s.hop1.valid || !s.hop2.valid) {
        detail::note_short_circuit(diag, "ceiling");
        return 1.0;
    }
    const quadrature::ChebyshevRule rule(quad.y);
    const double i3 = detail::exceed_probability_best(s.hop1, model.m, rule);
    const double i4 = detail::exceed_probability(s.hop2, rule);
    double* exc = diag ? &diag->max_excursion : nullptr;
    return core::clamp01(1.0 - i3 * i4, exc);
}

// Outage probability under best-bottleneck selection, in the product form
// that treats the per-relay end-to-end successes as independent.  The relays
// share the source's beacon gain, so this understates the true coupling; the
// gap against simulation is largest at mid-range beacon power (see README).
inline double op_ors(const channel::NetworkModel& model, const energy::EhConfig& eh,
                     const iqi::IqiSet& gains, double r_th,
                     const quadrature::QuadratureConfig& quad,
                     EvalDiagnostics* diag = nullptr) {
    const double per_path = op_rrs(model, eh, gains, r_th, quad, diag);
    double* exc = diag ? &diag->max_excursion : nullptr;
    return core::clamp01(std::pow(per_path, model.m), exc);
}

// Outage probability under best-bottleneck selection with the shared beacon
// gain handled exactly.  Conditioned on the source's beacon gain u, the
// per-relay end-to-end successes are i.i.d. with probability P1(u) * I2,
// where P1(u) = exp(-lam_sr * threshold(u)) is the first-hop success at that
// u and I2 is the second-hop success (independent of u), so
//   OP = E_u[(1 - P1(u) * I2)^m]
//      = sum_k C(m,k) (-I2)^k E_u[exp(-k * lam_sr * threshold(u))],
// and each expectation is the single-link exceed probability with the data
// rate scaled by k.  This removes the product-form approximation of op_ors;
// it shares the alternating-sum precision caveat at large m.
inline double op_ors_exact(const channel::NetworkModel& model,
                           const energy::EhConfig& eh, const iqi::IqiSet& gains,
                           double r_th, const quadrature::QuadratureConfig& quad,
                           EvalDiagnostics* diag = nullptr) {
    quad.validate();
    const detail::Scenario s = detail::make_scenario(model, eh, gains, r_th);
    if (eh.p_b <= 0.0) {
        detail::note_short_circuit(diag, "no_power");
        return 1.0;
    }
    if (!s.hop1.valid || !s.hop2.valid) {
        detail::note_short_circuit(diag, "ceiling");
        return 1.0;
    }
    const quadrature::ChebyshevRule rule(quad.y);
    const double i2 = detail::exceed_probability(s.hop2, rule);
    double acc = 1.0;   // k = 0 term
    double binom = 1.0; // C(m, k), updated by the running ratio
    double power = 1.0; // (-i2)^k
    detail::HopLadder scaled = s.hop1;
    for (int k = 1; k <= model.m; ++k) {
        binom *= static_cast<double>(model.m - k + 1) / k;
        power *= -i2;
        scaled.lam_x = s.hop1.lam_x * k;
        acc += binom * power * detail::exceed_probability(scaled, rule);
    }
    double* exc = diag ? &diag->max_excursion : nullptr;
    return core::clamp01(acc, exc);
}

inline double op_scheme(link::Scheme scheme, const channel::NetworkModel& model,
                        const energy::EhConfig& eh, const iqi::IqiSet& gains,
                        double r_th, const quadrature::QuadratureConfig& quad,
                        EvalDiagnostics* diag = nullptr) {
    switch (scheme) {
    case link::Scheme::Rrs: return op_rrs(model, eh, gains, r_th, quad, diag);
    case link::Scheme::Srs: return op_srs(model, eh, gains, r_th, quad, diag);
    case link::Scheme::Ors: return op_ors(model, eh, gains, r_th, quad, diag);
    }
    throw core::invalid_argument_error("unknown scheme");
}

// High-beacon-power outage floor.  As the beacon power grows without bound
// (and the harvesters stay in the linear regime), the SINR of each hop tends
// to p*x / (p*sigma_e2 + q*x + q*sigma_e2), so outage keeps a floor set by
// the estimation error alone:  Pr{hop fails} -> 1 - exp(-lambda_x * H) with
// H = eps*sigma_e2*(p+q)/(p - q*eps).  Requires the fixed estimation-error
// model; the SNR-dependent variance vanishes at high power and the floor
// degenerates to zero.
inline double op_asymptotic(link::Scheme scheme, const channel::NetworkModel& model,
                            const energy::EhConfig& eh, const iqi::IqiSet& gains,
                            double r_th, EvalDiagnostics* diag = nullptr) {
    model.validate();
    eh.validate();
    if (model.cee.kind != channel::CeeModel::Kind::Fixed)
        throw core::invalid_argument_error(
            "asymptotic outage floor requires the fixed estimation-error model");
    const double eps = link::threshold_epsilon(r_th, eh.alpha);
    const double s2_sr = model.cee.value;
    const double s2_rd = model.cee.value;
    const double h1 = detail::floor_threshold(gains.sr, s2_sr, eps);
    const double h2 = detail::floor_threshold(gains.rd, s2_rd, eps);
    if (h1 < 0.0 || h2 < 0.0) {
        detail::note_short_circuit(diag, "ceiling");
        return 1.0;
    }
    const double lam_sr = model.estimated_gain_rate(channel::LinkClass::SourceRelay, 1.0);
    const double lam_rd = model.estimated_gain_rate(channel::LinkClass::RelayDestination, 1.0);
    double* exc = diag ? &diag->max_excursion : nullptr;
    const double hop1_ok = std::exp(-lam_sr * h1);
    const double hop2_ok = std::exp(-lam_rd * h2);
    switch (scheme) {
    case link::Scheme::Rrs:
        return core::clamp01(1.0 - hop1_ok * hop2_ok, exc);
    case link::Scheme::Srs:
        return core::clamp01(
            1.0 - (1.0 - std::pow(1.0 - hop1_ok, model.m)) * hop2_ok, exc);
    case link::Scheme::Ors:
        return core::clamp01(std::pow(1.0 - hop1_ok * hop2_ok, model.m), exc);
    }
    throw core::invalid_argument_error("unknown scheme");
}

// Intercept probability: the eavesdropper's SINR on the monitored transmission
// exceeds eps.  Direct mode taps the source's hop, relay mode the selected
// relay's hop (relays are i.i.d., so the selected index does not matter).
inline double ip_direct(const channel::NetworkModel& model, const energy::EhConfig& eh,
                        const iqi::IqiSet& gains, double r_th,
                        const quadrature::QuadratureConfig& quad,
                        EvalDiagnostics* diag = nullptr) {
    quad.validate();
    const detail::Scenario s = detail::make_scenario(model, eh, gains, r_th);
    if (eh.p_b <= 0.0) {
        detail::note_short_circuit(diag, "no_power");
        return 0.0;
    }
    if (!s.hop_se.valid) {
        detail::note_short_circuit(diag, "ceiling");
        return 0.0;
    }
    const quadrature::ChebyshevRule rule(quad.y);
    double* exc = diag ? &diag->max_excursion : nullptr;
    return core::clamp01(detail::exceed_probability(s.hop_se, rule), exc);
}

inline double ip_relay(const channel::NetworkModel& model, const energy::EhConfig& eh,
                       const iqi::IqiSet& gains, double r_th,
                       const quadrature::QuadratureConfig& quad,
                       EvalDiagnostics* diag = nullptr) {
    quad.validate();
    const detail::Scenario s = detail::make_scenario(model, eh, gains, r_th);
    if (eh.p_b <= 0.0) {
        detail::note_short_circuit(diag, "no_power");
        return 0.0;
    }
    if (!s.hop_re.valid) {
        detail::note_short_circuit(diag, "ceiling");
        return 0.0;
    }
    const quadrature::ChebyshevRule rule(quad.y);
    double* exc = diag ? &diag->max_excursion : nullptr;
    return core::clamp01(detail::exceed_probability(s.hop_re, rule), exc);
}

inline double ip_mode(link::IpMode mode, const channel::NetworkModel& model,
                      const energy::EhConfig& eh, const iqi::IqiSet& gains,
                      double r_th, const quadrature::QuadratureConfig& quad,
                      EvalDiagnostics* diag = nullptr) {
    return mode == link::IpMode::Direct
               ? ip_direct(model, eh, gains, r_th, quad, diag)
               : ip_relay(model, eh, gains, r_th, quad, diag);
}

// Least-squares slope of -ln(OP) against ln(rho): the empirical diversity
// order of a (rho, outage) curve.  Points with OP == 0 carry no information
// at finite precision and are rejected.
inline double diversity_order(const std::vector<std::pair<double, double>>& rho_op) {
    if (rho_op.size() < 2)
        throw core::invalid_argument_error("diversity_order needs at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [rho, op] : rho_op) {
        core::check_positive(rho, "rho");
        if (!(op > 0.0) || !(op <= 1.0))
            throw core::invalid_argument_error("op values must lie in (0,1]");
        const double x = std::log(rho);
        const double y = -std::log(op);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(rho_op.size());
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0)
        throw core::invalid_argument_error("diversity_order needs distinct rho values");
    return (n * sxy - sx * sy) / denom;
}

} // namespace analytic
} // namespace wprs
