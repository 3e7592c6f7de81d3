// Minimal library walkthrough: evaluate outage and intercept probability at
// one operating point through both routes (closed form and simulation) and
// print them side by side.

#include <cstdio>

#include "wprs/wprs.hpp"

int main() {
    using namespace wprs;

    channel::NetworkModel model; // reference geometry, two relays
    model.cee = channel::CeeModel::fixed(0.05);

    energy::EhConfig eh;
    eh.p_b = 100.0; // 20 dB

    const iqi::IqiSet gains =
        iqi::IqiSet::uniform(iqi::IqiMismatch::from_degrees(1.1, 5.0, 1.1, 5.0));

    const double r_th = 0.05;
    const quadrature::QuadratureConfig quad{200};
    mc::McConfig mcc;
    mcc.trials = 200000;
    mcc.seed = 7;

    std::printf("%-10s %12s %12s\n", "metric", "closed-form", "simulated");
    for (link::Scheme s : {link::Scheme::Rrs, link::Scheme::Srs, link::Scheme::Ors}) {
        const double cf = analytic::op_scheme(s, model, eh, gains, r_th, quad);
        const mc::MetricEstimate est = mc::estimate_op(s, model, eh, gains, r_th, mcc);
        std::printf("op/%-7s %12.6f %12.6f\n", link::scheme_name(s), cf, est.p_hat);
    }
    for (link::IpMode m : {link::IpMode::Direct, link::IpMode::Relay}) {
        const double cf = analytic::ip_mode(m, model, eh, gains, r_th, quad);
        const mc::MetricEstimate est = mc::estimate_ip(m, model, eh, gains, r_th, mcc);
        std::printf("%-10s %12.6f %12.6f\n", link::ip_mode_name(m), cf, est.p_hat);
    }
    return 0;
}
