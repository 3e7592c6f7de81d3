#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "wprs/channel.hpp"
#include "wprs/core.hpp"
#include "wprs/energy.hpp"
#include "wprs/iqi.hpp"
#include "wprs/link.hpp"
#include "wprs/rng.hpp"

namespace wprs {
namespace mc {

struct McConfig {
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    int workers = 0;            // 0 = use hardware concurrency
    std::uint64_t chunk = 65536; // trials per deterministic substream

    void validate() const {
        if (trials < 1)
            throw core::invalid_argument_error("mc.trials must be at least 1");
        if (chunk < 1)
            throw core::invalid_argument_error("mc.chunk must be at least 1");
        if (workers < 0)
            throw core::invalid_argument_error("mc.workers must be nonnegative");
    }
};

struct MetricEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0; // metric events (outages or intercepts)
};

namespace detail {

// Run `mc.trials` Bernoulli trials split into fixed-size chunks.  Each chunk
// owns a random stream derived solely from (seed, chunk index), and chunk
// counts are combined by integer addition, so the total is identical for any
// worker count and any chunk-to-thread assignment.  `proto` is copied once
// per worker; each copy may keep scratch state across trials.
template <typename TrialFn>
std::uint64_t count_events(const McConfig& mc, const TrialFn& proto) {
    const std::uint64_t n_chunks = (mc.trials + mc.chunk - 1) / mc.chunk;
    unsigned workers = mc.workers > 0
                           ? static_cast<unsigned>(mc.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    if (static_cast<std::uint64_t>(workers) > n_chunks)
        workers = static_cast<unsigned>(n_chunks);

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> events{0};

    auto worker_body = [&]() {
        TrialFn trial = proto;
        for (;;) {
            const std::uint64_t idx = next_chunk.fetch_add(1);
            if (idx >= n_chunks)
                return;
            const std::uint64_t begin = idx * mc.chunk;
            const std::uint64_t count = std::min(mc.chunk, mc.trials - begin);
            rng::ChunkStream stream(mc.seed, idx);
            std::uint64_t local = 0;
            for (std::uint64_t i = 0; i < count; ++i)
                if (trial(stream))
                    ++local;
            events.fetch_add(local);
        }
    };

    if (workers <= 1) {
        worker_body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker_body);
        for (auto& t : pool)
            t.join();
    }
    return events.load();
}

inline MetricEstimate finish(std::uint64_t events, std::uint64_t trials) {
    MetricEstimate est;
    est.trials = trials;
    est.successes = events;
    est.p_hat = static_cast<double>(events) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
    return est;
}

// One outage trial.  Draw order is frozen (beacon->source, beacon->relay
// gains, first-hop gains, second-hop gains, then any selection draw) so that
// results are reproducible across versions of the calling code.
struct OpTrial {
    link::Scheme scheme = link::Scheme::Rrs;
    std::size_t fixed_index = 0; // 0-based relay used by the fixed-relay scheme
    bool random_relay = false;   // draw the fixed relay uniformly per trial
    int m = 1;
    double eps = 1.0;
    energy::EhConfig eh;
    double lam_bs = 1.0, lam_br = 1.0, lam_sr = 1.0, lam_rd = 1.0;
    double s2_sr = 0.0, s2_rd = 0.0;
    double n_sr = 1.0, n_rd = 1.0;
    iqi::IqiLinkGains g_sr, g_rd;

    std::vector<double> u_br, sinr1, sinr2; // per-relay scratch

    bool operator()(rng::ChunkStream& st) {
        u_br.resize(static_cast<std::size_t>(m));
        sinr1.resize(static_cast<std::size_t>(m));
        sinr2.resize(static_cast<std::size_t>(m));

        const double u_bs = st.exponential(lam_bs);
        for (int j = 0; j < m; ++j)
            u_br[static_cast<std::size_t>(j)] = st.exponential(lam_br);
        const double p_s = eh.source_power(u_bs);
        for (int j = 0; j < m; ++j) {
            const double x = st.exponential(lam_sr);
            sinr1[static_cast<std::size_t>(j)] = link::sinr(x, p_s, n_sr, s2_sr, g_sr);
        }
        for (int j = 0; j < m; ++j) {
            const double x = st.exponential(lam_rd);
            const double p_r = eh.relay_power(u_br[static_cast<std::size_t>(j)]);
            sinr2[static_cast<std::size_t>(j)] = link::sinr(x, p_r, n_rd, s2_rd, g_rd);
        }

        std::size_t c = fixed_index;
        switch (scheme) {
        case link::Scheme::Rrs:
            if (random_relay)
                c = st.uniform_index(static_cast<std::size_t>(m));
            break;
        case link::Scheme::Srs:
            c = link::select_srs(sinr1);
            break;
        case link::Scheme::Ors:
            c = link::select_ors(sinr1, sinr2);
            break;
        }
        return link::df_bottleneck(sinr1[c], sinr2[c]) < eps;
    }
};

// One intercept trial: the eavesdropper taps either the source transmission
// or a relay transmission, each powered by its own beacon link.
struct IpTrial {
    bool relay_mode = false;
    double eps = 1.0;
    energy::EhConfig eh;
    double lam_beacon = 1.0, lam_tap = 1.0;
    double s2_tap = 0.0, n_tap = 1.0;
    iqi::IqiLinkGains g_tap;

    bool operator()(rng::ChunkStream& st) {
        const double u = st.exponential(lam_beacon);
        const double x = st.exponential(lam_tap);
        const double power = relay_mode ? eh.relay_power(u) : eh.source_power(u);
        return link::sinr(x, power, n_tap, s2_tap, g_tap) > eps;
    }
};

} // namespace detail

// Simulated outage probability.  relay_index is 1-based and only consumed by
// the fixed-relay scheme.  With the beacon off every trial is an outage, so
// the estimate short-circuits to 1 without drawing.
inline MetricEstimate estimate_op(link::Scheme scheme, const channel::NetworkModel& model,
                                  const energy::EhConfig& eh, const iqi::IqiSet& gains,
                                  double r_th, const McConfig& mc, int relay_index = 1,
                                  bool rrs_random = false) {
    model.validate();
    eh.validate();
    mc.validate();
    if (relay_index < 1 || relay_index > model.m)
        throw core::invalid_argument_error("relay_index must lie in [1,m]");

    if (eh.p_b <= 0.0) {
        MetricEstimate est = detail::finish(mc.trials, mc.trials);
        est.std_error = 0.0;
        return est;
    }

    detail::OpTrial trial;
    trial.scheme = scheme;
    trial.fixed_index = static_cast<std::size_t>(relay_index - 1);
    trial.random_relay = rrs_random;
    trial.m = model.m;
    trial.eps = link::threshold_epsilon(r_th, eh.alpha);
    trial.eh = eh;
    trial.lam_bs = model.stats(channel::LinkClass::BeaconSource, eh.p_b).lambda;
    trial.lam_br = model.stats(channel::LinkClass::BeaconRelay, eh.p_b).lambda;
    const channel::LinkStats sr = model.stats(channel::LinkClass::SourceRelay, eh.p_b);
    const channel::LinkStats rd = model.stats(channel::LinkClass::RelayDestination, eh.p_b);
    trial.lam_sr = sr.lambda;
    trial.lam_rd = rd.lambda;
    trial.s2_sr = sr.sigma_e2;
    trial.s2_rd = rd.sigma_e2;
    trial.n_sr = sr.noise;
    trial.n_rd = rd.noise;
    trial.g_sr = gains.sr;
    trial.g_rd = gains.rd;

    return detail::finish(detail::count_events(mc, trial), mc.trials);
}

// Simulated intercept probability.  With the beacon off nothing transmits,
// so the estimate short-circuits to 0.
inline MetricEstimate estimate_ip(link::IpMode mode, const channel::NetworkModel& model,
                                  const energy::EhConfig& eh, const iqi::IqiSet& gains,
                                  double r_th, const McConfig& mc) {
    model.validate();
    eh.validate();
    mc.validate();

    if (eh.p_b <= 0.0) {
        MetricEstimate est = detail::finish(0, mc.trials);
        est.std_error = 0.0;
        return est;
    }

    detail::IpTrial trial;
    trial.relay_mode = (mode == link::IpMode::Relay);
    trial.eps = link::threshold_epsilon(r_th, eh.alpha);
    trial.eh = eh;
    const channel::LinkClass beacon = trial.relay_mode ? channel::LinkClass::BeaconRelay
                                                       : channel::LinkClass::BeaconSource;
    const channel::LinkClass tap = trial.relay_mode ? channel::LinkClass::RelayEavesdropper
                                                    : channel::LinkClass::SourceEavesdropper;
    trial.lam_beacon = model.stats(beacon, eh.p_b).lambda;
    const channel::LinkStats tap_stats = model.stats(tap, eh.p_b);
    trial.lam_tap = tap_stats.lambda;
    trial.s2_tap = tap_stats.sigma_e2;
    trial.n_tap = tap_stats.noise;
    trial.g_tap = trial.relay_mode ? gains.re : gains.se;

    return detail::finish(detail::count_events(mc, trial), mc.trials);
}

} // namespace mc
} // namespace wprs
