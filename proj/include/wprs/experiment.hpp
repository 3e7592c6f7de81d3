#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "wprs/analytic.hpp"
#include "wprs/config.hpp"
#include "wprs/mc.hpp"

namespace wprs {
namespace experiment {

// One CSV row.  Fields that do not apply to a row's mode are zeroed (trials,
// seed and std_error on closed-form rows; y_nodes on simulation rows) and the
// scheme column is "-" for intercept metrics, which are scheme-independent.
struct Row {
    config::Metric metric = config::Metric::Op;
    std::string scheme = "-";
    config::Mode mode = config::Mode::Analytic;
    config::SweepVar var = config::SweepVar::PbDb;
    double sweep_value = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int y_nodes = 0;
    std::string note; // "", "no_power", or "ceiling"
};

struct RunResult {
    std::vector<Row> rows;
    std::string csv;
    bool any_note = false; // a validity rule fired somewhere in the run
};

namespace detail {

// Shortest decimal string that round-trips to the same double, so the CSV is
// both exact and free of artificial trailing digits.
inline std::string fmt_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Scenario-level validity note at one sweep point: the beacon being off or
// the metric's SINR ceiling sitting below the threshold makes every mode's
// value degenerate, so the note is shared by all rows of the point.
inline std::string point_note(const config::ScenarioInputs& s, config::Metric metric) {
    if (s.eh.p_b <= 0.0)
        return "no_power";
    const double eps = link::threshold_epsilon(s.r_th, s.eh.alpha);
    auto blocked = [eps](const iqi::IqiLinkGains& g) {
        return !iqi::sinr_ceiling(g).exceeds(eps);
    };
    switch (metric) {
    case config::Metric::Op:
        if (blocked(s.gains.sr) || blocked(s.gains.rd))
            return "ceiling";
        break;
    case config::Metric::IpDirect:
        if (blocked(s.gains.se))
            return "ceiling";
        break;
    case config::Metric::IpRelay:
        if (blocked(s.gains.re))
            return "ceiling";
        break;
    }
    return "";
}

inline Row make_row(const config::ConfigDocument& doc, config::Mode mode,
                    double sweep_value, const std::string& note) {
    Row r;
    r.metric = doc.experiment.metric;
    r.mode = mode;
    r.var = doc.experiment.sweep.var;
    r.sweep_value = sweep_value;
    r.note = note;
    if (mode == config::Mode::Mc) {
        r.trials = doc.mc_cfg.trials;
        r.seed = doc.mc_cfg.seed;
    } else if (mode == config::Mode::Analytic) {
        r.y_nodes = doc.quad.y;
    }
    return r;
}

} // namespace detail

inline std::string to_csv(const std::vector<Row>& rows) {
    std::string out =
        "metric,scheme,mode,sweep_var,sweep_value,value,stderr,trials,seed,y_nodes,note\n";
    for (const Row& r : rows) {
        out += config::metric_name(r.metric);
        out += ',';
        out += r.scheme;
        out += ',';
        out += config::mode_name(r.mode);
        out += ',';
        out += config::sweep_var_name(r.var);
        out += ',';
        out += detail::fmt_double(r.sweep_value);
        out += ',';
        out += detail::fmt_double(r.value);
        out += ',';
        out += detail::fmt_double(r.std_error);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.y_nodes);
        out += ',';
        out += r.note;
        out += '\n';
    }
    return out;
}

// Evaluate the configured sweep with every requested mode and scheme.  Row
// order is: sweep points outermost, then modes, then schemes, all in the
// order they were configured, so a given document always produces the same
// byte sequence.
inline RunResult run_experiment(const config::ConfigDocument& doc) {
    config::validate_document(doc);
    RunResult result;

    const std::vector<double> points = config::sweep_points(doc.experiment.sweep);
    for (double v : points) {
        const config::ScenarioInputs s =
            config::assemble(doc, doc.experiment.sweep.var, v);
        const std::string note = detail::point_note(s, doc.experiment.metric);
        if (!note.empty())
            result.any_note = true;

        for (config::Mode mode : doc.experiment.modes) {
            if (doc.experiment.metric == config::Metric::Op) {
                for (link::Scheme scheme : doc.experiment.schemes) {
                    Row r = detail::make_row(doc, mode, v, note);
                    r.scheme = link::scheme_name(scheme);
                    if (mode == config::Mode::Mc) {
                        const mc::MetricEstimate est =
                            mc::estimate_op(scheme, s.model, s.eh, s.gains, s.r_th,
                                            s.mc_cfg, s.relay_index, s.rrs_random);
                        r.value = est.p_hat;
                        r.std_error = est.std_error;
                    } else if (mode == config::Mode::Analytic) {
                        r.value = analytic::op_scheme(scheme, s.model, s.eh, s.gains,
                                                      s.r_th, s.quad);
                    } else {
                        r.value = analytic::op_asymptotic(scheme, s.model, s.eh,
                                                          s.gains, s.r_th);
                    }
                    result.rows.push_back(std::move(r));
                }
            } else {
                const link::IpMode ip_mode =
                    doc.experiment.metric == config::Metric::IpDirect
                        ? link::IpMode::Direct
                        : link::IpMode::Relay;
                Row r = detail::make_row(doc, mode, v, note);
                if (mode == config::Mode::Mc) {
                    const mc::MetricEstimate est =
                        mc::estimate_ip(ip_mode, s.model, s.eh, s.gains, s.r_th, s.mc_cfg);
                    r.value = est.p_hat;
                    r.std_error = est.std_error;
                } else {
                    r.value = analytic::ip_mode(ip_mode, s.model, s.eh, s.gains, s.r_th,
                                                s.quad);
                }
                result.rows.push_back(std::move(r));
            }
        }
    }

    result.csv = to_csv(result.rows);
    return result;
}

} // namespace experiment
} // namespace wprs
