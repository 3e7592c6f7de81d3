#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wprs/channel.hpp"
#include "wprs/core.hpp"
#include "wprs/energy.hpp"
#include "wprs/iqi.hpp"
#include "wprs/link.hpp"
#include "wprs/mc.hpp"
#include "wprs/quadrature.hpp"

namespace wprs {
namespace config {

using nlohmann::json;

// Evaluation routes a run may emit rows for.
enum class Mode { Mc, Analytic, Asymptotic };

inline const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Mc: return "mc";
    case Mode::Analytic: return "analytic";
    case Mode::Asymptotic: return "asymptotic";
    }
    return "?";
}

// Which scalar a sweep varies.
enum class SweepVar { PbDb, Xi, PhiDeg, Alpha, Sigma1, Sigma2, M, SigmaE2, Delta, RTh };

inline const char* sweep_var_name(SweepVar v) {
    switch (v) {
    case SweepVar::PbDb: return "pb_db";
    case SweepVar::Xi: return "xi";
    case SweepVar::PhiDeg: return "phi_deg";
    case SweepVar::Alpha: return "alpha";
    case SweepVar::Sigma1: return "sigma1";
    case SweepVar::Sigma2: return "sigma2";
    case SweepVar::M: return "m";
    case SweepVar::SigmaE2: return "sigma_e2";
    case SweepVar::Delta: return "delta";
    case SweepVar::RTh: return "r_th";
    }
    return "?";
}

inline SweepVar parse_sweep_var(const std::string& s) {
    for (SweepVar v : {SweepVar::PbDb, SweepVar::Xi, SweepVar::PhiDeg, SweepVar::Alpha,
                       SweepVar::Sigma1, SweepVar::Sigma2, SweepVar::M, SweepVar::SigmaE2,
                       SweepVar::Delta, SweepVar::RTh})
        if (s == sweep_var_name(v))
            return v;
    throw core::config_error("unknown sweep variable '" + s + "'");
}

enum class Metric { Op, IpDirect, IpRelay };

inline const char* metric_name(Metric m) {
    switch (m) {
    case Metric::Op: return "op";
    case Metric::IpDirect: return "ip_direct";
    case Metric::IpRelay: return "ip_relay";
    }
    return "?";
}

inline Metric parse_metric(const std::string& s) {
    if (s == "op") return Metric::Op;
    if (s == "ip_direct") return Metric::IpDirect;
    if (s == "ip_relay") return Metric::IpRelay;
    throw core::config_error("unknown metric '" + s + "'");
}

inline link::Scheme parse_scheme(const std::string& s) {
    if (s == "rrs") return link::Scheme::Rrs;
    if (s == "srs") return link::Scheme::Srs;
    if (s == "ors") return link::Scheme::Ors;
    throw core::config_error("unknown scheme '" + s + "'");
}

inline Mode parse_mode(const std::string& s) {
    if (s == "mc") return Mode::Mc;
    if (s == "analytic") return Mode::Analytic;
    if (s == "asymptotic") return Mode::Asymptotic;
    throw core::config_error("unknown mode '" + s + "'");
}

struct SweepSpec {
    SweepVar var = SweepVar::PbDb;
    double start = 0.0;
    double stop = 40.0;
    double step = 2.0;
};

struct ExperimentSpec {
    Metric metric = Metric::Op;
    std::vector<link::Scheme> schemes = {link::Scheme::Rrs, link::Scheme::Srs,
                                         link::Scheme::Ors};
    std::vector<Mode> modes = {Mode::Mc, Mode::Analytic};
    SweepSpec sweep;
    std::string output; // empty = stdout
};

// The full parsed configuration: network scenario plus run controls.
struct ConfigDocument {
    double pb_linear = 100.0; // loader accepts pb_db or pb_linear
    int m = 2;
    double r_th = 0.05;
    double alpha = 0.5;
    double sigma1 = 0.5, sigma2 = 0.5;
    double gamma1 = 10.0, gamma2 = 10.0;
    double beta = 3.0;
    double t_block = 1.0;
    double n_sr = 1.0, n_rd = 1.0, n_se = 1.0, n_re = 1.0;
    double d_bs = 1.0, d_br = 1.0, d_sr = 1.5, d_rd = 1.5, d_se = 2.0, d_re = 1.5;

    iqi::IqiMismatch iqi_base;
    std::optional<iqi::IqiMismatch> iqi_sr, iqi_rd, iqi_se, iqi_re;

    channel::CeeModel cee = channel::CeeModel::fixed(0.0);
    std::optional<channel::CeeModel> cee_eve;

    int relay_index = 1;
    bool rrs_random = false;

    mc::McConfig mc_cfg{1000000, 20260816, 0, 65536};
    quadrature::QuadratureConfig quad{200};
    ExperimentSpec experiment;
};

// Everything evaluators need at one sweep point.
struct ScenarioInputs {
    channel::NetworkModel model;
    energy::EhConfig eh;
    iqi::IqiSet gains;
    double r_th = 0.05;
    quadrature::QuadratureConfig quad{200};
    int relay_index = 1;
    bool rrs_random = false;
    mc::McConfig mc_cfg;
};

namespace detail {

inline void require_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw core::config_error(path + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                ok = true;
                break;
            }
        if (!ok)
            throw core::config_error("unknown key '" + item.key() + "' in " + path);
    }
}

inline double get_number(const json& j, const std::string& path, const char* key,
                         double fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_number())
        throw core::config_error(path + "." + key + " must be a number");
    return v.get<double>();
}

inline int get_int(const json& j, const std::string& path, const char* key, int fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw core::config_error(path + "." + key + " must be an integer");
    return v.get<int>();
}

inline std::uint64_t get_u64(const json& j, const std::string& path, const char* key,
                             std::uint64_t fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0))
        throw core::config_error(path + "." + key + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline bool get_bool(const json& j, const std::string& path, const char* key,
                     bool fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean())
        throw core::config_error(path + "." + key + " must be a boolean");
    return v.get<bool>();
}

inline std::string get_string(const json& j, const std::string& path, const char* key,
                              const std::string& fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_string())
        throw core::config_error(path + "." + key + " must be a string");
    return v.get<std::string>();
}

inline iqi::IqiMismatch parse_iqi(const json& j, const std::string& path,
                                  const iqi::IqiMismatch& base) {
    require_keys(j, path, {"xi_t", "phi_t_deg", "xi_r", "phi_r_deg"});
    iqi::IqiMismatch m = base;
    m.xi_t = get_number(j, path, "xi_t", base.xi_t);
    m.xi_r = get_number(j, path, "xi_r", base.xi_r);
    if (j.contains("phi_t_deg"))
        m.phi_t = iqi::degrees_to_radians(get_number(j, path, "phi_t_deg", 0.0));
    if (j.contains("phi_r_deg"))
        m.phi_r = iqi::degrees_to_radians(get_number(j, path, "phi_r_deg", 0.0));
    return m;
}

inline channel::CeeModel parse_cee(const json& j, const std::string& path) {
    require_keys(j, path, {"model", "sigma_e2", "delta"});
    const std::string model = get_string(j, path, "model", "fixed");
    if (model == "fixed") {
        if (j.contains("delta"))
            throw core::config_error(path + ": 'delta' is not a fixed-model field");
        return channel::CeeModel::fixed(get_number(j, path, "sigma_e2", 0.0));
    }
    if (model == "snr_dependent") {
        if (j.contains("sigma_e2"))
            throw core::config_error(path +
                                     ": 'sigma_e2' is not an snr_dependent-model field");
        if (!j.contains("delta"))
            throw core::config_error(path + ": snr_dependent model requires 'delta'");
        return channel::CeeModel::snr_dependent(get_number(j, path, "delta", 1.0));
    }
    throw core::config_error(path + ".model must be 'fixed' or 'snr_dependent'");
}

} // namespace detail

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Sweep points are start + i*step (never accumulated), so every point is
// reproducible bit-for-bit.  The stop value is included up to a small slack.
inline std::vector<double> sweep_points(const SweepSpec& s) {
    core::check_finite(s.start, "sweep.start");
    core::check_finite(s.stop, "sweep.stop");
    if (!(s.step > 0.0))
        throw core::config_error("sweep.step must be positive");
    if (s.stop < s.start)
        throw core::config_error("sweep.stop must not be below sweep.start");
    const double span = (s.stop - s.start) / s.step;
    const long long n = static_cast<long long>(std::floor(span + 1e-9)) + 1;
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        pts.push_back(s.start + static_cast<double>(i) * s.step);
    return pts;
}

// Apply one sweep value to a copy of the document's scenario fields and
// assemble the evaluator inputs.  IQI sweeps move the shared base front end;
// explicit per-link overrides keep their configured values.
inline ScenarioInputs assemble(const ConfigDocument& doc,
                               std::optional<SweepVar> var = std::nullopt,
                               double value = 0.0) {
    ConfigDocument d = doc;
    if (var) {
        switch (*var) {
        case SweepVar::PbDb:
            d.pb_linear = db_to_linear(value);
            break;
        case SweepVar::Xi:
            d.iqi_base.xi_t = value;
            d.iqi_base.xi_r = value;
            break;
        case SweepVar::PhiDeg:
            d.iqi_base.phi_t = iqi::degrees_to_radians(value);
            d.iqi_base.phi_r = iqi::degrees_to_radians(value);
            break;
        case SweepVar::Alpha:
            d.alpha = value;
            break;
        case SweepVar::Sigma1:
            d.sigma1 = value;
            break;
        case SweepVar::Sigma2:
            d.sigma2 = value;
            break;
        case SweepVar::M: {
            const double r = std::round(value);
            if (std::fabs(value - r) > 1e-9)
                throw core::config_error("sweep over m requires integer values");
            d.m = static_cast<int>(r);
            break;
        }
        case SweepVar::SigmaE2:
            d.cee = channel::CeeModel::fixed(value);
            break;
        case SweepVar::Delta:
            d.cee = channel::CeeModel::snr_dependent(value);
            break;
        case SweepVar::RTh:
            d.r_th = value;
            break;
        }
    }

    ScenarioInputs s;
    s.model.m = d.m;
    s.model.d_bs = d.d_bs;
    s.model.d_br = d.d_br;
    s.model.d_sr = d.d_sr;
    s.model.d_rd = d.d_rd;
    s.model.d_se = d.d_se;
    s.model.d_re = d.d_re;
    s.model.beta = d.beta;
    s.model.n_sr = d.n_sr;
    s.model.n_rd = d.n_rd;
    s.model.n_se = d.n_se;
    s.model.n_re = d.n_re;
    s.model.cee = d.cee;
    s.model.cee_eve = d.cee_eve;
    s.model.validate();

    s.eh.alpha = d.alpha;
    s.eh.sigma1 = d.sigma1;
    s.eh.sigma2 = d.sigma2;
    s.eh.gamma1 = d.gamma1;
    s.eh.gamma2 = d.gamma2;
    s.eh.p_b = d.pb_linear;
    s.eh.t_block = d.t_block;
    s.eh.validate();

    const iqi::IqiMismatch& base = d.iqi_base;
    s.gains.sr = iqi::link_gains(d.iqi_sr.value_or(base));
    s.gains.rd = iqi::link_gains(d.iqi_rd.value_or(base));
    s.gains.se = iqi::link_gains(d.iqi_se.value_or(base));
    s.gains.re = iqi::link_gains(d.iqi_re.value_or(base));

    s.r_th = d.r_th;
    core::check_nonnegative(s.r_th, "r_th");
    s.quad = d.quad;
    s.quad.validate();
    s.relay_index = d.relay_index;
    if (s.relay_index < 1 || s.relay_index > s.model.m)
        throw core::config_error("relay_index must lie in [1,m]");
    s.rrs_random = d.rrs_random;
    s.mc_cfg = d.mc_cfg;
    s.mc_cfg.validate();

    // Probe the estimated-link statistics so a degenerate estimation-error
    // variance is rejected up front rather than mid-run.
    if (s.eh.p_b > 0.0) {
        for (channel::LinkClass c :
             {channel::LinkClass::SourceRelay, channel::LinkClass::RelayDestination,
              channel::LinkClass::SourceEavesdropper, channel::LinkClass::RelayEavesdropper})
            s.model.estimated_gain_rate(c, s.eh.p_b);
    }
    return s;
}

inline void validate_document(const ConfigDocument& doc);

// Parse and validate a full configuration object.  Unknown keys anywhere are
// rejected so typos cannot silently fall back to defaults.  An empty object
// yields the reference scenario defaults.
inline ConfigDocument load_config(const json& raw) {
    using detail::get_bool;
    using detail::get_int;
    using detail::get_number;
    using detail::get_string;
    using detail::get_u64;
    using detail::require_keys;

    // A null value means "absent" (merge-patch convention), so an overlay can
    // remove a key instead of fighting the cross-field rules.
    json j = raw;
    if (j.is_object())
        for (auto it = j.begin(); it != j.end();) {
            if (it->is_null())
                it = j.erase(it);
            else
                ++it;
        }

    require_keys(j, "config",
                 {"pb_db", "pb_linear", "m", "r_th", "alpha", "sigma1", "sigma2",
                  "gamma1", "gamma2", "beta", "t_block", "noise", "distances", "iqi",
                  "iqi_sr", "iqi_rd", "iqi_se", "iqi_re", "cee", "cee_eve",
                  "relay_index", "rrs_random", "mc", "quad", "experiment"});

    ConfigDocument doc;

    if (j.contains("pb_db") && j.contains("pb_linear"))
        throw core::config_error("config: give pb_db or pb_linear, not both");
    if (j.contains("pb_db"))
        doc.pb_linear = db_to_linear(get_number(j, "config", "pb_db", 20.0));
    else if (j.contains("pb_linear")) {
        doc.pb_linear = get_number(j, "config", "pb_linear", 100.0);
        core::check_nonnegative(doc.pb_linear, "pb_linear");
    }

    doc.m = get_int(j, "config", "m", doc.m);
    doc.r_th = get_number(j, "config", "r_th", doc.r_th);
    doc.alpha = get_number(j, "config", "alpha", doc.alpha);
    doc.sigma1 = get_number(j, "config", "sigma1", doc.sigma1);
    doc.sigma2 = get_number(j, "config", "sigma2", doc.sigma2);
    doc.gamma1 = get_number(j, "config", "gamma1", doc.gamma1);
    doc.gamma2 = get_number(j, "config", "gamma2", doc.gamma2);
    doc.beta = get_number(j, "config", "beta", doc.beta);
    doc.t_block = get_number(j, "config", "t_block", doc.t_block);

    if (j.contains("noise")) {
        const json& n = j.at("noise");
        if (n.is_number()) {
            const double v = n.get<double>();
            doc.n_sr = doc.n_rd = doc.n_se = doc.n_re = v;
        } else {
            require_keys(n, "noise", {"sr", "rd", "se", "re"});
            doc.n_sr = get_number(n, "noise", "sr", doc.n_sr);
            doc.n_rd = get_number(n, "noise", "rd", doc.n_rd);
            doc.n_se = get_number(n, "noise", "se", doc.n_se);
            doc.n_re = get_number(n, "noise", "re", doc.n_re);
        }
    }

    if (j.contains("distances")) {
        const json& dd = j.at("distances");
        require_keys(dd, "distances", {"bs", "br", "sr", "rd", "se", "re"});
        doc.d_bs = get_number(dd, "distances", "bs", doc.d_bs);
        doc.d_br = get_number(dd, "distances", "br", doc.d_br);
        doc.d_sr = get_number(dd, "distances", "sr", doc.d_sr);
        doc.d_rd = get_number(dd, "distances", "rd", doc.d_rd);
        doc.d_se = get_number(dd, "distances", "se", doc.d_se);
        doc.d_re = get_number(dd, "distances", "re", doc.d_re);
    }

    if (j.contains("iqi"))
        doc.iqi_base = detail::parse_iqi(j.at("iqi"), "iqi", iqi::IqiMismatch{});
    if (j.contains("iqi_sr"))
        doc.iqi_sr = detail::parse_iqi(j.at("iqi_sr"), "iqi_sr", doc.iqi_base);
    if (j.contains("iqi_rd"))
        doc.iqi_rd = detail::parse_iqi(j.at("iqi_rd"), "iqi_rd", doc.iqi_base);
    if (j.contains("iqi_se"))
        doc.iqi_se = detail::parse_iqi(j.at("iqi_se"), "iqi_se", doc.iqi_base);
    if (j.contains("iqi_re"))
        doc.iqi_re = detail::parse_iqi(j.at("iqi_re"), "iqi_re", doc.iqi_base);

    if (j.contains("cee"))
        doc.cee = detail::parse_cee(j.at("cee"), "cee");
    if (j.contains("cee_eve"))
        doc.cee_eve = detail::parse_cee(j.at("cee_eve"), "cee_eve");

    doc.relay_index = get_int(j, "config", "relay_index", doc.relay_index);
    doc.rrs_random = get_bool(j, "config", "rrs_random", doc.rrs_random);

    if (j.contains("mc")) {
        const json& m = j.at("mc");
        require_keys(m, "mc", {"trials", "seed", "workers", "chunk"});
        doc.mc_cfg.trials = get_u64(m, "mc", "trials", doc.mc_cfg.trials);
        doc.mc_cfg.seed = get_u64(m, "mc", "seed", doc.mc_cfg.seed);
        doc.mc_cfg.workers = get_int(m, "mc", "workers", doc.mc_cfg.workers);
        doc.mc_cfg.chunk = get_u64(m, "mc", "chunk", doc.mc_cfg.chunk);
    }

    if (j.contains("quad")) {
        const json& q = j.at("quad");
        require_keys(q, "quad", {"y"});
        doc.quad.y = get_int(q, "quad", "y", doc.quad.y);
    }

    if (j.contains("experiment")) {
        const json& e = j.at("experiment");
        require_keys(e, "experiment", {"metric", "schemes", "modes", "sweep", "output"});
        doc.experiment.metric = parse_metric(get_string(e, "experiment", "metric", "op"));
        if (e.contains("schemes")) {
            const json& arr = e.at("schemes");
            if (!arr.is_array() || arr.empty())
                throw core::config_error("experiment.schemes must be a non-empty array");
            doc.experiment.schemes.clear();
            for (const auto& s : arr) {
                if (!s.is_string())
                    throw core::config_error("experiment.schemes entries must be strings");
                doc.experiment.schemes.push_back(parse_scheme(s.get<std::string>()));
            }
        }
        if (e.contains("modes")) {
            const json& arr = e.at("modes");
            if (!arr.is_array() || arr.empty())
                throw core::config_error("experiment.modes must be a non-empty array");
            doc.experiment.modes.clear();
            for (const auto& s : arr) {
                if (!s.is_string())
                    throw core::config_error("experiment.modes entries must be strings");
                doc.experiment.modes.push_back(parse_mode(s.get<std::string>()));
            }
        }
        if (e.contains("sweep")) {
            const json& sw = e.at("sweep");
            require_keys(sw, "experiment.sweep", {"var", "start", "stop", "step"});
            doc.experiment.sweep.var =
                parse_sweep_var(get_string(sw, "experiment.sweep", "var", "pb_db"));
            doc.experiment.sweep.start =
                get_number(sw, "experiment.sweep", "start", doc.experiment.sweep.start);
            doc.experiment.sweep.stop =
                get_number(sw, "experiment.sweep", "stop", doc.experiment.sweep.stop);
            doc.experiment.sweep.step =
                get_number(sw, "experiment.sweep", "step", doc.experiment.sweep.step);
        }
        doc.experiment.output = get_string(e, "experiment", "output", "");
    }

    validate_document(doc);
    return doc;
}

// Cross-field validation, including a dry assembly of every sweep point so a
// run cannot fail halfway through.
inline void validate_document(const ConfigDocument& doc) {
    for (std::size_t i = 0; i < doc.experiment.schemes.size(); ++i)
        for (std::size_t k = i + 1; k < doc.experiment.schemes.size(); ++k)
            if (doc.experiment.schemes[i] == doc.experiment.schemes[k])
                throw core::config_error("experiment.schemes contains a duplicate");
    for (std::size_t i = 0; i < doc.experiment.modes.size(); ++i)
        for (std::size_t k = i + 1; k < doc.experiment.modes.size(); ++k)
            if (doc.experiment.modes[i] == doc.experiment.modes[k])
                throw core::config_error("experiment.modes contains a duplicate");

    const bool wants_asymptotic =
        std::find(doc.experiment.modes.begin(), doc.experiment.modes.end(),
                  Mode::Asymptotic) != doc.experiment.modes.end();
    if (wants_asymptotic) {
        if (doc.experiment.metric != Metric::Op)
            throw core::config_error("asymptotic mode applies only to the op metric");
        const bool sweep_forces_fixed = doc.experiment.sweep.var == SweepVar::SigmaE2;
        const bool sweep_forces_snr = doc.experiment.sweep.var == SweepVar::Delta;
        if (sweep_forces_snr ||
            (!sweep_forces_fixed && doc.cee.kind != channel::CeeModel::Kind::Fixed))
            throw core::config_error(
                "asymptotic mode requires the fixed estimation-error model");
    }

    const std::vector<double> pts = sweep_points(doc.experiment.sweep);
    for (double v : pts) {
        try {
            assemble(doc, doc.experiment.sweep.var, v);
        } catch (const core::config_error&) {
            throw;
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "sweep point " << sweep_var_name(doc.experiment.sweep.var) << "=" << v
               << " is invalid: " << e.what();
            throw core::config_error(os.str());
        }
    }
}

inline ConfigDocument load_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw core::config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return load_config(j);
}

inline ConfigDocument load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw core::config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

} // namespace config
} // namespace wprs
