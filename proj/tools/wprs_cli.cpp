// Command-line front end: load a JSON scenario, run the configured sweep with
// the requested evaluation modes, and emit one CSV table.
//
// Exit codes: 0 on success, 2 on configuration or usage errors, 3 when
// --strict is given and a validity rule (beacon off, unreachable SINR
// threshold) degenerated at least one row.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wprs/wprs.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw wprs::core::config_error(std::string("cannot parse ") + what + " '" + s + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage and intercept probability of a wireless-powered relay network"};

    std::string config_path, metric, schemes, modes, sweep, out_path;
    long long trials = -1, seed = -1, workers = -1, y_nodes = -1;
    bool strict = false;

    app.add_option("-c,--config", config_path, "JSON scenario file (defaults used if omitted)");
    app.add_option("--metric", metric, "op | ip_direct | ip_relay");
    app.add_option("--scheme", schemes, "comma list of rrs,srs,ors");
    app.add_option("--modes", modes, "comma list of mc,analytic,asymptotic");
    app.add_option("--sweep", sweep, "VAR:START:STOP:STEP");
    app.add_option("--trials", trials, "simulation trials per point");
    app.add_option("--seed", seed, "simulation master seed");
    app.add_option("--workers", workers, "simulation worker threads (0 = auto)");
    app.add_option("--y-nodes", y_nodes, "quadrature node count");
    app.add_option("-o,--out", out_path, "output CSV path (default: stdout)");
    app.add_flag("--strict", strict, "exit 3 if any row hit a validity rule");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        wprs::config::ConfigDocument doc =
            config_path.empty() ? wprs::config::ConfigDocument{}
                                : wprs::config::load_config_file(config_path);

        if (!metric.empty())
            doc.experiment.metric = wprs::config::parse_metric(metric);
        if (!schemes.empty()) {
            doc.experiment.schemes.clear();
            for (const std::string& s : split(schemes, ','))
                doc.experiment.schemes.push_back(wprs::config::parse_scheme(s));
        }
        if (!modes.empty()) {
            doc.experiment.modes.clear();
            for (const std::string& s : split(modes, ','))
                doc.experiment.modes.push_back(wprs::config::parse_mode(s));
        }
        if (!sweep.empty()) {
            const std::vector<std::string> parts = split(sweep, ':');
            if (parts.size() != 4)
                throw wprs::core::config_error("--sweep expects VAR:START:STOP:STEP");
            doc.experiment.sweep.var = wprs::config::parse_sweep_var(parts[0]);
            doc.experiment.sweep.start = parse_double(parts[1], "sweep start");
            doc.experiment.sweep.stop = parse_double(parts[2], "sweep stop");
            doc.experiment.sweep.step = parse_double(parts[3], "sweep step");
        }
        if (trials >= 0)
            doc.mc_cfg.trials = static_cast<std::uint64_t>(trials);
        if (seed >= 0)
            doc.mc_cfg.seed = static_cast<std::uint64_t>(seed);
        if (workers >= 0)
            doc.mc_cfg.workers = static_cast<int>(workers);
        if (y_nodes >= 0)
            doc.quad.y = static_cast<int>(y_nodes);
        if (!out_path.empty())
            doc.experiment.output = out_path;

        wprs::config::validate_document(doc);
        const wprs::experiment::RunResult result = wprs::experiment::run_experiment(doc);

        if (doc.experiment.output.empty()) {
            std::cout << result.csv;
        } else {
            std::ofstream out(doc.experiment.output, std::ios::binary);
            if (!out)
                throw wprs::core::config_error("cannot open output file '" +
                                               doc.experiment.output + "'");
            out << result.csv;
        }

        if (strict && result.any_note) {
            std::cerr << "strict: a validity rule degenerated at least one row\n";
            return 3;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
