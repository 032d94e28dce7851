// main.cpp - simulation CLI around the experiment harness
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "marelay/harness.hpp"

namespace {

using marelay::ExperimentKind;
using marelay::ExperimentSpec;

struct CliValues {
    std::uint64_t seed = 1;
    int realizations = -1;  // <0: use the subcommand default
    int antennas = 6;
    double region = 3.0;
    double ps_db = 10.0;
    double ptot_db = 10.0;
    int paths = 5;
    double min_dist = 0.5;
    std::vector<std::string> schemes;
    std::vector<double> sweep;
    std::string out;
    std::string config_path;
    int threads = 0;
    bool traces = false;
};

void add_common_flags(CLI::App* cmd, CliValues& v) {
    cmd->add_option("--seed", v.seed, "master RNG seed");
    cmd->add_option("--realizations", v.realizations, "channel realizations per sweep value");
    cmd->add_option("--antennas", v.antennas, "relay antenna count N");
    cmd->add_option("--region", v.region, "region side in wavelengths");
    cmd->add_option("--ps-db", v.ps_db, "source power in dB");
    cmd->add_option("--ptot-db", v.ptot_db, "relay power budget in dB");
    cmd->add_option("--paths", v.paths, "paths per hop (L_r = L_t)");
    cmd->add_option("--min-dist", v.min_dist, "min antenna spacing in wavelengths");
    cmd->add_option("--schemes", v.schemes, "schemes: proposed, otpa, fpa")->delimiter(',');
    cmd->add_option("--sweep", v.sweep, "sweep values (kind-specific units)")->delimiter(',');
    cmd->add_option("--out", v.out, "output path prefix");
    cmd->add_option("--config", v.config_path, "JSON config file (flags override it)");
    cmd->add_option("--threads", v.threads, "worker threads (0 = auto)");
    cmd->add_flag("--traces", v.traces, "also write per-run traces JSON");
}

// Config file fills any value the command line left untouched.
void apply_config_file(const CLI::App& cmd, CliValues& v) {
    if (v.config_path.empty()) return;
    std::ifstream f(v.config_path);
    if (!f) throw std::runtime_error("cannot open config file: " + v.config_path);
    nlohmann::json j;
    f >> j;
    auto unset = [&cmd](const char* flag) { return cmd.count(flag) == 0; };
    if (j.contains("seed") && unset("--seed")) v.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("realizations") && unset("--realizations"))
        v.realizations = j["realizations"].get<int>();
    if (j.contains("antennas") && unset("--antennas")) v.antennas = j["antennas"].get<int>();
    if (j.contains("region") && unset("--region")) v.region = j["region"].get<double>();
    if (j.contains("ps_db") && unset("--ps-db")) v.ps_db = j["ps_db"].get<double>();
    if (j.contains("ptot_db") && unset("--ptot-db")) v.ptot_db = j["ptot_db"].get<double>();
    if (j.contains("paths") && unset("--paths")) v.paths = j["paths"].get<int>();
    if (j.contains("min_dist") && unset("--min-dist")) v.min_dist = j["min_dist"].get<double>();
    if (j.contains("schemes") && unset("--schemes"))
        v.schemes = j["schemes"].get<std::vector<std::string>>();
    if (j.contains("sweep") && unset("--sweep")) v.sweep = j["sweep"].get<std::vector<double>>();
    if (j.contains("out") && unset("--out")) v.out = j["out"].get<std::string>();
    if (j.contains("threads") && unset("--threads")) v.threads = j["threads"].get<int>();
    if (j.contains("traces") && unset("--traces")) v.traces = j["traces"].get<bool>();
}

ExperimentSpec make_spec(ExperimentKind kind, const CliValues& v) {
    ExperimentSpec spec;
    spec.kind = kind;
    spec.base.n_antennas = v.antennas;
    spec.base.n_paths_rx = v.paths;
    spec.base.n_paths_tx = v.paths;
    spec.base.region_size = v.region;
    spec.base.min_antenna_dist = v.min_dist;
    spec.base.source_power = std::pow(10.0, v.ps_db / 10.0);
    spec.base.relay_power_budget = std::pow(10.0, v.ptot_db / 10.0);
    spec.master_seed = v.seed;
    spec.threads = v.threads;
    spec.keep_traces = v.traces || kind == ExperimentKind::convergence;
    if (!v.schemes.empty()) spec.schemes = v.schemes;

    if (!v.sweep.empty()) {
        spec.sweep_values = v.sweep;
    } else {
        switch (kind) {
            case ExperimentKind::single:
                spec.sweep_values = {double(v.antennas)};
                break;
            case ExperimentKind::convergence:
                spec.sweep_values = {4.0, 6.0, 8.0};
                break;
            case ExperimentKind::sweep_power:
                spec.sweep_values = {0.0, 5.0, 10.0, 15.0, 20.0};
                break;
            case ExperimentKind::sweep_antennas:
                spec.sweep_values = {2.0, 4.0, 6.0, 8.0};
                break;
            case ExperimentKind::sweep_region:
                spec.sweep_values = {1.0, 2.0, 3.0, 4.0};
                break;
        }
    }
    int default_real = 100;
    if (kind == ExperimentKind::single) default_real = 1;
    if (kind == ExperimentKind::convergence) default_real = 20;
    spec.n_realizations = v.realizations >= 0 ? v.realizations : default_real;
    return spec;
}

int run_kind(ExperimentKind kind, const CLI::App& cmd, CliValues& v) {
    apply_config_file(cmd, v);
    const ExperimentSpec spec = make_spec(kind, v);
    spec.validate();

    const marelay::ExperimentResult res = marelay::run_experiment(spec);
    const auto summary = marelay::summarize(res.rows);

    const std::string prefix = v.out.empty() ? std::string(marelay::kind_name(kind)) : v.out;
    marelay::write_csv(prefix + ".csv", res.rows);
    marelay::write_summary_csv(prefix + ".summary.csv", summary);
    if (spec.keep_traces) marelay::write_traces_json(prefix + ".traces.json", res.traces);

    std::cout << marelay::csv_from_summary(summary);
    std::size_t failures = 0;
    for (const auto& r : res.rows)
        if (r.status != "ok") ++failures;
    if (failures) {
        std::cerr << failures << " of " << res.rows.size() << " runs failed; see " << prefix
                  << ".csv\n";
    }
    std::cerr << "wrote " << prefix << ".csv (" << res.rows.size() << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Movable-antenna AF relay simulations"};
    app.require_subcommand(1);

    struct Sub {
        ExperimentKind kind;
        CLI::App* cmd;
        CliValues values;
    };
    std::vector<std::pair<ExperimentKind, const char*>> kinds = {
        {ExperimentKind::single, "one configuration, one or more realizations"},
        {ExperimentKind::convergence, "iteration traces across antenna counts"},
        {ExperimentKind::sweep_power, "rate vs relay power budget (dB)"},
        {ExperimentKind::sweep_antennas, "rate vs antenna count"},
        {ExperimentKind::sweep_region, "rate vs region size (wavelengths)"},
    };
    std::vector<Sub> subs;
    subs.reserve(kinds.size());
    for (auto& [kind, help] : kinds) {
        std::string name = marelay::kind_name(kind);
        for (auto& c : name)
            if (c == '_') c = '-';
        subs.push_back({kind, app.add_subcommand(name, help), {}});
        add_common_flags(subs.back().cmd, subs.back().values);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // helped or usage error
    }

    try {
        for (auto& sub : subs)
            if (sub.cmd->parsed()) return run_kind(sub.kind, *sub.cmd, sub.values);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
