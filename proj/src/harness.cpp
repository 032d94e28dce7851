// harness.cpp - deterministic slot-per-cell experiment execution
#include "marelay/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "marelay/baselines.hpp"
#include "marelay/channel.hpp"

namespace marelay {

const char* kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::single: return "single";
        case ExperimentKind::convergence: return "convergence";
        case ExperimentKind::sweep_power: return "sweep_power";
        case ExperimentKind::sweep_antennas: return "sweep_antennas";
        case ExperimentKind::sweep_region: return "sweep_region";
    }
    return "unknown";
}

ExperimentKind kind_from_name(const std::string& name) {
    for (ExperimentKind k : {ExperimentKind::single, ExperimentKind::convergence,
                             ExperimentKind::sweep_power, ExperimentKind::sweep_antennas,
                             ExperimentKind::sweep_region})
        if (name == kind_name(k)) return k;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

SystemConfig ExperimentSpec::config_for(double sweep_value) const {
    SystemConfig cfg = base;
    switch (kind) {
        case ExperimentKind::sweep_power:
            cfg.relay_power_budget = std::pow(10.0, sweep_value / 10.0);
            break;
        case ExperimentKind::sweep_antennas:
        case ExperimentKind::single:
        case ExperimentKind::convergence:
            cfg.n_antennas = static_cast<int>(std::lround(sweep_value));
            break;
        case ExperimentKind::sweep_region:
            cfg.region_size = sweep_value;
            break;
    }
    return cfg;
}

void ExperimentSpec::validate() const {
    if (sweep_values.empty())
        throw std::invalid_argument("ExperimentSpec: sweep_values must be nonempty");
    if (n_realizations < 1)
        throw std::invalid_argument("ExperimentSpec: n_realizations must be >= 1");
    if (schemes.empty()) throw std::invalid_argument("ExperimentSpec: schemes must be nonempty");
    for (const auto& s : schemes)
        if (s != "proposed" && s != "otpa" && s != "fpa")
            throw std::invalid_argument("ExperimentSpec: unknown scheme " + s);
    if (threads < 0) throw std::invalid_argument("ExperimentSpec: threads must be >= 0");
    if (kind != ExperimentKind::sweep_power && kind != ExperimentKind::sweep_region)
        for (double v : sweep_values)
            if (v != std::floor(v))
                throw std::invalid_argument(
                    "ExperimentSpec: antenna counts must be whole numbers");
    for (double v : sweep_values) config_for(v).validate();
}

namespace {

SolutionState run_scheme(const std::string& scheme, const SystemConfig& cfg,
                         const ChannelRealization& ch) {
    if (scheme == "proposed") return ao_solve(cfg, ch);
    if (scheme == "otpa") return otpa_solve(cfg, ch);
    return fpa_solve(cfg, ch);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const std::size_t n_sweeps = spec.sweep_values.size();
    const std::size_t n_real = static_cast<std::size_t>(spec.n_realizations);
    const std::size_t n_schemes = spec.schemes.size();
    const std::size_t n_cells = n_sweeps * n_real;

    ExperimentResult out;
    out.rows.resize(n_cells * n_schemes);
    if (spec.keep_traces) out.traces.resize(n_cells * n_schemes);

    // One task per (sweep value, realization); the channel is sampled once
    // per task and shared by the schemes so comparisons stay paired.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= n_cells) return;
            const std::size_t si = cell / n_real;
            const std::size_t ri = cell % n_real;
            const double sweep_value = spec.sweep_values[si];
            const SystemConfig cfg = spec.config_for(sweep_value);
            const std::uint64_t seed = derive_seed(spec.master_seed, ri);
            const ChannelRealization ch = sample_channel(cfg, seed);
            const std::uint64_t hash = channel_hash(ch);
            for (std::size_t ki = 0; ki < n_schemes; ++ki) {
                ResultRow row;
                row.kind = kind_name(spec.kind);
                row.sweep_value = sweep_value;
                row.scheme = spec.schemes[ki];
                row.realization = static_cast<int>(ri);
                row.seed = seed;
                row.channel_hash = hash;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    const SolutionState s = run_scheme(spec.schemes[ki], cfg, ch);
                    row.rate = s.rate;
                    row.snr = s.snr;
                    row.ao_iterations = s.iterations;
                    row.rank_residual = s.rank_residual;
                    row.status = "ok";
                    if (spec.keep_traces) {
                        RunTrace& tr = out.traces[cell * n_schemes + ki];
                        tr.sweep_value = sweep_value;
                        tr.scheme = spec.schemes[ki];
                        tr.realization = static_cast<int>(ri);
                        tr.rate_trace = s.trace;
                        tr.rx_positions = s.rx_positions;
                        tr.tx_positions = s.tx_positions;
                    }
                } catch (const std::exception& e) {
                    row.rate = std::numeric_limits<double>::quiet_NaN();
                    row.snr = std::numeric_limits<double>::quiet_NaN();
                    row.status = e.what();
                }
                row.wall_time_s =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                out.rows[cell * n_schemes + ki] = std::move(row);
            }
        }
    };

    std::size_t n_threads = spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                                             : std::thread::hardware_concurrency();
    n_threads = std::max<std::size_t>(1, std::min(n_threads, n_cells));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    std::vector<SummaryRow> out;
    auto find = [&out](const ResultRow& r) -> SummaryRow& {
        for (auto& s : out)
            if (s.kind == r.kind && s.sweep_value == r.sweep_value && s.scheme == r.scheme)
                return s;
        out.push_back({r.kind, r.sweep_value, r.scheme, 0, 0.0, 0.0});
        return out.back();
    };
    // Two passes: exact mean first, then the centered sum of squares.
    for (const auto& r : rows) {
        if (r.status != "ok") continue;
        SummaryRow& s = find(r);
        s.count += 1;
        s.mean_rate += r.rate;
    }
    for (auto& s : out) s.mean_rate = s.count ? s.mean_rate / s.count : 0.0;
    for (const auto& r : rows) {
        if (r.status != "ok") continue;
        SummaryRow& s = find(r);
        const double d = r.rate - s.mean_rate;
        s.stderr_rate += d * d;
    }
    for (auto& s : out)
        s.stderr_rate = s.count > 1
                            ? std::sqrt(s.stderr_rate / (s.count - 1)) / std::sqrt(double(s.count))
                            : 0.0;
    return out;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string csv_from_rows(const std::vector<ResultRow>& rows) {
    std::string s =
        "kind,sweep_value,scheme,realization,seed,channel_hash,rate,snr,ao_iterations,"
        "rank_residual,wall_time_s,status\n";
    char hexbuf[24];
    for (const auto& r : rows) {
        std::snprintf(hexbuf, sizeof(hexbuf), "%016llx",
                      static_cast<unsigned long long>(r.channel_hash));
        s += csv_field(r.kind) + ',' + fmt_double(r.sweep_value) + ',' + csv_field(r.scheme) +
             ',' + std::to_string(r.realization) + ',' + std::to_string(r.seed) + ',' + hexbuf +
             ',' + fmt_double(r.rate) + ',' + fmt_double(r.snr) + ',' +
             std::to_string(r.ao_iterations) + ',' + fmt_double(r.rank_residual) + ',' +
             fmt_double(r.wall_time_s) + ',' + csv_field(r.status) + '\n';
    }
    return s;
}

std::string csv_from_summary(const std::vector<SummaryRow>& rows) {
    std::string s = "kind,sweep_value,scheme,count,mean_rate,stderr_rate\n";
    for (const auto& r : rows)
        s += csv_field(r.kind) + ',' + fmt_double(r.sweep_value) + ',' + csv_field(r.scheme) +
             ',' + std::to_string(r.count) + ',' + fmt_double(r.mean_rate) + ',' +
             fmt_double(r.stderr_rate) + '\n';
    return s;
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    write_text(path, csv_from_rows(rows));
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    write_text(path, csv_from_summary(rows));
}

void write_traces_json(const std::string& path, const std::vector<RunTrace>& traces) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& t : traces) {
        nlohmann::json j;
        j["sweep_value"] = t.sweep_value;
        j["scheme"] = t.scheme;
        j["realization"] = t.realization;
        j["rate_trace"] = t.rate_trace;
        nlohmann::json rx = nlohmann::json::array(), tx = nlohmann::json::array();
        for (const auto& p : t.rx_positions) rx.push_back({p.x, p.y});
        for (const auto& p : t.tx_positions) tx.push_back({p.x, p.y});
        j["rx_positions"] = rx;
        j["tx_positions"] = tx;
        runs.push_back(std::move(j));
    }
    nlohmann::json root;
    root["runs"] = runs;
    write_text(path, root.dump(2) + "\n");
}

}  // namespace marelay
