// harness.hpp - batch experiment runner with paired channel realizations
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "marelay/types.hpp"

namespace marelay {

enum class ExperimentKind { single, convergence, sweep_power, sweep_antennas, sweep_region };

const char* kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

// A batch over sweep_values x realizations x schemes. Realization i uses the
// channel seed derive_seed(master_seed, i) for every sweep value and scheme,
// so comparisons are paired. Sweep values are interpreted per kind: relay
// power budget in dB (sweep_power), antenna count (sweep_antennas and, for
// column consistency, single/convergence) or region side in wavelengths
// (sweep_region).
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::single;
    SystemConfig base;
    std::vector<double> sweep_values;
    int n_realizations = 100;
    std::uint64_t master_seed = 1;
    std::vector<std::string> schemes = {"proposed", "otpa", "fpa"};
    int threads = 0;  // 0 = hardware concurrency
    bool keep_traces = false;

    void validate() const;  // throws std::invalid_argument
    SystemConfig config_for(double sweep_value) const;
};

struct ResultRow {
    std::string kind;
    double sweep_value = 0.0;
    std::string scheme;
    int realization = 0;
    std::uint64_t seed = 0;
    std::uint64_t channel_hash = 0;
    double rate = 0.0;
    double snr = 0.0;
    int ao_iterations = 0;
    double rank_residual = 0.0;
    double wall_time_s = 0.0;
    std::string status;  // "ok" or an error description
};

struct RunTrace {
    double sweep_value = 0.0;
    std::string scheme;
    int realization = 0;
    std::vector<double> rate_trace;
    PositionSet rx_positions;
    PositionSet tx_positions;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<RunTrace> traces;  // filled only when spec.keep_traces
};

// Runs every (sweep value, realization, scheme) cell; a failed cell records
// its error in `status` (rate/snr NaN) without aborting the batch. Row order
// is deterministic: sweep value, then realization, then scheme, regardless
// of thread count.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct SummaryRow {
    std::string kind;
    double sweep_value = 0.0;
    std::string scheme;
    int count = 0;  // rows with status "ok"
    double mean_rate = 0.0;
    double stderr_rate = 0.0;  // sample stddev / sqrt(count); 0 for count < 2
};

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

// Lower-snake-case headers; strings are quoted only when they contain commas.
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
void write_traces_json(const std::string& path, const std::vector<RunTrace>& traces);

std::string csv_from_rows(const std::vector<ResultRow>& rows);
std::string csv_from_summary(const std::vector<SummaryRow>& rows);

}  // namespace marelay
