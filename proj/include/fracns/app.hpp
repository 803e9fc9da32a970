#pragma once

#include "fracns/config.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace fracns {

/// simulate, nonlinear-decay, linear-decay, duhamel-check, proptest-lp,
/// proptest-bernstein, proptest-freqsplit, gronwall-check
const std::vector<std::string>& command_names();

struct Outcome {
    bool pass = false;
    nlohmann::json report;
};

/// Runs one subcommand and writes resolved_config.json, report.json and the
/// command's CSV files into `out`. Throws std::invalid_argument on an unknown
/// command; run-time failures (blow-up, fit errors) are reported with
/// pass = false and an "error" entry.
Outcome run_command(const std::string& name, const RunConfig& config, const std::filesystem::path& out);

/// Worker count: FRACNS_THREADS when set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Calls fn(i) for i in [0, count) on up to worker_count() threads. Work is
/// split by index, so results stored per index do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// printf("%.17g")
std::string format_double(double v);

} // namespace fracns
