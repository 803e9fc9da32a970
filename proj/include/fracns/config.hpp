#pragma once

#include "fracns/grid.hpp"
#include "fracns/initial_data.hpp"
#include "fracns/integrator.hpp"
#include "fracns/params.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fracns {

struct ObservablesSpec {
    double s = 2.0;                                // regularity of E(0) and E(T)
    std::vector<double> sigma_grid{0.0, 1.0, 2.0};
    std::optional<double> sigma0;                  // default: midpoint of the admissible interval
    std::optional<double> beta3;                   // default: 0.05 min(kappa, mu)
    double r0 = 1.0;
    double R0 = 4.0;
    std::optional<std::pair<double, double>> fit_window;  // default: torus window
    double tolerance = 0.05;
    double bootstrap_factor = 4.0;
    double eta = 1e-2;                             // smallness threshold on E(0)
    double dissipation_change = 1e-2;              // over the last decade of time
    std::vector<double> c_grid;                    // empty: 2 mu r0^{2 alpha} 2^{-k}
    double C_max = 100.0;
    double plateau_max = 1.5;
};

struct LinearDecaySpec {
    double t1 = 1e2;
    double t2 = 1e4;
    int samples = 41;
    int dim = 3;
    std::string profile = "bump";                  // bump | ball
    double radius = 1.0;
    std::vector<double> weights{1.0, 1.0, 1.0};    // rho, longitudinal, solenoidal
};

struct DuhamelSpec {
    double tolerance = 1e-4;
    double min_ratio = 3.5;
};

struct ProptestSpec {
    int trials = 1000;
    int max_mode = 12;                  // band limit of random fields
    int cj_trials = 8;
    double cj_sigma = 1.0;
    double cj_max_deviation = 2.0;
};

struct RunConfig {
    std::uint64_t seed = 1;
    GridSpec grid;
    double A = 0.5, gamma = 2.0, mu = 1.0, alpha = 0.75;
    InitialDataSpec initial{.amplitude = 1e-3, .target_E0 = 1e-6, .width = 0.3};
    TimeStepSpec time = [] {
        TimeStepSpec t;
        t.t_end = 10.0;
        t.output_interval = 0.025;
        return t;
    }();
    ObservablesSpec observables;
    LinearDecaySpec linear_decay;
    DuhamelSpec duhamel;
    ProptestSpec proptest;
    std::string out_dir = "out";

    FluidParams params() const { return derive_constants(A, gamma, mu, alpha); }
    double sigma0() const;
    double beta3() const;
};

/// Every key with its default value; optional entries are null.
nlohmann::json default_config_json();

/// Merges `user` into the defaults, applies the dot-path overrides
/// ("time.t_end=5", values parsed as JSON when possible) and validates.
/// Throws ConfigError naming the field on unknown keys, wrong types or
/// violated constraints.
RunConfig resolve_config(const nlohmann::json& user, const std::vector<std::string>& overrides = {});

/// Reads a JSON file and resolves it. Throws ConfigError when the file is
/// missing or malformed.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// The fully resolved configuration, defaults included.
nlohmann::json to_json(const RunConfig& c);

/// Box length from a number or a string "<a>pi" / "<a>pi*<b>" / "pi".
double parse_length(const nlohmann::json& v);

} // namespace fracns
