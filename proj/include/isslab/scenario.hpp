#pragma once

#include "isslab/metrics.hpp"
#include "isslab/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isslab {

inline constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputSpec {
    enum class Type { Zero, Constant, RandomPiecewise, File };
    Type type = Type::Zero;
    double constant_value = 0.0;
    int intervals = 1;
    double amplitude = 1.0;
    std::string path;
};

struct ScenarioConfig {
    std::string scenario;
    double a = 1.0;
    double lf = 0.5;
    int n_modes = 64;
    int m_grid = 256;
    double t_final = 1.0;
    double step = 1e-3;
    double t0 = 1.0;
    std::vector<double> q_list;
    std::vector<int> n_list;
    std::uint64_t seed = 1;
    InputSpec input;
    std::string output_dir = "out";
    int x0_mode = 0;
    double x0_amplitude = 1.0;

    /// Strict parse: unknown keys and type mismatches raise ConfigError.
    static ScenarioConfig from_file(const std::string& path);
    static ScenarioConfig from_json_text(const std::string& text, const std::string& origin);

    std::string to_json_text() const;
};

InputSignal build_input(const ScenarioConfig& cfg);

struct RunResult {
    int status = 0;  // 0 ok, 3 numerical failure
    std::string message;
    std::vector<std::string> artifacts;
};

/// Full scenario run: trajectory CSV, certificate JSON, scan JSON (when q/N
/// lists are present) and a manifest, all under the output directory
/// (overridden by ISS_LAB_OUT).
RunResult run_scenario(const ScenarioConfig& cfg);

/// Scan-only entry point: gains over qList x NList plus witnesses.
RunResult run_scan(const ScenarioConfig& cfg);

std::string resolve_output_dir(const ScenarioConfig& cfg);

struct WeakNormRow {
    double t;
    double x_norm;       // X = L^2
    double weak_norm;    // X_{-1/2}
};

std::vector<WeakNormRow> dirichlet_weak_state_norms(const SpectralOperator& op,
                                                    const Trajectory& traj);

struct CriterionResult {
    std::string id;
    std::string description;
    std::string expected;
    std::string measured;
    std::string tolerance;
    bool pass = false;
};

/// Runs the acceptance experiments (criteria 1-9 plus the determinism check).
/// `only` restricts to one criterion id; empty string runs all.
std::vector<CriterionResult> run_acceptance(int jobs = 1, const std::string& only = "");

/// Pretty table + pass/fail summary; returns true when every row passes.
bool print_acceptance(const std::vector<CriterionResult>& rows);

}  // namespace isslab
