#pragma once

#include <string>
#include <vector>

#include "fde/geometry.hpp"

namespace fde {

enum class Pipeline { sweep, reconstruct, threshold, verify_oracles, roundtrip };

/// Fully validated experiment description loaded from the sectioned
/// key-value config format (see docs in the repository README).
struct ExperimentConfig {
    ProblemConfig problem;
    ProbeConfig probe;
    std::vector<double> tau_schedule;
    std::vector<double> T_values;
    Pipeline pipeline = Pipeline::sweep;
    std::string out_dir = "out";
    int workers = 1;
    double solver_tol = 1e-10;
    // time-domain (roundtrip) parameters
    double t_max = 12.0;
    int n_times = 1201;
    double s_max = 30.0;
    int gauss_order = 10;
    std::vector<double> roundtrip_taus = {2.0, 3.0, 5.0};
};

ExperimentConfig load_config(const std::string& path);

Pipeline pipeline_from_string(const std::string& name);

/// Executes the selected pipeline, writing CSV artifacts into out_dir.
/// Returns the process exit code (0 ok, 2 config error, 3 numerical error).
int run_experiment(const ExperimentConfig& config);

}  // namespace fde
