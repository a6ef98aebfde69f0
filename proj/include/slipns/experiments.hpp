#pragma once

#include <memory>

#include "slipns/config.hpp"
#include "slipns/contour.hpp"
#include "slipns/grid.hpp"
#include "slipns/norms.hpp"
#include "slipns/report.hpp"

namespace slipns {

// Common run plumbing derived from a config (grid sized to resolve the
// sqrt(nu) layer, contour, norm parameters).
struct RunSetup {
    double nu = 1e-3;
    double beta = 1.0;
    double beta0 = 0.25;
    double L = 120.0;
    int K = 0;
    int grid_n = 257;
    std::shared_ptr<const ZGrid> grid;
    ContourSpec contour;
    NormParams norms;
};

RunSetup make_setup(const RunConfig& cfg, double nu_override = -1.0);

ExperimentReport run_kernel_verification(const RunConfig& cfg);
ExperimentReport run_oracle_crosscheck(const RunConfig& cfg);
ExperimentReport run_inviscid_rate(const RunConfig& cfg);
ExperimentReport run_pointwise_bound(const RunConfig& cfg);
ExperimentReport run_stokes(const RunConfig& cfg);
ExperimentReport run_ns(const RunConfig& cfg);

// Dispatch by name ("kernel-check", "oracle-check", "inviscid-rate",
// "bound-check", "stokes-run", "ns-run"); empty name reads cfg "experiment".
ExperimentReport run_experiment(const RunConfig& cfg, const std::string& name = "");

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slipns
