#pragma once

#include "slipns/biot_savart.hpp"
#include "slipns/semigroup.hpp"

namespace slipns {

// Nonlinear evolution by Picard iteration of the Duhamel fixed point,
// restarted on macro substeps.
struct NsOptions {
    double nu = 1e-3;
    double slip_exponent = 1.0;
    double T = 0.25;
    int steps = 16;  // macro steps over [0, T]
    double picard_tol = 1e-10;
    int picard_max = 25;
    TimeLadder ladder = TimeLadder::make();
    ContourSpec contour{};
    double rho0 = 0.5;   // initial analyticity radius (diagnostics)
    double gamma = 1.0;  // radius decay rate  rho(t) = rho0 - gamma t
    double tail_tol = 1e-8;
    NormParams norms{};  // beta0, P of the tracked boundary-layer norm
};

struct NsStepInfo {
    double t_end = 0.0;
    int picard_iters = 0;
    double contraction = 0.0;  // worst successive-delta ratio within the step
    double bc_residual_rel = 0.0;
};

struct NsDiagnostics {
    std::vector<NsStepInfo> steps;
    std::vector<double> analytic_l1;  // e^{rho(t)|a|}-weighted L1 series at outputs
    std::vector<double> bl_series;    // boundary-layer analytic series at outputs
    std::vector<double> wall_max;     // max_x |w(t, x, 0)|
};

struct NsResult {
    std::vector<double> times;
    std::vector<SpectralField> trajectory;
    NsDiagnostics diag;
};

// N = u . grad w with u from the stream function; products are formed on a
// 3/2-oversampled physical grid and truncated back to K modes.
SpectralField nonlinear_term(const SpectralField& w, const CellQuadrature& cq);

// Single restarted-Duhamel step with Picard iteration; exposed for tests.
SpectralField ns_step(StokesEvolver& ev, const SpectralField& w, double t0, double dt,
                      const NsOptions& opt, NsStepInfo& info);

NsResult solve_ns(const SpectralField& omega0, const NsOptions& opt,
                  const std::vector<double>& output_times);

// max over x of |w(t, x, 0)| evaluated from the mode traces at the wall
double wall_trace_max(const SpectralField& w);

struct NormTrack {
    std::vector<double> a_series;
    std::vector<double> bl_series;
    bool flagged = false;  // grew beyond 10x its initial value
};

// rho(t) = rho0 - gamma t weighted mode-L1 series plus the boundary-layer
// analogue; rejects configurations whose radius closes within the window.
NormTrack track_analytic_norms(const std::vector<double>& times,
                               const std::vector<SpectralField>& traj, double rho0, double gamma,
                               double nu, const NormParams& base);

}  // namespace slipns
