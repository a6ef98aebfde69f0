#pragma once

#include <functional>
#include <map>
#include <memory>

#include "slipns/field.hpp"
#include "slipns/kernel.hpp"
#include "slipns/norms.hpp"

namespace slipns {

using ForcingFn = std::function<SpectralField(double)>;

struct StokesProblem {
    SpectralField omega0;
    ForcingFn forcing;  // empty = homogeneous
    double nu = 1e-3;
    double slip_exponent = 1.0;
    std::vector<double> output_times;
};

// e^{nu tau B} for all modes |alpha| <= K at one elapsed time tau. The heat
// part acts through half-space Gaussian product quadrature (shared across
// modes up to the e^{-alpha^2 nu tau} factor); the residual part acts
// through its contour factorization in O(n_nodes * n) per mode.
class StokesPropagator {
  public:
    StokesPropagator(double tau, double nu, double beta, int K, std::shared_ptr<const ZGrid> grid,
                     const CellQuadrature& cq, const ContourSpec& spec);

    double tau() const { return tau_; }
    void apply_mode(int alpha, std::span<const Complex> in, std::span<Complex> out) const;
    SpectralField apply(const SpectralField& w) const;

  private:
    struct ModeData {
        std::vector<Complex> e;   // nq*n fused exp(lambda tau - mu z_i)
        std::vector<Complex> v;   // nq*n exponential functionals int e^{-mu y} l_j
        std::vector<Complex> ca;  // nq: A' * dweight
        std::vector<Complex> cb;  // nq: B' * dweight
        std::vector<double> wa;   // n: functional int e^{-a y} l_j
        double damp = 1.0;        // e^{-alpha^2 nu tau}
    };

    double tau_, nu_, beta_;
    int K_;
    std::size_t n_;
    std::vector<double> heat_;  // n*n Gaussian product weights (alpha = 0)
    std::vector<ModeData> modes_;
};

// Substep quadrature nodes for the Duhamel convolution, as fractions of the
// step: geometric refinement toward sigma = 0 plus a uniform tail. The
// sigma integral uses endpoint product quadrature exact on {1, sqrt(sigma)}.
struct TimeLadder {
    std::vector<double> fractions;  // ascending, last element 1
    static TimeLadder make(int geometric_levels = 7, int uniform_cells = 4);
};

struct StokesSolveOptions {
    int steps = 16;  // uniform macro steps between consecutive output times
    TimeLadder ladder = TimeLadder::make();
};

// Propagator cache + Duhamel stepper shared by the linear and nonlinear solvers.
class StokesEvolver {
  public:
    StokesEvolver(double nu, double beta, int K, std::shared_ptr<const ZGrid> grid,
                  ContourSpec spec, TimeLadder ladder);

    const StokesPropagator& propagator(double tau);
    const CellQuadrature& cell_quadrature() const { return cq_; }
    const TimeLadder& ladder() const { return ladder_; }
    double nu() const { return nu_; }
    double beta() const { return beta_; }

    // w(t0+dt) = K(dt) w0 + int_0^dt K(sigma) f(t0+dt-sigma) dsigma
    SpectralField step(const SpectralField& w0, double t0, double dt, const ForcingFn& f);

  private:
    double nu_, beta_;
    int K_;
    std::shared_ptr<const ZGrid> grid_;
    CellQuadrature cq_;
    ContourSpec spec_;
    TimeLadder ladder_;
    std::map<double, std::unique_ptr<StokesPropagator>> cache_;
};

// One-shot semigroup application; t = 0 returns the input unchanged.
SpectralField apply_semigroup(const SpectralField& w, double t, double nu, double beta,
                              const ContourSpec& spec);

// Duhamel solution at the requested output times. With no forcing each
// output is a single one-shot application (no composition error).
std::vector<SpectralField> solve_stokes(const StokesProblem& p, const ContourSpec& spec,
                                        const StokesSolveOptions& opt = {});

// |nu^beta w_a(0) + int e^{-|a| z} w_a dz| relative to ||w_a||_L1, max over modes.
struct BcResidual {
    double max_relative = 0.0;
    double max_absolute = 0.0;
};
BcResidual boundary_condition_residual(const SpectralField& w, double nu, double beta,
                                       const CellQuadrature& cq);

// Finite-difference audit of d_t w - nu Delta_alpha w - f over interior
// nodes, reported as relative L1 per output time (max over modes).
struct PdeResidualReport {
    std::vector<double> per_time;
    double max_relative = 0.0;
};
PdeResidualReport check_duhamel_pde_residual(const std::vector<double>& times,
                                             const std::vector<SpectralField>& states,
                                             const StokesProblem& p);

// Per-mode seminorms used by the convolution audits.
double wk1_norm(std::span<const Complex> f, const ZGrid& grid, const FdDerivative& dz, int k);
double bl_norm_k(std::span<const Complex> f, const ZGrid& grid, const FdDerivative& dz,
                 const NormParams& p, int k);

}  // namespace slipns
