#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slipns/contour.hpp"
#include "slipns/grid.hpp"
#include "slipns/resolvent.hpp"

namespace slipns {

// Neumann heat kernel with the alpha^2 damping:
//   (4 pi nu t)^{-1/2} ( e^{-(y-z)^2/4nut} + e^{-(y+z)^2/4nut} ) e^{-alpha^2 nu t}
double temporal_heat_kernel(double t, double nu, int alpha, double z, double y);

struct ResidualValue {
    double value = 0.0;
    double noise = 0.0;  // roundoff floor + truncation-tail estimate
};

// Single quadrature pass over an explicit half path.
ResidualValue residual_on_path(const HalfPath& path, double t, double nu, int alpha, double z,
                               double y, double beta);

// e^{lambda t}-weighted contour integral of the residual resolvent kernel,
// with node doubling until 1e-9 relative agreement (or the noise floor).
ResidualValue temporal_residual_kernel(double t, double nu, int alpha, double z, double y,
                                       const ContourSpec& spec, double beta = 1.0);

// Full mirrored-path sum; returns (real part, imaginary residue). The
// half-path evaluator is exactly real by construction, so this is the
// explicit conjugate-symmetry audit.
std::pair<double, double> residual_mirror_sum(const ContourSpec& spec, double t, double nu,
                                              int alpha, double z, double y, double beta = 1.0);

// Fitted constants of the pointwise residual bound
//   |R_alpha(t,z,y)| <= C (nu t)^{-1/2} e^{-theta0 alpha^2 nu t} e^{-theta0 z^2/(4 nu t)}.
struct KernelBoundFit {
    double theta0 = 0.0;
    double C = 0.0;
    std::size_t n_points = 0;
    std::size_t n_violations = 0;
    double t_min = 0, t_max = 0, nu_min = 0, nu_max = 0;
    int alpha_min = 0, alpha_max = 0;
    double z_max = 0;
};

// Tabulated temporal Green function G = H + R on the grid, together with
// the product-quadrature application weights (production contours only).
struct KernelTable {
    double t = 0.0, nu = 0.0, beta = 1.0;
    int alpha = 0;
    std::shared_ptr<const ZGrid> grid;
    std::vector<double> heat;       // n*n values H(t, z_i, y_j)
    std::vector<double> residual;   // n*n values R(t, z_i, y_j)
    std::vector<double> apply;      // n*n weights: (Gw)_i = sum_j apply[i*n+j] w_j
    double residual_noise = 0.0;    // uniform noise floor for residual entries
    std::uint64_t grid_hash = 0;
    std::uint64_t contour_hash = 0;

    std::size_t n() const { return grid ? grid->size() : 0; }
    bool has_apply() const { return !apply.empty(); }
    void apply_to(std::span<const Complex> in, std::span<Complex> out) const;
};

KernelTable build_kernel_table(double t, double nu, int alpha, std::shared_ptr<const ZGrid> grid,
                               const ContourSpec& spec, double beta = 1.0);

// Binary on-disk cache keyed by (t, nu, alpha, beta, grid hash, contour
// hash); reload is bit-exact.
bool kernel_cache_load(const std::string& dir, double t, double nu, int alpha, double beta,
                       std::shared_ptr<const ZGrid> grid, std::uint64_t contour_hash,
                       KernelTable& out);
void kernel_cache_store(const std::string& dir, const KernelTable& table);

}  // namespace slipns
