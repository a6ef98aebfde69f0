#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "slipns/cmath_util.hpp"

namespace slipns {

// Graded one-dimensional grid on [0, L] with interpolatory quadrature
// weights. Nodes follow z(xi) = L (e^{c xi} - 1)/(e^c - 1) on a uniform xi
// grid; the stretch c concentrates nodes near the wall at the sqrt(nu)
// scale.
struct ZGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    double length = 0.0;
    double stretch = 0.0;  // 0 = uniform

    std::size_t size() const { return nodes.size(); }

    double integrate(std::span<const double> f) const;
    Complex integrate(std::span<const Complex> f) const;

    std::uint64_t hash() const;

    // Grid whose first cell is at most sqrt(nu)/8 and whose first eight
    // interior nodes lie inside [0, sqrt(nu)] (when that is achievable).
    static ZGrid layered(double length, std::size_t n, double nu);
    static ZGrid with_stretch(double length, std::size_t n, double c);
    static ZGrid uniform(double length, std::size_t n);
};

// Product integration against the local degree-5 interpolant: each cell
// [z_j, z_{j+1}] carries a 6-node Lagrange stencil whose polynomial is
// integrated exactly against 1, decaying exponentials and half-space heat
// kernels. This keeps kernel applications accurate even when the kernel is
// far narrower than the local mesh spacing.
class CellQuadrature {
  public:
    static constexpr int kStencil = 6;

    explicit CellQuadrature(const ZGrid& grid);

    const ZGrid& grid() const { return *grid_; }
    std::size_t cell_count() const { return ncell_; }
    std::size_t stencil_start(std::size_t cell) const { return start_[cell]; }

    // sum_j w_j f_j = int_0^L f(y) dy
    std::vector<double> plain_weights() const;

    // sum_j w_j f_j = int_0^L e^{-mu y} f(y) dy  (Re mu >= 0)
    std::vector<Complex> exp_weights(Complex mu) const;

    // Weights on the stencil of `cell` for int_{cell} e^{-mu (y-ref)} f dy,
    // ref = left edge (from_right=false) or right edge (from_right=true).
    std::array<Complex, kStencil> exp_cell_weights(std::size_t cell, Complex mu, bool from_right) const;

    // sum_j w_j f_j = int_0^L (4 pi nu t)^{-1/2}
    //      [ e^{-(y-z)^2/(4 nu t)} + e^{-(y+z)^2/(4 nu t)} ] f(y) dy
    std::vector<double> heat_weights(double four_nu_t, double z) const;

    // Per-cell plain integrals of the interpolant of f (for prefix sums).
    std::vector<double> cell_integrals(std::span<const double> f) const;
    std::vector<Complex> cell_integrals(std::span<const Complex> f) const;

  private:
    const ZGrid* grid_;
    std::size_t ncell_;
    std::vector<std::size_t> start_;          // stencil start per cell
    std::vector<std::array<double, 36>> coef_;  // coef_[cell][k*6+m]: s^k coefficient of cardinal m

    void gauss_accumulate(std::size_t cell, double w, double center, std::span<double> acc) const;
    void erf_moment_accumulate(std::size_t cell, double w, double center, std::span<double> acc) const;
};

// Finite-difference weights (Fornberg) for the m-th derivative at x0 from
// samples at xs.
std::vector<double> fd_weights(double x0, std::span<const double> xs, int order);

// Derivative operator: degree-4 five-point stencils on the grid nodes.
class FdDerivative {
  public:
    explicit FdDerivative(const ZGrid& grid);
    void apply(std::span<const double> f, std::span<double> out) const;
    void apply(std::span<const Complex> f, std::span<Complex> out) const;

  private:
    std::size_t n_;
    std::vector<std::size_t> start_;
    std::vector<std::array<double, 5>> w_;
};

}  // namespace slipns
