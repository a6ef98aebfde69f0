#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "slipns/grid.hpp"

namespace slipns {

// Vorticity/velocity component as Fourier modes in x over a ZGrid in z.
// Mode index alpha runs over {-K, ..., K}; reality of the physical field
// means mode(-alpha) == conj(mode(alpha)).
struct SpectralField {
    int K = 0;
    std::shared_ptr<const ZGrid> grid;
    std::vector<std::vector<Complex>> modes;  // [K + alpha][iz]

    SpectralField() = default;
    SpectralField(int k, std::shared_ptr<const ZGrid> g);

    std::size_t nz() const { return grid ? grid->size() : 0; }
    std::vector<Complex>& mode(int alpha) { return modes[static_cast<std::size_t>(K + alpha)]; }
    const std::vector<Complex>& mode(int alpha) const { return modes[static_cast<std::size_t>(K + alpha)]; }

    double reality_error() const;  // max |mode(-a) - conj(mode(a))|
    void enforce_reality();        // symmetrize the +-alpha pairs
    bool finite() const;

    double mode_l1(int alpha) const;    // grid-weighted L1 of |mode(alpha)|
    double mode_linf(int alpha) const;

    // Fill from a closed-form profile: mode alpha gets f(alpha, z).
    static SpectralField from_profile(int K, std::shared_ptr<const ZGrid> g,
                                      const std::function<Complex(int, double)>& f);
};

// Physical-space samples on a uniform x-grid times the ZGrid.
struct RealField {
    std::shared_ptr<const ZGrid> grid;
    std::vector<double> x;                    // uniform points on [0, 2pi)
    std::vector<std::vector<double>> values;  // [ix][iz]

    RealField() = default;
    RealField(std::size_t nx, std::shared_ptr<const ZGrid> g);
    std::size_t nx() const { return x.size(); }
    bool finite() const;
};

// Fourier transform in x. Requires a uniform x-grid with nx >= 2K+1.
SpectralField to_modes(const RealField& f, int K);

// Inverse transform; rejects fields violating the reality invariant by
// more than 1e-10. nx = 0 picks 2K+1.
RealField from_modes(const SpectralField& w, std::size_t nx = 0);

enum class Axis { x, z };

// d/dx is exact (i alpha per mode); d/dz uses degree-4 stencils on the grid.
SpectralField differentiate(const SpectralField& f, Axis axis);

// psi(z) = z/(1+z), the derivative weight used by the W^{k,1} seminorms.
inline double psi_weight(double z) { return z / (1.0 + z); }

// (psi d_z)^l d_x^j applied mode-wise.
SpectralField weighted_derivative(const SpectralField& f, int j, int l);

}  // namespace slipns
