#pragma once

#include <span>

#include "slipns/field.hpp"

namespace slipns {

// Parameters of the boundary-layer and analytic norms. sigma is carried as
// metadata only: all suprema are taken over the real trace z in [0, L].
struct NormParams {
    double rho = 0.5;      // x-analyticity radius
    double sigma = 0.5;    // recorded z-radius (metadata)
    double beta0 = 0.25;   // exponential decay rate
    double P = 2.0;        // weight power, > 1
    double delta = 0.0;    // sqrt(nu)
    double delta_t = 0.0;  // sqrt(nu t); 0 drops the initial-layer term

    void validate() const;
};

// phi_P(z) = 1 / (1 + |z|^P)
double bl_phi(double z, double P);

// 1 + delta_t^{-1} phi_P(z/delta_t) + delta^{-1} phi_P(z/delta); terms with
// zero thickness are dropped.
double bl_weight(double z, const NormParams& p);

// max over grid nodes of |f| e^{beta0 z} / bl_weight(z)
double bl_norm(std::span<const Complex> f, const ZGrid& grid, const NormParams& p);
double bl_norm(std::span<const double> f, const ZGrid& grid, const NormParams& p);

enum class NormFlavor { L1, Linf, BL };

// sum_{j+l<=k} sum_alpha e^{rho |alpha|} ||(i alpha)^j (psi dz)^l f_alpha||
double analytic_norm(const SpectralField& w, const NormParams& p, NormFlavor flavor, int k = 0);

}  // namespace slipns
