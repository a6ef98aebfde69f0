#pragma once

#include "slipns/field.hpp"

namespace slipns {

// Velocity recovered from vorticity through the Dirichlet stream function.
// u2 vanishes identically on the wall; the pair is divergence-free up to
// discretization error.
struct VelocityPair {
    SpectralField u1;
    SpectralField u2;
};

// phi_alpha(z) = (1/2|a|) int_0^inf ( e^{-|a|(y+z)} - e^{-|a||y-z|} ) w(y) dy,
// the decaying solution of (d_zz - a^2) phi = w with phi(0) = 0. The |y-z|
// kink is handled by integrating the two sides of y = z separately.
std::vector<Complex> stream_function(std::span<const Complex> w_alpha, int alpha,
                                     const CellQuadrature& cq);

// u1_alpha(0) = -sum_j weight_j e^{-|a| y_j} w(y_j) (plain grid weights).
Complex boundary_trace_u1(std::span<const Complex> w_alpha, int alpha, const ZGrid& grid);

// u1 by the explicit kernel (not by differentiating phi numerically),
// u2 = -i alpha phi; the zero mode uses u1_0(z) = -int_z^inf w_0 and u2_0 = 0.
VelocityPair velocity_from_vorticity(const SpectralField& w, const CellQuadrature& cq);

}  // namespace slipns
