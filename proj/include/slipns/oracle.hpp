#pragma once

#include "slipns/semigroup.hpp"

namespace slipns {

// Independent method-of-lines discretization of the same Stokes problem:
// banded 4th-order FD Laplacian per mode, with the nonlocal boundary
// condition imposed exactly as a replaced constraint row. Exists as ground
// truth for the Green-function solver; not performance-tuned.
enum class MolScheme { implicit_euler, trapezoidal };

struct MolOptions {
    MolScheme scheme = MolScheme::trapezoidal;
    double dt = 1e-3;
    int startup_levels = 6;  // geometric halvings of the first step
};

std::vector<SpectralField> solve_stokes_direct(const StokesProblem& p, const MolOptions& opt);

// Residual of the discrete constraint row nu^beta w(0) + sum_j w_j e^{-|a| z_j} w_j,
// max over modes, relative to ||w_a||_L1.
double mol_constraint_residual(const SpectralField& w, double nu, double beta);

}  // namespace slipns
