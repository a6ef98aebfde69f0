#pragma once

#include "slipns/config.hpp"
#include "slipns/field.hpp"

namespace slipns {

// Closed-form analytic initial-vorticity families evaluated on the grid.
//
//   zero                 identically zero
//   shear_exp            mode 0: A e^{-z} (O(1) wall vorticity, ill-prepared)
//   shear_wellprepared   A e^{-z} plus a sqrt(nu)-layer tuned to the wall balance
//   gaussian             mode 0: A e^{-((z-z0)/width)^2}, interior bump
//   wall_layer           mode 0: A e^{-z/sqrt(nu)}
//   two_mode             shear_exp plus eps A z e^{-z} cos(x)
//   single_mode          modes +-m only, profile A z e^{-z}
struct DataParams {
    double amplitude = 1.0;
    double z0 = -1.0;     // gaussian center; < 0 picks L/2
    double width = -1.0;  // gaussian width; < 0 picks L/12
    double eps = 0.1;     // two_mode perturbation size
    int mode = 1;         // single_mode index
};

SpectralField make_initial_data(const std::string& family, const DataParams& p, int K,
                                std::shared_ptr<const ZGrid> grid, double nu, double beta);

DataParams data_params_from_config(const RunConfig& cfg);

}  // namespace slipns
