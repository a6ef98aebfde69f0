#include "slipns/norms.hpp"

#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

void NormParams::validate() const {
    require(beta0 > 0.0, ErrorCode::invalid_argument, "NormParams: beta0 must be positive");
    require(P > 1.0, ErrorCode::invalid_argument, "NormParams: P must exceed 1");
    require(delta >= 0.0 && delta_t >= 0.0, ErrorCode::invalid_argument,
            "NormParams: layer thicknesses must be nonnegative");
    require(rho >= 0.0, ErrorCode::invalid_argument, "NormParams: rho must be nonnegative");
}

double bl_phi(double z, double P) { return 1.0 / (1.0 + std::pow(std::abs(z), P)); }

double bl_weight(double z, const NormParams& p) {
    double w = 1.0;
    if (p.delta_t > 0.0) w += bl_phi(z / p.delta_t, p.P) / p.delta_t;
    if (p.delta > 0.0) w += bl_phi(z / p.delta, p.P) / p.delta;
    return w;
}

namespace {
template <class T>
double bl_norm_impl(std::span<const T> f, const ZGrid& grid, const NormParams& p) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double z = grid.nodes[i];
        const double v = std::abs(f[i]) * std::exp(p.beta0 * z) / bl_weight(z, p);
        best = std::max(best, v);
    }
    return best;
}
}  // namespace

double bl_norm(std::span<const Complex> f, const ZGrid& grid, const NormParams& p) {
    return bl_norm_impl(f, grid, p);
}
double bl_norm(std::span<const double> f, const ZGrid& grid, const NormParams& p) {
    return bl_norm_impl(f, grid, p);
}

double analytic_norm(const SpectralField& w, const NormParams& p, NormFlavor flavor, int k) {
    p.validate();
    require(p.rho * static_cast<double>(w.K) <= 600.0, ErrorCode::domain_error,
            "analytic_norm: rho*K too large, exponential weight would overflow");
    double total = 0.0;
    for (int j = 0; j <= k; ++j) {
        for (int l = 0; j + l <= k; ++l) {
            const SpectralField d = (j == 0 && l == 0) ? w : weighted_derivative(w, j, l);
            for (int a = -w.K; a <= w.K; ++a) {
                double m = 0.0;
                switch (flavor) {
                    case NormFlavor::L1: m = d.mode_l1(a); break;
                    case NormFlavor::Linf: m = d.mode_linf(a); break;
                    case NormFlavor::BL: m = bl_norm(std::span<const Complex>(d.mode(a)), *d.grid, p); break;
                }
                total += std::exp(p.rho * std::abs(static_cast<double>(a))) * m;
            }
        }
    }
    return total;
}

}  // namespace slipns
