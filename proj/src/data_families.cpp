#include "slipns/data_families.hpp"

#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

SpectralField make_initial_data(const std::string& family, const DataParams& p, int K,
                                std::shared_ptr<const ZGrid> grid, double nu, double beta) {
    SpectralField w(K, grid);
    const auto& z = grid->nodes;
    const std::size_t n = z.size();
    auto& m0 = w.mode(0);

    if (family == "zero") return w;

    if (family == "shear_exp") {
        for (std::size_t i = 0; i < n; ++i) m0[i] = p.amplitude * std::exp(-z[i]);
        return w;
    }
    if (family == "shear_wellprepared") {
        const double delta = std::sqrt(nu);
        const double slip = std::pow(nu, beta);
        // A e^{-z} + (C/delta) e^{-z/delta} with the wall balance
        // slip*(A + C/delta) + (A + C) = 0
        const double C = -p.amplitude * (1.0 + slip) / (1.0 + slip / delta);
        for (std::size_t i = 0; i < n; ++i)
            m0[i] = p.amplitude * std::exp(-z[i]) + (C / delta) * std::exp(-z[i] / delta);
        return w;
    }
    if (family == "gaussian") {
        const double z0 = p.z0 > 0.0 ? p.z0 : grid->length / 2.0;
        const double width = p.width > 0.0 ? p.width : grid->length / 12.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = (z[i] - z0) / width;
            m0[i] = p.amplitude * std::exp(-r * r);
        }
        return w;
    }
    if (family == "wall_layer") {
        const double delta = std::sqrt(nu);
        for (std::size_t i = 0; i < n; ++i) m0[i] = p.amplitude * std::exp(-z[i] / delta);
        return w;
    }
    if (family == "two_mode") {
        require(K >= 1, ErrorCode::invalid_argument, "two_mode data need K >= 1");
        auto& m1 = w.mode(1);
        auto& m1n = w.mode(-1);
        for (std::size_t i = 0; i < n; ++i) {
            m0[i] = p.amplitude * std::exp(-z[i]);
            const double g = 0.5 * p.eps * p.amplitude * z[i] * std::exp(-z[i]);
            m1[i] = g;
            m1n[i] = g;
        }
        return w;
    }
    if (family == "single_mode") {
        require(K >= std::abs(p.mode) && p.mode != 0, ErrorCode::invalid_argument,
                "single_mode data need 1 <= |mode| <= K");
        auto& mp = w.mode(p.mode);
        auto& mn = w.mode(-p.mode);
        for (std::size_t i = 0; i < n; ++i) {
            const double g = 0.5 * p.amplitude * z[i] * std::exp(-z[i]);
            mp[i] = g;
            mn[i] = g;
        }
        return w;
    }
    fail(ErrorCode::invalid_argument, "unknown data family: " + family);
}

DataParams data_params_from_config(const RunConfig& cfg) {
    DataParams p;
    p.amplitude = cfg.get_double("data_amplitude", 1.0);
    p.z0 = cfg.get_double("data_z0", -1.0);
    p.width = cfg.get_double("data_width", -1.0);
    p.eps = cfg.get_double("data_eps", 0.1);
    p.mode = cfg.get_int("data_mode", 1);
    return p;
}

}  // namespace slipns
