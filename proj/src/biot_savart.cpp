#include "slipns/biot_savart.hpp"

#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

namespace {

struct KernelParts {
    std::vector<Complex> P;  // e^{-a z} int_0^inf e^{-a y} w dy
    std::vector<Complex> Q;  // int_0^z e^{-a(z-y)} w dy
    std::vector<Complex> S;  // int_z^L e^{-a(y-z)} w dy
};

void check_decay(std::span<const Complex> w) {
    double peak = 0.0;
    for (const auto& v : w) peak = std::max(peak, std::abs(v));
    require(peak == 0.0 || std::abs(w.back()) <= 1e-8 * peak, ErrorCode::domain_error,
            "vorticity must decay at the grid end");
}

// Exponential transforms of w against e^{-a|.|} computed by stable cell
// recurrences: every factor appearing is <= 1 in magnitude.
KernelParts kernel_parts(std::span<const Complex> w, double a, const CellQuadrature& cq) {
    const ZGrid& g = cq.grid();
    const std::size_t n = g.size();
    KernelParts parts;
    parts.P.assign(n, Complex(0, 0));
    parts.Q.assign(n, Complex(0, 0));
    parts.S.assign(n, Complex(0, 0));

    const auto tw = cq.exp_weights(Complex(a, 0.0));
    Complex total(0, 0);
    for (std::size_t j = 0; j < n; ++j) total += tw[j] * w[j];

    for (std::size_t i = 0; i < n; ++i) {
        const double az = a * g.nodes[i];
        parts.P[i] = (az > 709.0) ? Complex(0, 0) : std::exp(-az) * total;
    }

    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double h = g.nodes[j + 1] - g.nodes[j];
        const auto cw = cq.exp_cell_weights(j, Complex(a, 0.0), /*from_right=*/true);
        Complex cell(0, 0);
        for (int m = 0; m < CellQuadrature::kStencil; ++m)
            cell += cw[static_cast<std::size_t>(m)] * w[cq.stencil_start(j) + static_cast<std::size_t>(m)];
        parts.Q[j + 1] = parts.Q[j] * std::exp(-a * h) + cell;
    }

    for (std::size_t j = n - 1; j-- > 0;) {
        const double h = g.nodes[j + 1] - g.nodes[j];
        const auto cw = cq.exp_cell_weights(j, Complex(a, 0.0), /*from_right=*/false);
        Complex cell(0, 0);
        for (int m = 0; m < CellQuadrature::kStencil; ++m)
            cell += cw[static_cast<std::size_t>(m)] * w[cq.stencil_start(j) + static_cast<std::size_t>(m)];
        parts.S[j] = parts.S[j + 1] * std::exp(-a * h) + cell;
    }
    return parts;
}

}  // namespace

std::vector<Complex> stream_function(std::span<const Complex> w_alpha, int alpha,
                                     const CellQuadrature& cq) {
    require(alpha != 0, ErrorCode::domain_error,
            "stream_function: alpha = 0 has no decaying stream function; use the zero-mode branch");
    check_decay(w_alpha);
    const double a = std::abs(static_cast<double>(alpha));
    const auto parts = kernel_parts(w_alpha, a, cq);
    std::vector<Complex> phi(w_alpha.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        phi[i] = (parts.P[i] - parts.Q[i] - parts.S[i]) / (2.0 * a);
    phi[0] = Complex(0, 0);  // exact: the kernel vanishes at z = 0
    return phi;
}

Complex boundary_trace_u1(std::span<const Complex> w_alpha, int alpha, const ZGrid& grid) {
    const double a = std::abs(static_cast<double>(alpha));
    Complex s(0, 0);
    for (std::size_t j = 0; j < w_alpha.size(); ++j) {
        const double az = a * grid.nodes[j];
        if (az > 709.0) break;
        s += grid.weights[j] * std::exp(-az) * w_alpha[j];
    }
    return -s;
}

VelocityPair velocity_from_vorticity(const SpectralField& w, const CellQuadrature& cq) {
    require(w.reality_error() <= 1e-10, ErrorCode::domain_error,
            "velocity_from_vorticity: reality invariant violated");
    VelocityPair out{SpectralField(w.K, w.grid), SpectralField(w.K, w.grid)};
    const std::size_t n = w.nz();

    // zero mode: u1_0(z) = -int_z^L w_0, u2_0 = 0
    {
        const auto& w0 = w.mode(0);
        auto cells = cq.cell_integrals(std::span<const Complex>(w0));
        std::vector<Complex> tail(n, Complex(0, 0));
        for (std::size_t j = n - 1; j-- > 0;) tail[j] = tail[j + 1] + cells[j];
        auto& u10 = out.u1.mode(0);
        for (std::size_t i = 0; i < n; ++i) u10[i] = -tail[i];
    }

    for (int alpha = 1; alpha <= w.K; ++alpha) {
        const double a = static_cast<double>(alpha);
        const auto parts = kernel_parts(w.mode(alpha), a, cq);
        auto& u1p = out.u1.mode(alpha);
        auto& u2p = out.u2.mode(alpha);
        auto& u1m = out.u1.mode(-alpha);
        auto& u2m = out.u2.mode(-alpha);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex u1 = 0.5 * (-parts.P[i] + parts.Q[i] - parts.S[i]);
            Complex phi = (parts.P[i] - parts.Q[i] - parts.S[i]) / (2.0 * a);
            if (i == 0) phi = Complex(0, 0);
            const Complex u2 = Complex(0, -a) * phi;
            u1p[i] = u1;
            u2p[i] = u2;
            u1m[i] = std::conj(u1);
            u2m[i] = std::conj(u2);
        }
    }
    return out;
}

}  // namespace slipns
