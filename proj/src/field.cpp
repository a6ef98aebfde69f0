#include "slipns/field.hpp"

#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

SpectralField::SpectralField(int k, std::shared_ptr<const ZGrid> g) : K(k), grid(std::move(g)) {
    require(K >= 0, ErrorCode::invalid_argument, "SpectralField: K must be nonnegative");
    require(grid != nullptr, ErrorCode::invalid_argument, "SpectralField: null grid");
    modes.assign(static_cast<std::size_t>(2 * K + 1), std::vector<Complex>(grid->size(), Complex(0, 0)));
}

double SpectralField::reality_error() const {
    double err = 0.0;
    for (int a = 0; a <= K; ++a) {
        const auto& p = mode(a);
        const auto& m = mode(-a);
        for (std::size_t i = 0; i < p.size(); ++i)
            err = std::max(err, std::abs(m[i] - std::conj(p[i])));
    }
    return err;
}

void SpectralField::enforce_reality() {
    for (int a = 1; a <= K; ++a) {
        auto& p = mode(a);
        auto& m = mode(-a);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Complex avg = 0.5 * (p[i] + std::conj(m[i]));
            p[i] = avg;
            m[i] = std::conj(avg);
        }
    }
    auto& z0 = mode(0);
    for (auto& v : z0) v = Complex(v.real(), 0.0);
}

bool SpectralField::finite() const {
    for (const auto& m : modes)
        for (const auto& v : m)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double SpectralField::mode_l1(int alpha) const {
    const auto& m = mode(alpha);
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += grid->weights[i] * std::abs(m[i]);
    return s;
}

double SpectralField::mode_linf(int alpha) const {
    const auto& m = mode(alpha);
    double s = 0.0;
    for (const auto& v : m) s = std::max(s, std::abs(v));
    return s;
}

SpectralField SpectralField::from_profile(int K, std::shared_ptr<const ZGrid> g,
                                          const std::function<Complex(int, double)>& f) {
    SpectralField w(K, std::move(g));
    for (int a = -K; a <= K; ++a) {
        auto& m = w.mode(a);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = f(a, w.grid->nodes[i]);
    }
    return w;
}

RealField::RealField(std::size_t nx, std::shared_ptr<const ZGrid> g) : grid(std::move(g)) {
    require(nx >= 1, ErrorCode::invalid_argument, "RealField: need at least one x point");
    require(grid != nullptr, ErrorCode::invalid_argument, "RealField: null grid");
    x.resize(nx);
    for (std::size_t m = 0; m < nx; ++m) x[m] = kTwoPi * static_cast<double>(m) / static_cast<double>(nx);
    values.assign(nx, std::vector<double>(grid->size(), 0.0));
}

bool RealField::finite() const {
    for (const auto& col : values)
        for (double v : col)
            if (!std::isfinite(v)) return false;
    return true;
}

SpectralField to_modes(const RealField& f, int K) {
    const std::size_t nx = f.nx();
    require(nx >= static_cast<std::size_t>(2 * K + 1), ErrorCode::domain_error,
            "to_modes: x-grid too small for requested modes");
    const double h = kTwoPi / static_cast<double>(nx);
    for (std::size_t m = 0; m < nx; ++m)
        require(std::abs(f.x[m] - h * static_cast<double>(m)) <= 1e-12 * kTwoPi, ErrorCode::domain_error,
                "to_modes: x-grid must be uniform on [0, 2pi)");

    SpectralField w(K, f.grid);
    const std::size_t nz = f.grid->size();
    for (int a = -K; a <= K; ++a) {
        auto& mode = w.mode(a);
        std::vector<Complex> phase(nx);
        for (std::size_t m = 0; m < nx; ++m) {
            const double arg = -static_cast<double>(a) * f.x[m];
            phase[m] = Complex(std::cos(arg), std::sin(arg)) / static_cast<double>(nx);
        }
        for (std::size_t i = 0; i < nz; ++i) {
            Complex s(0, 0);
            for (std::size_t m = 0; m < nx; ++m) s += phase[m] * f.values[m][i];
            mode[i] = s;
        }
    }
    return w;
}

RealField from_modes(const SpectralField& w, std::size_t nx) {
    require(w.reality_error() <= 1e-10, ErrorCode::domain_error,
            "from_modes: reality invariant violated beyond 1e-10");
    if (nx == 0) nx = static_cast<std::size_t>(2 * w.K + 1);
    require(nx >= static_cast<std::size_t>(2 * w.K + 1), ErrorCode::domain_error,
            "from_modes: x-grid too small for the mode content");
    RealField f(nx, w.grid);
    const std::size_t nz = w.nz();
    for (std::size_t m = 0; m < nx; ++m) {
        auto& col = f.values[m];
        // alpha = 0 plus twice the real part of the positive modes
        const auto& z0 = w.mode(0);
        for (std::size_t i = 0; i < nz; ++i) col[i] = z0[i].real();
        for (int a = 1; a <= w.K; ++a) {
            const double arg = static_cast<double>(a) * f.x[m];
            const Complex ph(std::cos(arg), std::sin(arg));
            const auto& ma = w.mode(a);
            for (std::size_t i = 0; i < nz; ++i) col[i] += 2.0 * (ma[i] * ph).real();
        }
    }
    return f;
}

SpectralField differentiate(const SpectralField& f, Axis axis) {
    SpectralField out(f.K, f.grid);
    if (axis == Axis::x) {
        for (int a = -f.K; a <= f.K; ++a) {
            const auto& src = f.mode(a);
            auto& dst = out.mode(a);
            const Complex ia(0.0, static_cast<double>(a));
            for (std::size_t i = 0; i < src.size(); ++i) dst[i] = ia * src[i];
        }
        return out;
    }
    require(f.nz() >= 5, ErrorCode::domain_error, "differentiate: need at least 5 z nodes");
    FdDerivative dz(*f.grid);
    for (int a = -f.K; a <= f.K; ++a) dz.apply(f.mode(a), out.mode(a));
    return out;
}

SpectralField weighted_derivative(const SpectralField& f, int j, int l) {
    SpectralField cur = f;
    for (int it = 0; it < j; ++it) cur = differentiate(cur, Axis::x);
    for (int it = 0; it < l; ++it) {
        SpectralField d = differentiate(cur, Axis::z);
        for (int a = -d.K; a <= d.K; ++a) {
            auto& m = d.mode(a);
            for (std::size_t i = 0; i < m.size(); ++i) m[i] *= psi_weight(d.grid->nodes[i]);
        }
        cur = std::move(d);
    }
    return cur;
}

}  // namespace slipns
