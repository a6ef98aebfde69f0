#include "slipns/grid.hpp"

#include <algorithm>
#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

namespace {

constexpr double kGL10Nodes[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                  0.8650633666889845, 0.9739065285171717};
constexpr double kGL10Weights[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                    0.1494513491505806, 0.0666713443086881};

// Exponential moments m_k = int_0^h e^{w s} s^k ds, k = 0..5.
// Series for small |w h|, else the exact recurrence.
void exp_moments(Complex w, double h, std::array<Complex, 6>& m) {
    const Complex wh = w * h;
    if (std::abs(wh) < 0.75) {
        for (int k = 0; k <= 5; ++k) {
            Complex term(1.0, 0.0);
            Complex sum = term / static_cast<double>(k + 1);
            for (int j = 1; j <= 24; ++j) {
                term *= wh / static_cast<double>(j);
                sum += term / static_cast<double>(k + j + 1);
            }
            m[k] = sum * std::pow(h, k + 1);
        }
        return;
    }
    const Complex ewh = std::exp(wh);
    m[0] = (ewh - 1.0) / w;
    double hk = 1.0;
    for (int k = 1; k <= 5; ++k) {
        hk *= h;
        m[k] = (hk * ewh - static_cast<double>(k) * m[k - 1]) / w;
    }
}

double binom(int n, int k) {
    static const double table[6][6] = {{1, 0, 0, 0, 0, 0},      {1, 1, 0, 0, 0, 0},
                                       {1, 2, 1, 0, 0, 0},      {1, 3, 3, 1, 0, 0},
                                       {1, 4, 6, 4, 1, 0},      {1, 5, 10, 10, 5, 1}};
    return table[n][k];
}

}  // namespace

double ZGrid::integrate(std::span<const double> f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += weights[i] * f[i];
    return s;
}

Complex ZGrid::integrate(std::span<const Complex> f) const {
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) s += weights[i] * f[i];
    return s;
}

std::uint64_t ZGrid::hash() const {
    std::uint64_t h = fnv1a(nodes);
    h = fnv1a(weights, h);
    h = fnv1a(length, h);
    h = fnv1a(stretch, h);
    return h;
}

ZGrid ZGrid::uniform(double length, std::size_t n) {
    require(n >= 8, ErrorCode::invalid_argument, "ZGrid: need at least 8 nodes");
    require(length > 0.0, ErrorCode::invalid_argument, "ZGrid: length must be positive");
    ZGrid g;
    g.length = length;
    g.stretch = 0.0;
    g.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.nodes[i] = length * static_cast<double>(i) / static_cast<double>(n - 1);
    g.nodes.front() = 0.0;
    g.nodes.back() = length;
    g.weights = CellQuadrature(g).plain_weights();
    return g;
}

ZGrid ZGrid::with_stretch(double length, std::size_t n, double c) {
    require(n >= 8, ErrorCode::invalid_argument, "ZGrid: need at least 8 nodes");
    require(length > 0.0, ErrorCode::invalid_argument, "ZGrid: length must be positive");
    if (c <= 1e-12) return uniform(length, n);
    ZGrid g;
    g.length = length;
    g.stretch = c;
    g.nodes.resize(n);
    const double denom = std::expm1(c);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = static_cast<double>(i) / static_cast<double>(n - 1);
        g.nodes[i] = length * std::expm1(c * xi) / denom;
    }
    g.nodes.front() = 0.0;
    g.nodes.back() = length;
    g.weights = CellQuadrature(g).plain_weights();
    return g;
}

ZGrid ZGrid::layered(double length, std::size_t n, double nu) {
    require(nu > 0.0, ErrorCode::invalid_argument, "ZGrid: viscosity must be positive");
    const double delta = std::min(std::sqrt(nu), length / 8.0);
    auto first_cell = [&](double c) {
        return length * std::expm1(c / static_cast<double>(n - 1)) / std::expm1(c);
    };
    auto eighth_node = [&](double c) {
        return length * std::expm1(8.0 * c / static_cast<double>(n - 1)) / std::expm1(c);
    };
    auto ok = [&](double c) { return first_cell(c) <= delta / 8.0 && eighth_node(c) <= delta; };

    if (ok(1e-8)) return uniform(length, n);
    double lo = 1e-8, hi = 80.0;
    require(ok(hi), ErrorCode::invalid_argument,
            "ZGrid: cannot resolve the wall layer with this node count");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return with_stretch(length, n, hi);
}

// ---------------------------------------------------------------------------

CellQuadrature::CellQuadrature(const ZGrid& grid) : grid_(&grid) {
    const std::size_t n = grid.nodes.size();
    require(n >= kStencil, ErrorCode::invalid_argument, "CellQuadrature: need at least 6 nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        require(grid.nodes[i] < grid.nodes[i + 1], ErrorCode::invalid_argument,
                "CellQuadrature: nodes must be strictly increasing");
    ncell_ = n - 1;
    start_.resize(ncell_);
    coef_.resize(ncell_);
    for (std::size_t j = 0; j < ncell_; ++j) {
        const std::size_t s0 =
            std::min(n - static_cast<std::size_t>(kStencil),
                     static_cast<std::size_t>(std::max<long>(0, static_cast<long>(j) - 2)));
        start_[j] = s0;
        const double zl = grid.nodes[j];
        const double h = grid.nodes[j + 1] - zl;
        // Cardinal polynomial coefficients about the left edge, in the
        // scaled variable sigma = s/h: l_m(sigma) = prod_{p != m} (sigma - d_p)/(d_m - d_p).
        double d[kStencil];
        for (int m = 0; m < kStencil; ++m) d[m] = (grid.nodes[s0 + m] - zl) / h;
        for (int m = 0; m < kStencil; ++m) {
            double poly[kStencil] = {1, 0, 0, 0, 0, 0};
            double denom = 1.0;
            int deg = 0;
            for (int p = 0; p < kStencil; ++p) {
                if (p == m) continue;
                denom *= d[m] - d[p];
                for (int k = deg + 1; k >= 1; --k) poly[k] = poly[k - 1] - d[p] * poly[k];
                poly[0] *= -d[p];
                ++deg;
            }
            // un-scale: coefficient of s^k is poly[k]/h^k / denom
            double hk = 1.0;
            for (int k = 0; k < kStencil; ++k) {
                coef_[j][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(m)] =
                    poly[k] / (denom * hk);
                hk *= h;
            }
        }
    }
}

std::vector<double> CellQuadrature::plain_weights() const {
    const auto& z = grid_->nodes;
    std::vector<double> w(z.size(), 0.0);
    for (std::size_t j = 0; j < ncell_; ++j) {
        const double h = z[j + 1] - z[j];
        double mk = h;
        for (int k = 0; k < kStencil; ++k) {
            const double ik = mk / static_cast<double>(k + 1);
            for (int m = 0; m < kStencil; ++m)
                w[start_[j] + static_cast<std::size_t>(m)] +=
                    coef_[j][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(m)] * ik;
            mk *= h;
        }
    }
    return w;
}

std::vector<Complex> CellQuadrature::exp_weights(Complex mu) const {
    const auto& z = grid_->nodes;
    std::vector<Complex> w(z.size(), Complex(0.0, 0.0));
    std::array<Complex, 6> m;
    for (std::size_t j = 0; j < ncell_; ++j) {
        if (mu.real() * z[j] > 709.0) break;  // prefactor underflows; tail is negligible
        const Complex pref = std::exp(-mu * z[j]);
        exp_moments(-mu, z[j + 1] - z[j], m);
        for (int k = 0; k < kStencil; ++k) {
            const Complex ik = pref * m[static_cast<std::size_t>(k)];
            for (int mm = 0; mm < kStencil; ++mm)
                w[start_[j] + static_cast<std::size_t>(mm)] +=
                    coef_[j][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(mm)] * ik;
        }
    }
    return w;
}

std::array<Complex, 6> CellQuadrature::exp_cell_weights(std::size_t cell, Complex mu,
                                                        bool from_right) const {
    const auto& z = grid_->nodes;
    const double h = z[cell + 1] - z[cell];
    std::array<Complex, 6> m;
    exp_moments(-mu, h, m);
    std::array<Complex, 6> out{};
    if (!from_right) {
        for (int k = 0; k < kStencil; ++k)
            for (int mm = 0; mm < kStencil; ++mm)
                out[static_cast<std::size_t>(mm)] +=
                    coef_[cell][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(mm)] *
                    m[static_cast<std::size_t>(k)];
        return out;
    }
    // measure from the right edge: p(s) = sum_k c_k s^k with s = h - s',
    // coefficient of s'^i is sum_{k>=i} c_k C(k,i) h^{k-i} (-1)^i.
    for (int i = 0; i < kStencil; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        for (int k = i; k < kStencil; ++k) {
            const double fac = sign * binom(k, i) * std::pow(h, k - i);
            for (int mm = 0; mm < kStencil; ++mm)
                out[static_cast<std::size_t>(mm)] +=
                    coef_[cell][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(mm)] *
                    fac * m[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

void CellQuadrature::gauss_accumulate(std::size_t cell, double w, double center,
                                      std::span<double> acc) const {
    // smooth regime: 10-point Gauss-Legendre directly on the cell
    const auto& z = grid_->nodes;
    const double a = z[cell], b = z[cell + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double inv = 1.0 / (w * 1.7724538509055160273);  // 1/(w sqrt(pi))
    for (int g = 0; g < 10; ++g) {
        const double xg = (g < 5) ? mid - half * kGL10Nodes[g] : mid + half * kGL10Nodes[g - 5];
        const double wg = half * kGL10Weights[g % 5];
        const double r = (xg - center) / w;
        if (std::abs(r) > 10.0) continue;
        const double kv = inv * std::exp(-r * r) * wg;
        const double s = xg - a;
        double sk = 1.0;
        for (int k = 0; k < kStencil; ++k) {
            for (int m = 0; m < kStencil; ++m)
                acc[start_[cell] + static_cast<std::size_t>(m)] +=
                    kv * sk * coef_[cell][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(m)];
            sk *= s;
        }
    }
}

void CellQuadrature::erf_moment_accumulate(std::size_t cell, double w, double center,
                                           std::span<double> acc) const {
    const auto& z = grid_->nodes;
    const double r0 = (z[cell] - center) / w;
    const double r1 = (z[cell + 1] - center) / w;
    const double e0 = std::exp(-r0 * r0), e1 = std::exp(-r1 * r1);
    constexpr double inv_sqrt_pi = 0.5641895835477562869;
    double gm[6];
    if (r0 > 0.25)
        gm[0] = 0.5 * (std::erfc(r0) - std::erfc(r1));
    else if (r1 < -0.25)
        gm[0] = 0.5 * (std::erfc(-r1) - std::erfc(-r0));
    else
        gm[0] = 0.5 * (std::erf(r1) - std::erf(r0));
    gm[1] = 0.5 * inv_sqrt_pi * (e0 - e1);
    double p0 = r0, p1 = r1;  // r^{i-1}
    for (int i = 2; i < 6; ++i) {
        gm[i] = 0.5 * (i - 1) * gm[i - 2] + 0.5 * inv_sqrt_pi * (p0 * e0 - p1 * e1);
        p0 *= r0;
        p1 *= r1;
    }
    // s^k = w^k (r - r0)^k
    double wk = 1.0;
    for (int k = 0; k < kStencil; ++k) {
        double ik = 0.0;
        double r0pow = 1.0;  // (-r0)^{k-i} built downward
        // sum_i C(k,i) (-r0)^{k-i} gm[i]
        for (int i = k; i >= 0; --i) {
            ik += binom(k, i) * r0pow * gm[i];
            r0pow *= -r0;
        }
        ik *= wk;
        for (int m = 0; m < kStencil; ++m)
            acc[start_[cell] + static_cast<std::size_t>(m)] +=
                ik * coef_[cell][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(m)];
        wk *= w;
    }
}

std::vector<double> CellQuadrature::heat_weights(double four_nu_t, double z) const {
    require(four_nu_t > 0.0, ErrorCode::invalid_argument, "heat_weights: need positive time");
    const double w = std::sqrt(four_nu_t);
    const auto& nodes = grid_->nodes;
    std::vector<double> acc(nodes.size(), 0.0);
    const double centers[2] = {z, -z};
    for (double c : centers) {
        for (std::size_t j = 0; j < ncell_; ++j) {
            const double r0 = (nodes[j] - c) / w, r1 = (nodes[j + 1] - c) / w;
            if ((r0 > 9.5 && r1 > 9.5) || (r0 < -9.5 && r1 < -9.5)) continue;
            if (r1 - r0 >= 0.5)
                erf_moment_accumulate(j, w, c, acc);
            else
                gauss_accumulate(j, w, c, acc);
        }
        if (z == 0.0) break;  // both images coincide
    }
    if (z == 0.0)
        for (auto& v : acc) v *= 2.0;
    return acc;
}

std::vector<double> CellQuadrature::cell_integrals(std::span<const double> f) const {
    std::vector<double> out(ncell_, 0.0);
    const auto& z = grid_->nodes;
    for (std::size_t j = 0; j < ncell_; ++j) {
        const double h = z[j + 1] - z[j];
        double mk = h, s = 0.0;
        for (int k = 0; k < kStencil; ++k) {
            const double ik = mk / static_cast<double>(k + 1);
            double ck = 0.0;
            for (int m = 0; m < kStencil; ++m)
                ck += coef_[j][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(m)] *
                      f[start_[j] + static_cast<std::size_t>(m)];
            s += ck * ik;
            mk *= h;
        }
        out[j] = s;
    }
    return out;
}

std::vector<Complex> CellQuadrature::cell_integrals(std::span<const Complex> f) const {
    std::vector<Complex> out(ncell_, Complex(0, 0));
    const auto& z = grid_->nodes;
    for (std::size_t j = 0; j < ncell_; ++j) {
        const double h = z[j + 1] - z[j];
        double mk = h;
        Complex s(0, 0);
        for (int k = 0; k < kStencil; ++k) {
            const double ik = mk / static_cast<double>(k + 1);
            Complex ck(0, 0);
            for (int m = 0; m < kStencil; ++m)
                ck += coef_[j][static_cast<std::size_t>(k) * 6 + static_cast<std::size_t>(m)] *
                      f[start_[j] + static_cast<std::size_t>(m)];
            s += ck * ik;
            mk *= h;
        }
        out[j] = s;
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<double> fd_weights(double x0, std::span<const double> xs, int order) {
    // Fornberg's algorithm.
    const int n = static_cast<int>(xs.size()) - 1;
    const int m = order;
    std::vector<double> delta(static_cast<std::size_t>((m + 1) * (n + 1) * (n + 1)), 0.0);
    auto d = [&](int mm, int nn, int v) -> double& {
        return delta[static_cast<std::size_t>(mm * (n + 1) * (n + 1) + nn * (n + 1) + v)];
    };
    d(0, 0, 0) = 1.0;
    double c1 = 1.0;
    for (int nn = 1; nn <= n; ++nn) {
        double c2 = 1.0;
        for (int v = 0; v < nn; ++v) {
            const double c3 = xs[static_cast<std::size_t>(nn)] - xs[static_cast<std::size_t>(v)];
            c2 *= c3;
            for (int mm = 0; mm <= std::min(nn, m); ++mm)
                d(mm, nn, v) = ((xs[static_cast<std::size_t>(nn)] - x0) * d(mm, nn - 1, v) -
                                (mm ? mm * d(mm - 1, nn - 1, v) : 0.0)) /
                               c3;
        }
        for (int mm = 0; mm <= std::min(nn, m); ++mm)
            d(mm, nn, nn) = c1 / c2 *
                            ((mm ? mm * d(mm - 1, nn - 1, nn - 1) : 0.0) -
                             (xs[static_cast<std::size_t>(nn - 1)] - x0) * d(mm, nn - 1, nn - 1));
        c1 = c2;
    }
    std::vector<double> w(xs.size());
    for (int v = 0; v <= n; ++v) w[static_cast<std::size_t>(v)] = d(m, n, v);
    return w;
}

FdDerivative::FdDerivative(const ZGrid& grid) : n_(grid.size()) {
    require(n_ >= 5, ErrorCode::domain_error, "FdDerivative: need at least 5 nodes");
    start_.resize(n_);
    w_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t s0 =
            std::min(n_ - 5, static_cast<std::size_t>(std::max<long>(0, static_cast<long>(i) - 2)));
        start_[i] = s0;
        std::array<double, 5> xs;
        for (int m = 0; m < 5; ++m) xs[static_cast<std::size_t>(m)] = grid.nodes[s0 + static_cast<std::size_t>(m)];
        auto w = fd_weights(grid.nodes[i], std::span<const double>(xs.data(), 5), 1);
        for (int m = 0; m < 5; ++m) w_[i][static_cast<std::size_t>(m)] = w[static_cast<std::size_t>(m)];
    }
}

void FdDerivative::apply(std::span<const double> f, std::span<double> out) const {
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int m = 0; m < 5; ++m) s += w_[i][static_cast<std::size_t>(m)] * f[start_[i] + static_cast<std::size_t>(m)];
        out[i] = s;
    }
}

void FdDerivative::apply(std::span<const Complex> f, std::span<Complex> out) const {
    for (std::size_t i = 0; i < n_; ++i) {
        Complex s(0, 0);
        for (int m = 0; m < 5; ++m) s += w_[i][static_cast<std::size_t>(m)] * f[start_[i] + static_cast<std::size_t>(m)];
        out[i] = s;
    }
}

}  // namespace slipns
