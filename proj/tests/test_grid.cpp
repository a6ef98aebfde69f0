#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "slipns/errors.hpp"
#include "slipns/grid.hpp"

using namespace slipns;

namespace {

// adaptive Simpson oracle, independent of the cell-quadrature machinery
template <class F>
Complex simpson(const F& f, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

template <class F>
Complex adaptive(const F& f, double a, double b, Complex whole, int depth) {
    const double m = 0.5 * (a + b);
    const Complex left = simpson(f, a, m), right = simpson(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) < 1e-14) return left + right;
    return adaptive(f, a, m, left, depth - 1) + adaptive(f, m, b, right, depth - 1);
}

template <class F>
Complex integrate_oracle(const F& f, double a, double b) {
    Complex total(0, 0);
    const int panels = 64;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        total += adaptive(f, pa, pb, simpson(f, pa, pb), 28);
    }
    return total;
}

}  // namespace

TEST_CASE("graded grid invariants") {
    const double nu = 1e-4;
    const ZGrid g = ZGrid::layered(120.0, 257, nu);

    CHECK(g.nodes.front() == 0.0);
    CHECK(g.nodes.back() == doctest::Approx(120.0).epsilon(1e-14));
    for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g.nodes[i] < g.nodes[i + 1]);

    // weights positive, sum to the length
    double sum = 0.0;
    for (double w : g.weights) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(std::abs(sum - g.length) <= 1e-12 * g.length);

    // at least 8 nodes inside [0, sqrt(nu)]
    const double delta = std::sqrt(nu);
    int inside = 0;
    for (double z : g.nodes)
        if (z <= delta) ++inside;
    CHECK(inside >= 8);
    // first cell below delta/8
    CHECK(g.nodes[1] <= delta / 8.0 * (1.0 + 1e-12));
}

TEST_CASE("quadrature integrates e^{-z} to 1e-10 at production sizes") {
    for (double nu : {1e-3, 1e-4, 1e-5}) {
        const std::size_t n = nu < 5e-5 ? 385 : 257;
        const ZGrid g = ZGrid::layered(120.0, n, nu);
        std::vector<double> f(g.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-g.nodes[i]);
        const double exact = 1.0 - std::exp(-g.length);
        CHECK(std::abs(g.integrate(std::span<const double>(f)) - exact) <= 1e-10);
    }
}

TEST_CASE("exponential functionals match the adaptive oracle") {
    const ZGrid g = ZGrid::layered(30.0, 129, 1e-3);
    CellQuadrature cq(g);
    auto probe = [&](double zv) { return std::cos(1.7 * zv) * std::exp(-0.4 * zv); };
    std::vector<Complex> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = probe(g.nodes[i]);

    for (Complex mu : {Complex(0.0, 0.0), Complex(2.0, 0.0), Complex(40.0, 13.0),
                       Complex(0.5, 30.0), Complex(800.0, 200.0)}) {
        const auto w = cq.exp_weights(mu);
        Complex got(0, 0);
        for (std::size_t i = 0; i < f.size(); ++i) got += w[i] * f[i];
        const Complex want =
            integrate_oracle([&](double zv) { return std::exp(-mu * zv) * probe(zv); }, 0.0, 30.0);
        CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("heat-kernel weights are exact for sharp and wide Gaussians") {
    const ZGrid g = ZGrid::layered(30.0, 161, 1e-4);
    CellQuadrature cq(g);
    auto probe = [&](double zv) { return (1.0 + zv) * std::exp(-0.5 * zv); };
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = probe(g.nodes[i]);

    for (double four_nu_t : {1e-6, 1e-4, 1e-2, 1.0})
        for (double z : {0.0, 0.004, 0.3, 2.0}) {
            const auto w = cq.heat_weights(four_nu_t, z);
            double got = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) got += w[i] * f[i];
            const double s = std::sqrt(four_nu_t);
            auto kern = [&](double yv) {
                const double d1 = (yv - z) / s, d2 = (yv + z) / s;
                return (std::exp(-d1 * d1) + std::exp(-d2 * d2)) / (s * std::sqrt(M_PI)) * probe(yv);
            };
            const double lo = std::max(0.0, z - 12.0 * s), hi = std::min(30.0, z + 12.0 * s);
            const double want = integrate_oracle(kern, lo, hi).real();
            CHECK(std::abs(got - want) <= 2e-9 * (1.0 + std::abs(want)));
        }
}

TEST_CASE("single-cell exponential weights match the oracle from both edges") {
    const ZGrid g = ZGrid::layered(30.0, 97, 1e-2);
    CellQuadrature cq(g);
    auto probe = [&](double zv) { return std::sin(zv) + 0.3 * zv * zv; };
    std::vector<Complex> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = probe(g.nodes[i]);

    for (std::size_t cell : {std::size_t(0), std::size_t(13), std::size_t(60), g.size() - 2}) {
        const double za = g.nodes[cell], zb = g.nodes[cell + 1];
        for (Complex mu : {Complex(1.5, 0.0), Complex(90.0, 25.0)}) {
            const auto wl = cq.exp_cell_weights(cell, mu, false);
            const auto wr = cq.exp_cell_weights(cell, mu, true);
            Complex got_l(0, 0), got_r(0, 0);
            for (int m = 0; m < CellQuadrature::kStencil; ++m) {
                got_l += wl[static_cast<std::size_t>(m)] * f[cq.stencil_start(cell) + static_cast<std::size_t>(m)];
                got_r += wr[static_cast<std::size_t>(m)] * f[cq.stencil_start(cell) + static_cast<std::size_t>(m)];
            }
            const Complex want_l = integrate_oracle(
                [&](double yv) { return std::exp(-mu * (yv - za)) * probe(yv); }, za, zb);
            const Complex want_r = integrate_oracle(
                [&](double yv) { return std::exp(-mu * (zb - yv)) * probe(yv); }, za, zb);
            CHECK(std::abs(got_l - want_l) <= 1e-11 * (1.0 + std::abs(want_l)));
            CHECK(std::abs(got_r - want_r) <= 1e-11 * (1.0 + std::abs(want_r)));
        }
    }
}

TEST_CASE("derivative stencils hit 4th order on the graded grid") {
    auto err_for = [&](std::size_t n) {
        const ZGrid g = ZGrid::with_stretch(10.0, n, 4.0);
        FdDerivative dz(g);
        std::vector<double> f(g.size()), out(g.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-f.size() ? g.nodes[i] : 0.0);
        dz.apply(f, out);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(out[i] + std::exp(-g.nodes[i])));
        return worst;
    };
    const double e1 = err_for(65), e2 = err_for(129);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.5);
}

TEST_CASE("grid rejects bad arguments") {
    CHECK_THROWS_AS(ZGrid::uniform(-1.0, 64), Error);
    CHECK_THROWS_AS(ZGrid::uniform(1.0, 4), Error);
    CHECK_THROWS_AS(ZGrid::layered(120.0, 16, 1e-9), Error);
}
