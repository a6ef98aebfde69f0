#include "slipns/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "slipns/errors.hpp"

namespace slipns {

namespace {

struct ModeStepper {
    // second-derivative stencils
    std::vector<std::size_t> st;
    std::vector<std::array<double, 5>> d2;
    std::vector<double> bc_row;  // constraint coefficients
    double a2;
    const ZGrid* grid;
    double nu;
    MolScheme scheme;

    std::map<double, Eigen::PartialPivLU<Eigen::MatrixXd>> lu;

    ModeStepper(const ZGrid& g, double nu_, double beta, int alpha, MolScheme s)
        : grid(&g), nu(nu_), scheme(s) {
        const std::size_t n = g.size();
        const double a = std::abs(static_cast<double>(alpha));
        a2 = a * a;
        st.resize(n);
        d2.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t s0 =
                std::min(n - 5, static_cast<std::size_t>(std::max<long>(0, static_cast<long>(i) - 2)));
            st[i] = s0;
            std::array<double, 5> xs;
            for (int m = 0; m < 5; ++m) xs[static_cast<std::size_t>(m)] = g.nodes[s0 + static_cast<std::size_t>(m)];
            const auto w = fd_weights(g.nodes[i], std::span<const double>(xs.data(), 5), 2);
            for (int m = 0; m < 5; ++m) d2[i][static_cast<std::size_t>(m)] = w[static_cast<std::size_t>(m)];
        }
        bc_row.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double az = a * g.nodes[j];
            bc_row[j] = (az > 709.0) ? 0.0 : g.weights[j] * std::exp(-az);
        }
        bc_row[0] += std::pow(nu_, beta);
    }

    // Delta_alpha acting on a complex vector (all rows; callers pick interior)
    void laplacian(std::span<const Complex> f, std::span<Complex> out) const {
        const std::size_t n = f.size();
        for (std::size_t i = 0; i < n; ++i) {
            Complex s(0, 0);
            for (int m = 0; m < 5; ++m) s += d2[i][static_cast<std::size_t>(m)] * f[st[i] + static_cast<std::size_t>(m)];
            out[i] = s - a2 * f[i];
        }
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd>& factor(double dt) {
        auto it = lu.find(dt);
        if (it != lu.end()) return it->second;
        const std::size_t n = grid->size();
        const double theta = (scheme == MolScheme::trapezoidal) ? 0.5 : 1.0;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) A(0, static_cast<Eigen::Index>(j)) = bc_row[j];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += 1.0;
            for (int m = 0; m < 5; ++m)
                A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(st[i] + static_cast<std::size_t>(m))) -=
                    theta * nu * dt * d2[i][static_cast<std::size_t>(m)];
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += theta * nu * dt * a2;
        }
        A(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1)) = 1.0;
        auto [pos, ok] = lu.emplace(dt, Eigen::PartialPivLU<Eigen::MatrixXd>(A));
        require(std::abs(pos->second.determinant()) > 0.0, ErrorCode::internal,
                "solve_stokes_direct: singular step matrix");
        return pos->second;
    }

    // advance one step of size dt with forcing samples f0 (t) and f1 (t+dt)
    void advance(std::vector<Complex>& w, double dt, std::span<const Complex> f0,
                 std::span<const Complex> f1) {
        const std::size_t n = w.size();
        const auto& f = factor(dt);
        std::vector<Complex> lap(n);
        laplacian(w, lap);
        Eigen::VectorXd rhs_re = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        Eigen::VectorXd rhs_im = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        const double theta = (scheme == MolScheme::trapezoidal) ? 0.5 : 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            Complex r = w[i];
            if (scheme == MolScheme::trapezoidal)
                r += 0.5 * dt * (nu * lap[i] + f0[i] + f1[i]);
            else
                r += dt * f1[i];
            (void)theta;
            rhs_re(static_cast<Eigen::Index>(i)) = r.real();
            rhs_im(static_cast<Eigen::Index>(i)) = r.imag();
        }
        const Eigen::VectorXd xre = f.solve(rhs_re);
        const Eigen::VectorXd xim = f.solve(rhs_im);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = Complex(xre(static_cast<Eigen::Index>(i)), xim(static_cast<Eigen::Index>(i)));
    }
};

}  // namespace

std::vector<SpectralField> solve_stokes_direct(const StokesProblem& p, const MolOptions& opt) {
    require(opt.dt > 0.0, ErrorCode::invalid_argument, "solve_stokes_direct: dt must be positive");
    require(!p.output_times.empty(), ErrorCode::invalid_argument,
            "solve_stokes_direct: no output times");
    const auto& grid = *p.omega0.grid;
    const int K = p.omega0.K;
    const std::size_t n = grid.size();

    std::vector<SpectralField> out(p.output_times.size(), SpectralField(K, p.omega0.grid));

#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a <= K; ++a) {
        ModeStepper stepper(grid, p.nu, p.slip_exponent, a, opt.scheme);
        std::vector<Complex> w = p.omega0.mode(a);
        std::vector<Complex> fprev(n, Complex(0, 0)), fnext(n, Complex(0, 0));
        double t = 0.0;
        bool first = true;
        auto forcing_at = [&](double tt) -> std::vector<Complex> {
            if (!p.forcing) return std::vector<Complex>(n, Complex(0, 0));
            return p.forcing(tt).mode(a);
        };
        fprev = forcing_at(0.0);
        for (std::size_t k = 0; k < p.output_times.size(); ++k) {
            const double target = p.output_times[k];
            require(target >= t - 1e-14, ErrorCode::invalid_argument,
                    "solve_stokes_direct: output times must be ascending");
            while (t < target - 1e-14) {
                double step = opt.dt;
                if (first && opt.startup_levels > 0) {
                    // geometric warm-up resolves the initial layer
                    double sub = opt.dt / std::pow(2.0, opt.startup_levels);
                    while (sub < opt.dt - 1e-300 && t < target - 1e-14) {
                        const double h = std::min(sub, target - t);
                        fnext = forcing_at(t + h);
                        stepper.advance(w, h, fprev, fnext);
                        std::swap(fprev, fnext);
                        t += h;
                        sub *= 2.0;
                    }
                    first = false;
                    continue;
                }
                step = std::min(step, target - t);
                fnext = forcing_at(t + step);
                stepper.advance(w, step, fprev, fnext);
                std::swap(fprev, fnext);
                t += step;
            }
            t = target;
            out[k].mode(a) = w;
            if (a > 0) {
                auto& neg = out[k].mode(-a);
                for (std::size_t i = 0; i < n; ++i) neg[i] = std::conj(w[i]);
            }
        }
    }
    return out;
}

double mol_constraint_residual(const SpectralField& w, double nu, double beta) {
    const ZGrid& g = *w.grid;
    const double slip = std::pow(nu, beta);
    double worst = 0.0;
    for (int a = 0; a <= w.K; ++a) {
        const auto& m = w.mode(a);
        Complex s = slip * m[0];
        for (std::size_t j = 0; j < m.size(); ++j) {
            const double az = static_cast<double>(a) * g.nodes[j];
            if (az > 709.0) break;
            s += g.weights[j] * std::exp(-az) * m[j];
        }
        const double l1 = w.mode_l1(a);
        if (l1 > 0.0) worst = std::max(worst, std::abs(s) / l1);
    }
    return worst;
}

}  // namespace slipns
