#include "slipns/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

namespace {
constexpr double kPi = 3.14159265358979323846;

struct SplitCoef {
    Complex A, B;
};

SplitCoef split_coefficients(const ResolventQuery& q, Complex mu) {
    const double a = q.abs_alpha();
    const double nu = q.nu;
    const double slip = q.slip_coefficient();
    const Complex D = slip * (mu + a) + 1.0;
    const Complex ma = mu - a;
    SplitCoef c;
    c.A = -(mu + a) * (slip * ma - 1.0) / (2.0 * mu * nu * D * ma) - 1.0 / (2.0 * mu * nu);
    c.B = -1.0 / (nu * D * ma);
    return c;
}
}  // namespace

StokesPropagator::StokesPropagator(double tau, double nu, double beta, int K,
                                   std::shared_ptr<const ZGrid> grid, const CellQuadrature& cq,
                                   const ContourSpec& spec)
    : tau_(tau), nu_(nu), beta_(beta), K_(K), n_(grid->size()) {
    require(tau > 0.0, ErrorCode::invalid_argument, "StokesPropagator: tau must be positive");
    require(spec.family == ContourFamily::production, ErrorCode::invalid_argument,
            "StokesPropagator: solver path uses the production contour");
    const auto& z = grid->nodes;

    heat_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const auto hw = cq.heat_weights(4.0 * nu * tau, z[i]);
        std::copy(hw.begin(), hw.end(), heat_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    }

    const HalfPath path = make_half_path(spec, tau, nu, 0, 0.0, 0.0);
    const std::size_t nq = path.nodes.size();
    modes_.resize(static_cast<std::size_t>(K) + 1);
    for (int a = 0; a <= K; ++a) {
        ModeData& md = modes_[static_cast<std::size_t>(a)];
        const double damp_exp = static_cast<double>(a) * static_cast<double>(a) * nu * tau;
        md.damp = damp_exp > 745.0 ? 0.0 : std::exp(-damp_exp);
        md.e.resize(nq * n_);
        md.v.resize(nq * n_);
        md.ca.resize(nq);
        md.cb.resize(nq);
        ResolventQuery q{Complex(0, 0), a, nu, beta};
        const auto wa = cq.exp_weights(Complex(static_cast<double>(a), 0.0));
        md.wa.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) md.wa[j] = wa[j].real();
        for (std::size_t k = 0; k < nq; ++k) {
            q.lambda = path.nodes[k].lambda;
            const Complex mu = mu_branch(q);
            const SplitCoef c = split_coefficients(q, mu);
            md.ca[k] = c.A * path.nodes[k].dweight;
            md.cb[k] = c.B * path.nodes[k].dweight;
            const auto v = cq.exp_weights(mu);
            for (std::size_t j = 0; j < n_; ++j) md.v[k * n_ + j] = v[j];
            for (std::size_t i = 0; i < n_; ++i) {
                const Complex arg = q.lambda * tau - mu * z[i];
                md.e[k * n_ + i] = (arg.real() < -745.0) ? Complex(0, 0) : std::exp(arg);
            }
        }
    }
}

void StokesPropagator::apply_mode(int alpha, std::span<const Complex> in,
                                  std::span<Complex> out) const {
    const int a = std::abs(alpha);
    require(a <= K_, ErrorCode::invalid_argument, "StokesPropagator: mode outside built range");
    const ModeData& md = modes_[static_cast<std::size_t>(a)];

    // heat part
    for (std::size_t i = 0; i < n_; ++i) {
        Complex s(0, 0);
        const double* row = heat_.data() + i * n_;
        for (std::size_t j = 0; j < n_; ++j) s += row[j] * in[j];
        out[i] = md.damp * s;
    }

    // residual part
    Complex swa(0, 0);
    for (std::size_t j = 0; j < n_; ++j) swa += md.wa[j] * in[j];
    const std::size_t nq = md.ca.size();
    for (std::size_t k = 0; k < nq; ++k) {
        Complex s_re(0, 0), s_im(0, 0);
        const Complex* vk = md.v.data() + k * n_;
        for (std::size_t j = 0; j < n_; ++j) {
            s_re += vk[j].real() * in[j];
            s_im += vk[j].imag() * in[j];
        }
        const Complex* ek = md.e.data() + k * n_;
        const Complex ca = md.ca[k], cb = md.cb[k];
        for (std::size_t i = 0; i < n_; ++i) {
            const Complex p = ca * ek[i];
            const Complex qq = cb * ek[i];
            out[i] += (p.real() * s_im + p.imag() * s_re + qq.imag() * swa) / kPi;
        }
    }
}

SpectralField StokesPropagator::apply(const SpectralField& w) const {
    SpectralField out(w.K, w.grid);
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a <= w.K; ++a) {
        apply_mode(a, w.mode(a), out.mode(a));
        if (a > 0) {
            auto& neg = out.mode(-a);
            const auto& pos = out.mode(a);
            for (std::size_t i = 0; i < pos.size(); ++i) neg[i] = std::conj(pos[i]);
        }
    }
    return out;
}

TimeLadder TimeLadder::make(int geometric_levels, int uniform_cells) {
    require(geometric_levels >= 1 && uniform_cells >= 2, ErrorCode::invalid_argument,
            "TimeLadder: bad parameters");
    TimeLadder l;
    const double base = 1.0 / static_cast<double>(uniform_cells);
    for (int k = geometric_levels; k >= 1; --k) l.fractions.push_back(base / std::pow(2.0, k));
    for (int k = 1; k <= uniform_cells; ++k)
        l.fractions.push_back(static_cast<double>(k) * base);
    return l;
}

StokesEvolver::StokesEvolver(double nu, double beta, int K, std::shared_ptr<const ZGrid> grid,
                             ContourSpec spec, TimeLadder ladder)
    : nu_(nu), beta_(beta), K_(K), grid_(std::move(grid)), cq_(*grid_), spec_(spec),
      ladder_(std::move(ladder)) {}

const StokesPropagator& StokesEvolver::propagator(double tau) {
    auto it = cache_.find(tau);
    if (it == cache_.end()) {
        it = cache_
                 .emplace(tau, std::make_unique<StokesPropagator>(tau, nu_, beta_, K_, grid_, cq_,
                                                                  spec_))
                 .first;
    }
    return *it->second;
}

namespace {
// endpoint weights of the product rule exact on {1, sqrt(sigma)} over [sl, sr]
std::pair<double, double> sqrt_product_weights(double sl, double sr) {
    const double d = std::sqrt(sr) - std::sqrt(sl);
    const double delta = sr - sl;
    const double d3 = std::pow(sr, 1.5) - std::pow(sl, 1.5);
    const double wr = (2.0 / 3.0 * d3 - std::sqrt(sl) * delta) / d;
    return {delta - wr, wr};
}
}  // namespace

SpectralField StokesEvolver::step(const SpectralField& w0, double t0, double dt, const ForcingFn& f) {
    require(dt > 0.0, ErrorCode::invalid_argument, "StokesEvolver: dt must be positive");
    SpectralField out = propagator(dt).apply(w0);
    if (!f) return out;

    // g(sigma) = K(sigma) f(t0 + dt - sigma); g(0) = f(t0 + dt)
    std::vector<double> sigma{0.0};
    for (double fr : ladder_.fractions) sigma.push_back(fr * dt);
    std::vector<SpectralField> g;
    g.reserve(sigma.size());
    for (std::size_t m = 0; m < sigma.size(); ++m) {
        SpectralField fs = f(t0 + dt - sigma[m]);
        g.push_back(sigma[m] == 0.0 ? std::move(fs) : propagator(sigma[m]).apply(fs));
    }
    for (std::size_t m = 0; m + 1 < sigma.size(); ++m) {
        const auto [wl, wr] = sqrt_product_weights(sigma[m], sigma[m + 1]);
        for (int a = -w0.K; a <= w0.K; ++a) {
            auto& acc = out.mode(a);
            const auto& gl = g[m].mode(a);
            const auto& gr = g[m + 1].mode(a);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += wl * gl[i] + wr * gr[i];
        }
    }
    return out;
}

SpectralField apply_semigroup(const SpectralField& w, double t, double nu, double beta,
                              const ContourSpec& spec) {
    require(t >= 0.0, ErrorCode::invalid_argument, "apply_semigroup: t must be nonnegative");
    if (t == 0.0) return w;
    CellQuadrature cq(*w.grid);
    StokesPropagator prop(t, nu, beta, w.K, w.grid, cq, spec);
    return prop.apply(w);
}

std::vector<SpectralField> solve_stokes(const StokesProblem& p, const ContourSpec& spec,
                                        const StokesSolveOptions& opt) {
    require(!p.output_times.empty(), ErrorCode::invalid_argument, "solve_stokes: no output times");
    std::vector<double> times = p.output_times;
    for (double t : times)
        require(t >= 0.0, ErrorCode::invalid_argument, "solve_stokes: negative output time");
    require(std::is_sorted(times.begin(), times.end()), ErrorCode::invalid_argument,
            "solve_stokes: output times must be ascending");

    std::vector<SpectralField> out;
    out.reserve(times.size());
    if (!p.forcing) {
        for (double t : times)
            out.push_back(apply_semigroup(p.omega0, t, p.nu, p.slip_exponent, spec));
        return out;
    }

    StokesEvolver ev(p.nu, p.slip_exponent, p.omega0.K, p.omega0.grid, spec, opt.ladder);
    SpectralField cur = p.omega0;
    double tcur = 0.0;
    for (double t : times) {
        if (t == 0.0) {
            out.push_back(cur);
            continue;
        }
        const int m = std::max(1, opt.steps);
        const double dt = (t - tcur) / static_cast<double>(m);
        require(dt > 0.0, ErrorCode::invalid_argument, "solve_stokes: repeated output time");
        for (int s = 0; s < m; ++s) {
            cur = ev.step(cur, tcur, dt, p.forcing);
            tcur += dt;
        }
        tcur = t;
        out.push_back(cur);
    }
    return out;
}

BcResidual boundary_condition_residual(const SpectralField& w, double nu, double beta,
                                       const CellQuadrature& cq) {
    BcResidual r;
    const double slip = std::pow(nu, beta);
    for (int a = 0; a <= w.K; ++a) {
        const auto ew = cq.exp_weights(Complex(static_cast<double>(a), 0.0));
        const auto& m = w.mode(a);
        Complex integral(0, 0);
        for (std::size_t j = 0; j < m.size(); ++j) integral += ew[j] * m[j];
        const double abs_res = std::abs(slip * m[0] + integral);
        const double l1 = w.mode_l1(a);
        r.max_absolute = std::max(r.max_absolute, abs_res);
        if (l1 > 0.0) r.max_relative = std::max(r.max_relative, abs_res / l1);
    }
    return r;
}

PdeResidualReport check_duhamel_pde_residual(const std::vector<double>& times,
                                             const std::vector<SpectralField>& states,
                                             const StokesProblem& p) {
    require(times.size() >= 4 && times.size() == states.size(), ErrorCode::invalid_argument,
            "check_duhamel_pde_residual: need >= 4 sampled states");
    const ZGrid& grid = *states[0].grid;
    const std::size_t n = grid.size();
    const int K = states[0].K;

    // second-derivative stencils
    std::vector<std::array<double, 5>> d2(n);
    std::vector<std::size_t> st(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t s0 =
            std::min(n - 5, static_cast<std::size_t>(std::max<long>(0, static_cast<long>(i) - 2)));
        st[i] = s0;
        std::array<double, 5> xs;
        for (int m = 0; m < 5; ++m) xs[static_cast<std::size_t>(m)] = grid.nodes[s0 + static_cast<std::size_t>(m)];
        const auto w = fd_weights(grid.nodes[i], std::span<const double>(xs.data(), 5), 2);
        for (int m = 0; m < 5; ++m) d2[i][static_cast<std::size_t>(m)] = w[static_cast<std::size_t>(m)];
    }

    PdeResidualReport rep;
    rep.per_time.assign(times.size(), 0.0);
    for (std::size_t k = 1; k + 1 < times.size(); ++k) {
        const double ts[3] = {times[k - 1], times[k], times[k + 1]};
        const auto wt = fd_weights(times[k], std::span<const double>(ts, 3), 1);
        SpectralField force =
            p.forcing ? p.forcing(times[k]) : SpectralField(states[k].K, states[k].grid);
        double worst = 0.0;
        for (int a = 0; a <= K; ++a) {
            const auto& fm1 = states[k - 1].mode(a);
            const auto& f0 = states[k].mode(a);
            const auto& fp1 = states[k + 1].mode(a);
            const auto& fc = force.mode(a);
            double res_l1 = 0.0, scale_l1 = 0.0;
            for (std::size_t i = 1; i + 1 < n; ++i) {
                Complex lap(0, 0);
                for (int m = 0; m < 5; ++m) lap += d2[i][static_cast<std::size_t>(m)] * f0[st[i] + static_cast<std::size_t>(m)];
                lap -= static_cast<double>(a) * static_cast<double>(a) * f0[i];
                const Complex dt_w = wt[0] * fm1[i] + wt[1] * f0[i] + wt[2] * fp1[i];
                const Complex res = dt_w - p.nu * lap - fc[i];
                res_l1 += grid.weights[i] * std::abs(res);
                scale_l1 += grid.weights[i] *
                            (std::abs(dt_w) + p.nu * std::abs(lap) + std::abs(fc[i]));
            }
            if (scale_l1 > 0.0) worst = std::max(worst, res_l1 / scale_l1);
        }
        rep.per_time[k] = worst;
        rep.max_relative = std::max(rep.max_relative, worst);
    }
    return rep;
}

double wk1_norm(std::span<const Complex> f, const ZGrid& grid, const FdDerivative& dz, int k) {
    double total = 0.0;
    std::vector<Complex> cur(f.begin(), f.end());
    for (int j = 0; j <= k; ++j) {
        double l1 = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) l1 += grid.weights[i] * std::abs(cur[i]);
        total += l1;
        if (j == k) break;
        std::vector<Complex> next(cur.size());
        dz.apply(cur, next);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] *= psi_weight(grid.nodes[i]);
        cur = std::move(next);
    }
    return total;
}

double bl_norm_k(std::span<const Complex> f, const ZGrid& grid, const FdDerivative& dz,
                 const NormParams& p, int k) {
    double total = 0.0;
    std::vector<Complex> cur(f.begin(), f.end());
    for (int j = 0; j <= k; ++j) {
        total += bl_norm(std::span<const Complex>(cur), grid, p);
        if (j == k) break;
        std::vector<Complex> next(cur.size());
        dz.apply(cur, next);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] *= psi_weight(grid.nodes[i]);
        cur = std::move(next);
    }
    return total;
}

}  // namespace slipns
