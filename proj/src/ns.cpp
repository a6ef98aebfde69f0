#include "slipns/ns.hpp"

#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

namespace {

double field_l1(const SpectralField& w) {
    double s = 0.0;
    for (int a = -w.K; a <= w.K; ++a) s += w.mode_l1(a);
    return s;
}

double diff_l1(const SpectralField& a, const SpectralField& b) {
    double s = 0.0;
    for (int al = -a.K; al <= a.K; ++al) {
        const auto& ma = a.mode(al);
        const auto& mb = b.mode(al);
        for (std::size_t i = 0; i < ma.size(); ++i)
            s += a.grid->weights[i] * std::abs(ma[i] - mb[i]);
    }
    return s;
}

// weighted mode series with radius rho
double weighted_series(const SpectralField& w, double rho) {
    double s = 0.0;
    for (int a = -w.K; a <= w.K; ++a)
        s += std::exp(rho * std::abs(static_cast<double>(a))) * w.mode_l1(a);
    return s;
}

void check_spectral_tail(const SpectralField& w, double rho, double tol) {
    if (w.K < 4) return;
    const int cutoff = std::max(1, w.K - std::max(1, w.K / 10));
    double tail = 0.0, total = 0.0;
    for (int a = -w.K; a <= w.K; ++a) {
        const double term = std::exp(rho * std::abs(static_cast<double>(a))) * w.mode_l1(a);
        total += term;
        if (std::abs(a) > cutoff) tail += term;
    }
    if (total > 0.0 && tail > tol * total)
        fail(ErrorCode::not_converged,
             "solve_ns: spectral tail carries more than the allowed fraction of the analytic "
             "norm; increase the mode truncation K");
}

}  // namespace

SpectralField nonlinear_term(const SpectralField& w, const CellQuadrature& cq) {
    require(w.reality_error() <= 1e-10, ErrorCode::domain_error,
            "nonlinear_term: reality invariant violated");
    SpectralField out(w.K, w.grid);
    if (w.K == 0) return out;  // shear data: u2 = 0 and w_x = 0 identically

    const VelocityPair vel = velocity_from_vorticity(w, cq);
    const SpectralField wx = differentiate(w, Axis::x);
    const SpectralField wz = differentiate(w, Axis::z);

    const std::size_t nx = static_cast<std::size_t>(3 * w.K + 1);
    const RealField u1 = from_modes(vel.u1, nx);
    const RealField u2 = from_modes(vel.u2, nx);
    const RealField gx = from_modes(wx, nx);
    const RealField gz = from_modes(wz, nx);

    RealField prod(nx, w.grid);
    const std::size_t nz = w.nz();
    for (std::size_t m = 0; m < nx; ++m)
        for (std::size_t i = 0; i < nz; ++i)
            prod.values[m][i] = u1.values[m][i] * gx.values[m][i] + u2.values[m][i] * gz.values[m][i];
    return to_modes(prod, w.K);
}

SpectralField ns_step(StokesEvolver& ev, const SpectralField& w, double t0, double dt,
                      const NsOptions& opt, NsStepInfo& info) {
    const SpectralField n_old = nonlinear_term(w, ev.cell_quadrature());
    const SpectralField hom = ev.propagator(dt).apply(w);

    std::vector<double> sigma{0.0};
    for (double fr : ev.ladder().fractions) sigma.push_back(fr * dt);
    const std::size_t M = sigma.size();

    // sigma-propagated old nonlinearity (iterate-independent)
    std::vector<SpectralField> a_part;
    a_part.reserve(M);
    for (std::size_t m = 0; m < M; ++m)
        a_part.push_back(sigma[m] == 0.0 ? n_old : ev.propagator(sigma[m]).apply(n_old));

    auto sqrt_weights = [](double sl, double sr) {
        const double d = std::sqrt(sr) - std::sqrt(sl);
        const double delta = sr - sl;
        const double d3 = std::pow(sr, 1.5) - std::pow(sl, 1.5);
        const double wr = (2.0 / 3.0 * d3 - std::sqrt(sl) * delta) / d;
        return std::pair<double, double>(delta - wr, wr);
    };

    SpectralField n_new = n_old;
    SpectralField accepted = w;
    double prev_delta = -1.0;
    info = NsStepInfo{};
    info.t_end = t0 + dt;
    for (int iter = 1; iter <= opt.picard_max; ++iter) {
        std::vector<SpectralField> b_part;
        b_part.reserve(M);
        for (std::size_t m = 0; m < M; ++m)
            b_part.push_back(sigma[m] == 0.0 ? n_new : ev.propagator(sigma[m]).apply(n_new));

        SpectralField next = hom;
        for (std::size_t m = 0; m + 1 < M; ++m) {
            const auto [wl, wr] = sqrt_weights(sigma[m], sigma[m + 1]);
            for (int a = -w.K; a <= w.K; ++a) {
                auto& acc = next.mode(a);
                for (std::size_t i = 0; i < acc.size(); ++i) {
                    // N(s) interpolates linearly between N(t0) and N(t0+dt)
                    const auto g = [&](std::size_t mm) {
                        const double c_old = sigma[mm] / dt;
                        return c_old * a_part[mm].mode(a)[i] + (1.0 - c_old) * b_part[mm].mode(a)[i];
                    };
                    acc[i] -= wl * g(m) + wr * g(m + 1);
                }
            }
        }

        const double delta = diff_l1(next, accepted);
        const double scale = field_l1(next);
        accepted = std::move(next);
        const double rel = (scale > 0.0) ? delta / scale : 0.0;
        info.picard_iters = iter;
        if (prev_delta > 0.0 && delta > 0.0)
            info.contraction = std::max(info.contraction, delta / prev_delta);
        prev_delta = delta;
        if (rel <= opt.picard_tol || scale == 0.0) break;
        if (iter == opt.picard_max)
            fail(ErrorCode::not_converged,
                 "ns_step: Picard iteration did not contract within the iteration cap; "
                 "reduce the step size (analyticity-time exhaustion)");
        n_new = nonlinear_term(accepted, ev.cell_quadrature());
    }

    accepted.enforce_reality();
    const BcResidual bc = boundary_condition_residual(accepted, opt.nu, opt.slip_exponent,
                                                      ev.cell_quadrature());
    info.bc_residual_rel = bc.max_relative;
    return accepted;
}

double wall_trace_max(const SpectralField& w) {
    const std::size_t nx = static_cast<std::size_t>(4 * w.K + 1);
    double best = 0.0;
    for (std::size_t m = 0; m < nx; ++m) {
        const double x = 6.283185307179586 * static_cast<double>(m) / static_cast<double>(nx);
        Complex s = w.mode(0)[0];
        for (int a = 1; a <= w.K; ++a) {
            const Complex ph(std::cos(a * x), std::sin(a * x));
            s += w.mode(a)[0] * ph + std::conj(w.mode(a)[0] * ph);
        }
        best = std::max(best, std::abs(s.real()));
    }
    return best;
}

NsResult solve_ns(const SpectralField& omega0, const NsOptions& opt,
                  const std::vector<double>& output_times) {
    require(!output_times.empty(), ErrorCode::invalid_argument, "solve_ns: no output times");
    require(opt.steps >= 1, ErrorCode::invalid_argument, "solve_ns: need at least one step");
    require(opt.rho0 - opt.gamma * opt.T > 0.0, ErrorCode::invalid_argument,
            "solve_ns: analyticity radius closes inside the run window; reduce gamma or T");
    require(omega0.reality_error() <= 1e-10, ErrorCode::domain_error,
            "solve_ns: initial data violate the reality invariant");

    StokesEvolver ev(opt.nu, opt.slip_exponent, omega0.K, omega0.grid, opt.contour, opt.ladder);
    NsResult res;
    SpectralField cur = omega0;
    double t = 0.0;
    const double dt = opt.T / static_cast<double>(opt.steps);

    NormParams np = opt.norms;
    np.delta = std::sqrt(opt.nu);

    auto record = [&](double tt, const SpectralField& w) {
        res.times.push_back(tt);
        res.trajectory.push_back(w);
        const double rho = opt.rho0 - opt.gamma * tt;
        res.diag.analytic_l1.push_back(weighted_series(w, rho));
        NormParams p = np;
        p.delta_t = std::sqrt(opt.nu * tt);
        double bl = 0.0;
        for (int a = -w.K; a <= w.K; ++a)
            bl += std::exp(rho * std::abs(static_cast<double>(a))) *
                  bl_norm(std::span<const Complex>(w.mode(a)), *w.grid, p);
        res.diag.bl_series.push_back(bl);
        res.diag.wall_max.push_back(wall_trace_max(w));
    };

    std::size_t out_idx = 0;
    if (output_times[0] == 0.0) {
        record(0.0, cur);
        ++out_idx;
    }
    const int total_steps = opt.steps;
    for (int s = 0; s < total_steps; ++s) {
        NsStepInfo info;
        cur = ns_step(ev, cur, t, dt, opt, info);
        t = dt * static_cast<double>(s + 1);
        res.diag.steps.push_back(info);
        check_spectral_tail(cur, opt.rho0 - opt.gamma * t, opt.tail_tol);
        while (out_idx < output_times.size() && output_times[out_idx] <= t + 1e-12) {
            record(output_times[out_idx], cur);
            ++out_idx;
        }
    }
    require(out_idx == output_times.size(), ErrorCode::invalid_argument,
            "solve_ns: output times must lie on the step grid within [0, T]");
    return res;
}

NormTrack track_analytic_norms(const std::vector<double>& times,
                               const std::vector<SpectralField>& traj, double rho0, double gamma,
                               double nu, const NormParams& base) {
    require(times.size() == traj.size() && !times.empty(), ErrorCode::invalid_argument,
            "track_analytic_norms: mismatched trajectory");
    for (double t : times)
        require(rho0 - gamma * t > 0.0, ErrorCode::invalid_argument,
                "track_analytic_norms: rho(t) <= 0 in the run window");
    NormTrack track;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double rho = rho0 - gamma * times[k];
        const SpectralField& w = traj[k];
        double a_series = 0.0, bl_series = 0.0;
        NormParams p = base;
        p.delta = std::sqrt(nu);
        p.delta_t = std::sqrt(nu * times[k]);
        for (int a = -w.K; a <= w.K; ++a) {
            const double weight = std::exp(rho * std::abs(static_cast<double>(a)));
            a_series += weight * w.mode_l1(a);
            bl_series += weight * bl_norm(std::span<const Complex>(w.mode(a)), *w.grid, p);
        }
        track.a_series.push_back(a_series);
        track.bl_series.push_back(bl_series);
    }
    if (track.a_series.front() > 0.0)
        for (double v : track.a_series)
            if (v > 10.0 * track.a_series.front()) track.flagged = true;
    return track;
}

}  // namespace slipns
