#include "slipns/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "slipns/biot_savart.hpp"
#include "slipns/data_families.hpp"
#include "slipns/errors.hpp"
#include "slipns/ns.hpp"
#include "slipns/oracle.hpp"
#include "slipns/semigroup.hpp"

namespace slipns {

RunSetup make_setup(const RunConfig& cfg, double nu_override) {
    RunSetup s;
    s.nu = nu_override > 0.0 ? nu_override : cfg.get_double("nu", 1e-3);
    s.beta = cfg.get_double("beta", 1.0);
    s.beta0 = cfg.get_double("beta0", 0.25);
    s.L = cfg.get_double("grid_L", 0.0);
    if (s.L <= 0.0) s.L = 30.0 / s.beta0;
    s.K = cfg.get_int("modes", 0);
    s.grid_n = cfg.get_int("grid_n", 257);
    s.grid = std::make_shared<ZGrid>(ZGrid::layered(s.L, static_cast<std::size_t>(s.grid_n), s.nu));

    s.contour.family = contour_family_from_name(cfg.get_str("contour_family", "production"));
    s.contour.n_nodes = cfg.get_int("contour_nodes", 96);
    s.contour.mu0 = cfg.get_double("contour_mu0", 4.0);
    s.contour.vertex_a = cfg.get_double("contour_vertex_a", 0.0);
    s.contour.arc_radius = cfg.get_double("contour_arc_m", 2.0);
    s.contour.b_max = cfg.get_double("contour_bmax", 0.0);

    s.norms.rho = cfg.get_double("rho0", 0.5);
    s.norms.sigma = cfg.get_double("sigma", 0.5);
    s.norms.beta0 = s.beta0;
    s.norms.P = cfg.get_double("weight_P", 2.0);
    s.norms.delta = std::sqrt(s.nu);
    s.norms.delta_t = 0.0;
    return s;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorCode::invalid_argument,
            "linear_fit: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i)
        f.max_residual = std::max(f.max_residual, std::abs(y[i] - f.slope * x[i] - f.intercept));
    return f;
}

namespace {

std::vector<double> output_times_from(const RunConfig& cfg, double T, int count) {
    auto times = cfg.get_list("output_times", {});
    if (!times.empty()) return times;
    std::vector<double> out;
    for (int k = 1; k <= count; ++k) out.push_back(T * static_cast<double>(k) / count);
    return out;
}

double relative_l1(const SpectralField& a, const SpectralField& b) {
    double num = 0.0, den = 0.0;
    for (int al = -a.K; al <= a.K; ++al) {
        const auto& ma = a.mode(al);
        const auto& mb = b.mode(al);
        for (std::size_t i = 0; i < ma.size(); ++i) {
            num += a.grid->weights[i] * std::abs(ma[i] - mb[i]);
            den += a.grid->weights[i] * std::abs(mb[i]);
        }
    }
    return den > 0.0 ? num / den : num;
}

// L2(T x [0,L]) norm of the velocity difference between two same-grid states
double velocity_l2_difference(const SpectralField& wa, const SpectralField& wb,
                              const CellQuadrature& cq) {
    SpectralField diff(wa.K, wa.grid);
    for (int a = -wa.K; a <= wa.K; ++a) {
        const auto& ma = wa.mode(a);
        const auto& mb = wb.mode(a);
        auto& d = diff.mode(a);
        for (std::size_t i = 0; i < ma.size(); ++i) d[i] = ma[i] - mb[i];
    }
    const VelocityPair v = velocity_from_vorticity(diff, cq);
    double sum = 0.0;
    for (int a = -wa.K; a <= wa.K; ++a) {
        const auto& u1 = v.u1.mode(a);
        const auto& u2 = v.u2.mode(a);
        for (std::size_t i = 0; i < u1.size(); ++i)
            sum += wa.grid->weights[i] * (std::norm(u1[i]) + std::norm(u2[i]));
    }
    return std::sqrt(2.0 * 3.14159265358979323846 * sum);
}

NsOptions ns_options_from(const RunConfig& cfg, const RunSetup& s, double T) {
    NsOptions opt;
    opt.nu = s.nu;
    opt.slip_exponent = s.beta;
    opt.T = T;
    opt.steps = cfg.get_int("time_steps", 16);
    opt.picard_tol = cfg.get_double("picard_tol", 1e-10);
    opt.picard_max = cfg.get_int("picard_max", 25);
    opt.ladder = TimeLadder::make(cfg.get_int("ladder_geometric", 7),
                                  cfg.get_int("ladder_uniform", 4));
    opt.contour = s.contour;
    opt.rho0 = cfg.get_double("rho0", 0.5);
    opt.gamma = cfg.get_double("gamma", 0.5 * opt.rho0 / T);
    opt.tail_tol = cfg.get_double("tail_tol", 1e-8);
    opt.norms = s.norms;
    return opt;
}

}  // namespace

ExperimentReport run_oracle_crosscheck(const RunConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = "oracle-check";
    rep.config = cfg;
    const auto nus = cfg.get_list("nu_list", {1e-3, 1e-4});
    const auto times = cfg.get_list("output_times", {0.1, 0.5, 1.0});
    const std::vector<std::pair<std::string, double>> families = {
        {"gaussian", 1e-3},  {"wall_layer", 3e-3},        {"shear_exp", 1e-2},
        {"two_mode", 1e-2},  {"shear_wellprepared", 1e-2}};

    for (double nu : nus) {
        RunSetup s = make_setup(cfg, nu);
        for (const auto& [family, tol] : families) {
            const int K = (family == "two_mode") ? 2 : 0;
            StokesProblem p;
            p.omega0 = make_initial_data(family, data_params_from_config(cfg), K, s.grid, nu, s.beta);
            p.nu = nu;
            p.slip_exponent = s.beta;
            p.output_times = times;
            const auto green = solve_stokes(p, s.contour);
            MolOptions mol;
            mol.dt = cfg.get_double("mol_dt", 5e-4);
            mol.startup_levels = cfg.get_int("mol_startup", 8);
            const auto direct = solve_stokes_direct(p, mol);
            for (std::size_t k = 0; k < times.size(); ++k) {
                const double rel = relative_l1(green[k], direct[k]);
                rep.add_check("rel_l1_" + family, rel, tol, rel <= tol, nu, s.beta, times[k]);
            }
        }
    }
    return rep;
}

ExperimentReport run_inviscid_rate(const RunConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = "inviscid-rate";
    rep.config = cfg;
    const auto nus = cfg.get_list("nu_list", {1e-2, 1e-3, 1e-4, 1e-5});
    const double beta = cfg.get_double("beta", 1.0);
    const double T = cfg.get_double("tfinal", 1.0);
    const std::string family = cfg.get_str("data_family", "shear_exp");
    const std::string reference = cfg.get_str("euler_reference", "steady_shear");
    const double band = cfg.get_double("slope_band", 0.15);
    const auto times = output_times_from(cfg, T, 8);

    // one shared grid resolving the finest layer so states can be compared
    const double nu_min = *std::min_element(nus.begin(), nus.end());
    RunSetup s = make_setup(cfg, nu_min);
    s.beta = beta;
    CellQuadrature cq(*s.grid);

    std::vector<double> evals;
    Curve curve{"E_vs_nu", {}};
    for (double nu : nus) {
        const int K = (reference == "surrogate") ? cfg.get_int("modes", 4) : 0;
        SpectralField w0 =
            make_initial_data(family, data_params_from_config(cfg), K, s.grid, nu, beta);

        SpectralField ref0 = w0;  // steady Euler shear keeps its initial vorticity
        std::vector<SpectralField> reference_traj;
        if (reference == "surrogate") {
            const double nu_ref = cfg.get_double("nu_ref", 1e-6);
            NsOptions ropt = ns_options_from(cfg, s, T);
            ropt.nu = nu_ref;
            SpectralField r0 =
                make_initial_data(family, data_params_from_config(cfg), K, s.grid, nu_ref, beta);
            reference_traj = solve_ns(r0, ropt, times).trajectory;
            rep.add_info("surrogate_reference_nu", nu_ref, nu_ref, beta, 0.0);
        }

        NsOptions opt = ns_options_from(cfg, s, T);
        opt.nu = nu;
        const NsResult run = solve_ns(w0, opt, times);

        double e_max = 0.0;
        Curve tc{"err_nu" + format_double(nu), {}};
        for (std::size_t k = 0; k < run.times.size(); ++k) {
            const SpectralField& ref =
                reference == "surrogate" ? reference_traj[k] : ref0;
            const double e = velocity_l2_difference(run.trajectory[k], ref, cq);
            e_max = std::max(e_max, e);
            tc.points.push_back({run.times[k], e});
        }
        rep.curves.push_back(std::move(tc));
        curve.points.push_back({nu, e_max});
        evals.push_back(e_max);
        rep.add_info("E_max", e_max, nu, beta, T);
    }
    rep.curves.push_back(std::move(curve));

    if (beta < 1.0) {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < nus.size(); ++i) {
            lx.push_back(std::log(nus[i]));
            ly.push_back(std::log(std::max(evals[i], 1e-300)));
        }
        const LinearFit fit = linear_fit(lx, ly);
        const double target = 0.5 * (1.0 - beta);
        rep.constants.push_back({"rate_slope", fit.slope, fit.max_residual,
                                 "nu in [" + format_double(nus.front()) + ", " +
                                     format_double(nus.back()) + "], T = " + format_double(T)});
        rep.add_check("rate_slope", fit.slope, band, std::abs(fit.slope - target) <= band, 0.0,
                      beta, T);
        rep.add_info("rate_intercept", fit.intercept, 0.0, beta, T);
    } else {
        double C = 0.0;
        for (std::size_t i = 0; i < nus.size(); ++i)
            C = std::max(C, evals[i] / (std::sqrt(nus[i]) + std::pow(nus[i] * T, 0.25)));
        rep.constants.push_back({"theorem_bound_C", C, 0.0,
                                 "nu in [" + format_double(nus.front()) + ", " +
                                     format_double(nus.back()) + "], T = " + format_double(T)});
        bool bound_ok = std::isfinite(C);
        for (std::size_t i = 0; i < nus.size(); ++i)
            bound_ok = bound_ok &&
                       evals[i] <= C * (std::sqrt(nus[i]) + std::pow(nus[i] * T, 0.25)) * (1 + 1e-12);
        rep.add_check("bound_C_finite", C, 0.0, bound_ok, 0.0, beta, T);
        // E must shrink as nu does: verify monotone ordering along the sweep
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < nus.size(); ++i) pairs.emplace_back(nus[i], evals[i]);
        std::sort(pairs.begin(), pairs.end());
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
            if (pairs[i].second > pairs[i + 1].second * (1 + 1e-9)) monotone = false;
        rep.add_check("E_monotone_in_nu", monotone ? 1.0 : 0.0, 0.0, monotone, 0.0, beta, T);
    }
    return rep;
}

ExperimentReport run_pointwise_bound(const RunConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = "bound-check";
    rep.config = cfg;
    const auto nus = cfg.get_list("nu_list", {1e-3, 1e-4, 1e-5});
    const double T = cfg.get_double("tfinal", 0.25);
    const std::string family = cfg.get_str("data_family", "two_mode");
    const int K = cfg.get_int("modes", 8);
    std::vector<double> times = output_times_from(cfg, T, 5);
    if (times.front() != 0.0) times.insert(times.begin(), 0.0);

    std::vector<double> c_per_nu;
    std::vector<double> wall_fit;
    for (double nu : nus) {
        RunSetup s = make_setup(cfg, nu);
        SpectralField w0 = make_initial_data(family, data_params_from_config(cfg),
                                             family == "two_mode" ? K : 0, s.grid, nu, s.beta);
        NsOptions opt = ns_options_from(cfg, s, T);
        const NsResult run = solve_ns(w0, opt, times);

        double c_max = 0.0, c0 = 0.0;
        Curve cc{"C_of_t_nu" + format_double(nu), {}};
        for (std::size_t k = 0; k < run.times.size(); ++k) {
            NormParams p = s.norms;
            p.delta_t = std::sqrt(nu * run.times[k]);
            const RealField phys = from_modes(run.trajectory[k],
                                              static_cast<std::size_t>(4 * run.trajectory[k].K + 1));
            double c = 0.0;
            for (const auto& col : phys.values)
                for (std::size_t i = 0; i < col.size(); ++i) {
                    const double z = s.grid->nodes[i];
                    c = std::max(c, std::abs(col[i]) /
                                        (std::exp(-s.beta0 * z) * bl_weight(z, p)));
                }
            if (k == 0) c0 = c;
            c_max = std::max(c_max, c);
            cc.points.push_back({run.times[k], c});
        }
        rep.curves.push_back(std::move(cc));
        c_per_nu.push_back(c_max);
        rep.add_info("C0_max", c_max, nu, s.beta, T);
        rep.add_check("C_stable_in_time", c_max, 3.0 * c0, c_max <= 3.0 * c0 && c0 > 0.0, nu,
                      s.beta, T);

        double wmax = 0.0;
        for (std::size_t k = 0; k < run.times.size(); ++k) {
            if (run.times[k] < 0.01) continue;
            wmax = std::max(wmax,
                            run.diag.wall_max[k] * std::sqrt(nu * run.times[k]));
        }
        wall_fit.push_back(wmax);
        rep.add_info("wall_bound_product", wmax, nu, s.beta, T);
    }
    const double cmax = *std::max_element(c_per_nu.begin(), c_per_nu.end());
    const double cmin = *std::min_element(c_per_nu.begin(), c_per_nu.end());
    rep.constants.push_back({"pointwise_C0", cmax, 0.0, "nu sweep"});
    rep.add_check("C0_spread_across_nu", cmin > 0 ? cmax / cmin : 0.0, 3.0,
                  cmin > 0.0 && cmax / cmin < 3.0);
    const double wall_c = *std::max_element(wall_fit.begin(), wall_fit.end());
    rep.constants.push_back({"wall_bound_C", wall_c, 0.0, "t in [0.01, T], nu sweep"});
    rep.add_check("wall_bound_finite", wall_c, 0.0, std::isfinite(wall_c) && wall_c > 0.0);
    return rep;
}

ExperimentReport run_stokes(const RunConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = "stokes-run";
    rep.config = cfg;
    RunSetup s = make_setup(cfg);
    const double T = cfg.get_double("tfinal", 1.0);
    const auto times = output_times_from(cfg, T, 8);
    const std::string family = cfg.get_str("data_family", "shear_exp");
    StokesProblem p;
    p.omega0 = make_initial_data(family, data_params_from_config(cfg), s.K, s.grid, s.nu, s.beta);
    p.nu = s.nu;
    p.slip_exponent = s.beta;
    p.output_times = times;
    const auto traj = solve_stokes(p, s.contour);

    CellQuadrature cq(*s.grid);
    Curve wall{"wall_vorticity", {}};
    Curve mass{"l1_norm", {}};
    for (std::size_t k = 0; k < times.size(); ++k) {
        const BcResidual bc = boundary_condition_residual(traj[k], s.nu, s.beta, cq);
        rep.add_check("bc_residual_rel", bc.max_relative, 1e-6, bc.max_relative <= 1e-6, s.nu,
                      s.beta, times[k]);
        wall.points.push_back({times[k], wall_trace_max(traj[k])});
        double l1 = 0.0;
        for (int a = -traj[k].K; a <= traj[k].K; ++a) l1 += traj[k].mode_l1(a);
        mass.points.push_back({times[k], l1});
    }
    if (times.size() >= 4) {
        const PdeResidualReport pr = check_duhamel_pde_residual(times, traj, p);
        rep.add_info("pde_residual_rel", pr.max_relative, s.nu, s.beta, T);
    }
    rep.curves.push_back(std::move(wall));
    rep.curves.push_back(std::move(mass));
    return rep;
}

ExperimentReport run_ns(const RunConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = "ns-run";
    rep.config = cfg;
    RunSetup s = make_setup(cfg);
    const double T = cfg.get_double("tfinal", 0.25);
    const int K = cfg.get_int("modes", 8);
    const auto times = output_times_from(cfg, T, 5);
    const std::string family = cfg.get_str("data_family", "two_mode");
    SpectralField w0 = make_initial_data(family, data_params_from_config(cfg), K, s.grid, s.nu, s.beta);
    NsOptions opt = ns_options_from(cfg, s, T);
    const NsResult run = solve_ns(w0, opt, times);

    for (std::size_t k = 0; k < run.times.size(); ++k)
        rep.add_info("analytic_l1", run.diag.analytic_l1[k], s.nu, s.beta, run.times[k]);
    double worst_bc = 0.0, worst_contraction = 0.0;
    for (const auto& st : run.diag.steps) {
        worst_bc = std::max(worst_bc, st.bc_residual_rel);
        worst_contraction = std::max(worst_contraction, st.contraction);
    }
    rep.add_check("bc_residual_rel", worst_bc, 1e-6, worst_bc <= 1e-6, s.nu, s.beta, T);
    rep.add_info("picard_contraction_max", worst_contraction, s.nu, s.beta, T);
    Curve an{"analytic_norm", {}};
    for (std::size_t k = 0; k < run.times.size(); ++k)
        an.points.push_back({run.times[k], run.diag.analytic_l1[k]});
    rep.curves.push_back(std::move(an));
    Curve wl{"wall_vorticity", {}};
    for (std::size_t k = 0; k < run.times.size(); ++k)
        wl.points.push_back({run.times[k], run.diag.wall_max[k]});
    rep.curves.push_back(std::move(wl));
    return rep;
}

ExperimentReport run_experiment(const RunConfig& cfg, const std::string& name) {
    const std::string exp = name.empty() ? cfg.get_str("experiment", "") : name;
    if (exp == "kernel-check") return run_kernel_verification(cfg);
    if (exp == "oracle-check") return run_oracle_crosscheck(cfg);
    if (exp == "inviscid-rate") return run_inviscid_rate(cfg);
    if (exp == "bound-check") return run_pointwise_bound(cfg);
    if (exp == "stokes-run") return run_stokes(cfg);
    if (exp == "ns-run") return run_ns(cfg);
    fail(ErrorCode::invalid_argument, "unknown experiment: " + exp);
}

}  // namespace slipns
