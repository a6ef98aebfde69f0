#include "slipns/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "slipns/errors.hpp"

namespace slipns {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Split coefficients of the residual resolvent:
//   R_lambda(z,y) = A e^{-mu (y+z)} + B e^{-mu z - a y}.
// Individually these are singular at the removable pole mu = a, so the
// split form is used only on paths bounded away from lambda = 0.
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

double temporal_heat_kernel(double t, double nu, int alpha, double z, double y) {
    require(t > 0.0, ErrorCode::domain_error, "temporal_heat_kernel: t must be positive");
    require(nu > 0.0, ErrorCode::invalid_argument, "temporal_heat_kernel: nu must be positive");
    const double a = std::abs(static_cast<double>(alpha));
    const double damp = a * a * nu * t;
    if (damp > 745.0) return 0.0;
    const double s = 4.0 * nu * t;
    const double d1 = (y - z) * (y - z) / s;
    const double d2 = (y + z) * (y + z) / s;
    const double g1 = d1 > 745.0 ? 0.0 : std::exp(-d1);
    const double g2 = d2 > 745.0 ? 0.0 : std::exp(-d2);
    return (g1 + g2) * std::exp(-damp) / std::sqrt(kPi * s);
}

ResidualValue residual_on_path(const HalfPath& path, double t, double nu, int alpha, double z,
                               double y, double beta) {
    ResolventQuery q{Complex(0, 0), alpha, nu, beta};
    double sum = 0.0, absum = 0.0, last = 0.0;
    for (const auto& node : path.nodes) {
        q.lambda = node.lambda;
        const Complex mu = mu_branch(q);
        const Complex g = residual_time_integrand(q, mu, t, z, y) * node.dweight;
        sum += g.imag();
        const double ag = std::abs(g);
        absum += ag;
        last = ag;
    }
    ResidualValue out;
    out.value = sum / kPi;
    out.noise = (2e-16 * absum + 2.0 * last) / kPi;
    return out;
}

ResidualValue temporal_residual_kernel(double t, double nu, int alpha, double z, double y,
                                       const ContourSpec& spec, double beta) {
    validate_contour(spec, t, nu, alpha, z, y);
    int n = spec.n_nodes;
    ResidualValue prev = residual_on_path(make_half_path(spec.with_nodes(n), t, nu, alpha, z, y), t,
                                          nu, alpha, z, y, beta);
    for (int pass = 0; pass < 7; ++pass) {
        n *= 2;
        ResidualValue cur = residual_on_path(make_half_path(spec.with_nodes(n), t, nu, alpha, z, y),
                                             t, nu, alpha, z, y, beta);
        const double diff = std::abs(cur.value - prev.value);
        if (diff <= 1e-9 * (std::abs(cur.value) + std::abs(prev.value)) ||
            diff <= 4.0 * (cur.noise + prev.noise)) {
            cur.noise += diff;
            return cur;
        }
        prev = cur;
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "temporal_residual_kernel: contour quadrature did not converge at "
                  "t=%g nu=%g alpha=%d z=%g y=%g (family %s, last value %g)",
                  t, nu, alpha, z, y, contour_family_name(spec.family), prev.value);
    fail(ErrorCode::not_converged, buf);
}

std::pair<double, double> residual_mirror_sum(const ContourSpec& spec, double t, double nu,
                                              int alpha, double z, double y, double beta) {
    const HalfPath path = make_half_path(spec, t, nu, alpha, z, y);
    ResolventQuery q{Complex(0, 0), alpha, nu, beta};
    Complex total(0, 0);
    for (const auto& node : path.nodes) {
        q.lambda = node.lambda;
        Complex g = residual_time_integrand(q, mu_branch(q), t, z, y) * node.dweight;
        total += g;
        // explicit mirror node
        q.lambda = std::conj(node.lambda);
        g = residual_time_integrand(q, mu_branch(q), t, z, y) * (-std::conj(node.dweight));
        total += g;
    }
    total /= Complex(0, 2.0 * kPi);
    return {total.real(), total.imag()};
}

void KernelTable::apply_to(std::span<const Complex> in, std::span<Complex> out) const {
    require(has_apply(), ErrorCode::domain_error,
            "KernelTable: no application weights (non-production contour)");
    const std::size_t m = n();
    for (std::size_t i = 0; i < m; ++i) {
        Complex s(0, 0);
        const double* row = apply.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) s += row[j] * in[j];
        out[i] = s;
    }
}

KernelTable build_kernel_table(double t, double nu, int alpha, std::shared_ptr<const ZGrid> grid,
                               const ContourSpec& spec, double beta) {
    require(t > 0.0, ErrorCode::domain_error, "build_kernel_table: t must be positive");
    const std::size_t m = grid->size();
    KernelTable table;
    table.t = t;
    table.nu = nu;
    table.beta = beta;
    table.alpha = alpha;
    table.grid = grid;
    table.grid_hash = grid->hash();
    table.contour_hash = spec.hash();
    table.heat.assign(m * m, 0.0);
    table.residual.assign(m * m, 0.0);

    const auto& z = grid->nodes;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = temporal_heat_kernel(t, nu, alpha, z[i], z[j]);
            table.heat[i * m + j] = v;
            table.heat[j * m + i] = v;
        }

    if (spec.family == ContourFamily::production) {
        const HalfPath path = make_half_path(spec, t, nu, alpha, 0.0, 0.0);
        const std::size_t nq = path.nodes.size();
        const double a = std::abs(static_cast<double>(alpha));
        ResolventQuery q{Complex(0, 0), alpha, nu, beta};

        std::vector<Complex> P(nq * m), F(nq * m), Q(nq * m);
        double noise = 0.0;
        for (std::size_t k = 0; k < nq; ++k) {
            q.lambda = path.nodes[k].lambda;
            const Complex mu = mu_branch(q);
            const SplitCoef c = split_coefficients(q, mu);
            const Complex base = path.nodes[k].dweight;
            double rowmax = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const Complex arg = q.lambda * t - mu * z[i];
                const Complex e = (arg.real() < -745.0) ? Complex(0, 0) : std::exp(arg);
                P[k * m + i] = c.A * e * base;
                Q[k * m + i] = c.B * e * base;
                F[k * m + i] = (mu.real() * z[i] > 745.0) ? Complex(0, 0) : std::exp(-mu * z[i]);
                rowmax = std::max(rowmax, std::abs(P[k * m + i]) + std::abs(Q[k * m + i]));
            }
            noise += rowmax;
        }
        table.residual_noise = 2e-16 * noise / kPi;

        for (std::size_t i = 0; i < m; ++i) {
            double* row = table.residual.data() + i * m;
            for (std::size_t k = 0; k < nq; ++k) {
                const Complex p = P[k * m + i];
                const Complex qq = Q[k * m + i];
                for (std::size_t j = 0; j < m; ++j) {
                    const Complex f = F[k * m + j];
                    const double eay = (a * z[j] > 709.0) ? 0.0 : std::exp(-a * z[j]);
                    row[j] += (p * f).imag() + qq.imag() * eay;
                }
            }
            for (std::size_t j = 0; j < m; ++j) row[j] /= kPi;
        }

        // application weights: heat by half-space Gaussian product
        // integration, residual through the exponential functionals
        CellQuadrature cq(*grid);
        table.apply.assign(m * m, 0.0);
        const double damp = a * a * nu * t;
        const double heat_scale = damp > 745.0 ? 0.0 : std::exp(-damp);
        for (std::size_t i = 0; i < m; ++i) {
            const auto hw = cq.heat_weights(4.0 * nu * t, z[i]);
            double* row = table.apply.data() + i * m;
            for (std::size_t j = 0; j < m; ++j) row[j] = heat_scale * hw[j];
        }
        const auto wa = cq.exp_weights(Complex(a, 0.0));
        for (std::size_t k = 0; k < nq; ++k) {
            const auto v = cq.exp_weights([&] {
                q.lambda = path.nodes[k].lambda;
                return mu_branch(q);
            }());
            for (std::size_t i = 0; i < m; ++i) {
                const Complex p = P[k * m + i];
                const Complex qq = Q[k * m + i];
                double* row = table.apply.data() + i * m;
                for (std::size_t j = 0; j < m; ++j)
                    row[j] += ((p * v[j]).imag() + qq.imag() * wa[j].real()) / kPi;
            }
        }
        return table;
    }

    // paper families: pointwise fused evaluation (verification scale)
    for (std::size_t i = 0; i < m; ++i) {
        const bool row_path = spec.family != ContourFamily::gamma_pm_c;
        HalfPath path;
        if (row_path) path = make_half_path(spec, t, nu, alpha, z[i], 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const ResidualValue rv =
                row_path ? residual_on_path(path, t, nu, alpha, z[i], z[j], beta)
                         : residual_on_path(make_half_path(spec, t, nu, alpha, z[i], z[j]), t, nu,
                                            alpha, z[i], z[j], beta);
            table.residual[i * m + j] = rv.value;
            table.residual_noise = std::max(table.residual_noise, rv.noise);
        }
    }
    return table;
}

namespace {
constexpr std::uint64_t kCacheMagic = 0x534c4e534b543031ull;  // "SLNSKT01"

void write_doubles(std::ofstream& os, const std::vector<double>& v) {
    const std::uint64_t n = v.size();
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    if (n) os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
}

bool read_doubles(std::ifstream& is, std::vector<double>& v) {
    std::uint64_t n = 0;
    if (!is.read(reinterpret_cast<char*>(&n), sizeof(n))) return false;
    v.resize(n);
    if (n && !is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)))) return false;
    return true;
}

std::string cache_path(const std::string& dir, double t, double nu, int alpha, double beta,
                       std::uint64_t grid_hash, std::uint64_t contour_hash) {
    std::uint64_t h = fnv1a(t, kCacheMagic);
    h = fnv1a(nu, h);
    h = fnv1a(static_cast<double>(alpha), h);
    h = fnv1a(beta, h);
    h = fnv1a(static_cast<double>(grid_hash), h);
    h = fnv1a(static_cast<double>(contour_hash), h);
    char name[64];
    std::snprintf(name, sizeof(name), "ktab_%016llx.bin", static_cast<unsigned long long>(h));
    return dir + "/" + name;
}
}  // namespace

void kernel_cache_store(const std::string& dir, const KernelTable& table) {
    std::filesystem::create_directories(dir);
    const std::string path =
        cache_path(dir, table.t, table.nu, table.alpha, table.beta, table.grid_hash, table.contour_hash);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    require(os.good(), ErrorCode::io_error, "kernel cache: cannot open " + path + " for writing");
    const std::uint32_t version = 1;
    os.write(reinterpret_cast<const char*>(&kCacheMagic), sizeof(kCacheMagic));
    os.write(reinterpret_cast<const char*>(&version), sizeof(version));
    os.write(reinterpret_cast<const char*>(&table.t), sizeof(double));
    os.write(reinterpret_cast<const char*>(&table.nu), sizeof(double));
    os.write(reinterpret_cast<const char*>(&table.beta), sizeof(double));
    os.write(reinterpret_cast<const char*>(&table.alpha), sizeof(int));
    os.write(reinterpret_cast<const char*>(&table.grid_hash), sizeof(std::uint64_t));
    os.write(reinterpret_cast<const char*>(&table.contour_hash), sizeof(std::uint64_t));
    os.write(reinterpret_cast<const char*>(&table.residual_noise), sizeof(double));
    write_doubles(os, table.heat);
    write_doubles(os, table.residual);
    write_doubles(os, table.apply);
    require(os.good(), ErrorCode::io_error, "kernel cache: write failed for " + path);
}

bool kernel_cache_load(const std::string& dir, double t, double nu, int alpha, double beta,
                       std::shared_ptr<const ZGrid> grid, std::uint64_t contour_hash,
                       KernelTable& out) {
    const std::string path = cache_path(dir, t, nu, alpha, beta, grid->hash(), contour_hash);
    std::ifstream is(path, std::ios::binary);
    if (!is.good()) return false;
    std::uint64_t magic = 0;
    std::uint32_t version = 0;
    is.read(reinterpret_cast<char*>(&magic), sizeof(magic));
    is.read(reinterpret_cast<char*>(&version), sizeof(version));
    if (magic != kCacheMagic || version != 1) return false;
    KernelTable table;
    table.grid = grid;
    is.read(reinterpret_cast<char*>(&table.t), sizeof(double));
    is.read(reinterpret_cast<char*>(&table.nu), sizeof(double));
    is.read(reinterpret_cast<char*>(&table.beta), sizeof(double));
    is.read(reinterpret_cast<char*>(&table.alpha), sizeof(int));
    is.read(reinterpret_cast<char*>(&table.grid_hash), sizeof(std::uint64_t));
    is.read(reinterpret_cast<char*>(&table.contour_hash), sizeof(std::uint64_t));
    is.read(reinterpret_cast<char*>(&table.residual_noise), sizeof(double));
    if (table.t != t || table.nu != nu || table.alpha != alpha || table.beta != beta ||
        table.grid_hash != grid->hash() || table.contour_hash != contour_hash)
        return false;
    if (!read_doubles(is, table.heat) || !read_doubles(is, table.residual) ||
        !read_doubles(is, table.apply))
        return false;
    out = std::move(table);
    return true;
}

}  // namespace slipns
