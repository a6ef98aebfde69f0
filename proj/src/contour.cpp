#include "slipns/contour.hpp"

#include <cmath>
#include <string>

#include "slipns/errors.hpp"

namespace slipns {

namespace {
constexpr double kDecayTarget = 46.0;  // e^{-46} ~ 1e-20 relative tail
constexpr double kSinPhi = 0.70710678118654752440;
constexpr double kCosPhi = 0.70710678118654752440;
}  // namespace

std::uint64_t ContourSpec::hash() const {
    std::uint64_t h = fnv1a(static_cast<double>(static_cast<int>(family)), 1469598103934665603ull);
    h = fnv1a(vertex_a, h);
    h = fnv1a(arc_radius, h);
    h = fnv1a(b_max, h);
    h = fnv1a(static_cast<double>(n_nodes), h);
    h = fnv1a(mu0, h);
    return h;
}

const char* contour_family_name(ContourFamily f) {
    switch (f) {
        case ContourFamily::gamma_pm_c: return "gamma_pm_c";
        case ContourFamily::gamma1: return "gamma1";
        case ContourFamily::gamma2: return "gamma2";
        case ContourFamily::production: return "production";
    }
    return "?";
}

ContourFamily contour_family_from_name(const std::string& s) {
    if (s == "gamma_pm_c") return ContourFamily::gamma_pm_c;
    if (s == "gamma1") return ContourFamily::gamma1;
    if (s == "gamma2") return ContourFamily::gamma2;
    if (s == "production") return ContourFamily::production;
    fail(ErrorCode::invalid_argument, "unknown contour family: " + s);
}

void validate_contour(const ContourSpec& spec, double t, double nu, int alpha, double z, double y) {
    require(spec.n_nodes >= 32, ErrorCode::invalid_argument, "contour: n_nodes must be >= 32");
    require(t > 0.0, ErrorCode::invalid_argument, "contour: need t > 0");
    require(nu > 0.0, ErrorCode::invalid_argument, "contour: need nu > 0");
    const double a = std::abs(static_cast<double>(alpha));
    const double a2nu = a * a * nu;
    switch (spec.family) {
        case ContourFamily::production:
            return;
        case ContourFamily::gamma_pm_c:
            require(a2nu <= 1.0 + 1e-12, ErrorCode::domain_error,
                    "gamma_pm_c requires alpha^2 nu <= 1");
            return;
        case ContourFamily::gamma1: {
            require(a2nu >= 1.0 - 1e-12, ErrorCode::domain_error, "gamma1 requires alpha^2 nu >= 1");
            const double ap = z / (2.0 * nu * t);
            require(ap > 0.0, ErrorCode::domain_error,
                    "gamma1 degenerates onto the spectral cut at z = 0");
            require(std::abs(ap - a) >= 0.5 * a - 1e-12, ErrorCode::domain_error,
                    "gamma1 requires |z/(2 nu t) - alpha| >= alpha/2");
            return;
        }
        case ContourFamily::gamma2: {
            require(a2nu >= 1.0 - 1e-12, ErrorCode::domain_error, "gamma2 requires alpha^2 nu >= 1");
            const double ap = z / (2.0 * nu * t);
            require(ap > 0.0, ErrorCode::domain_error, "gamma2 needs z > 0");
            require(std::abs(ap - a) <= 0.5 * a + 1e-12, ErrorCode::domain_error,
                    "gamma2 requires |z/(2 nu t) - alpha| <= alpha/2");
            return;
        }
    }
    (void)y;
}

namespace {

// uniform trapezoid weights on n nodes spanning [0, end]
double trap_weight(int k, int n, double h) { return (k == 0 || k == n - 1) ? 0.5 * h : h; }

HalfPath hyperbola(const ContourSpec& spec, double t, double nu) {
    const double s0 = nu * spec.vertex_a * spec.vertex_a + spec.mu0 / t;
    const double st = s0 * t;
    double umax = spec.b_max;
    if (umax <= 0.0) umax = std::acosh((1.0 + kDecayTarget / st) / kSinPhi);
    const int n = spec.n_nodes;
    const double h = umax / static_cast<double>(n - 1);
    HalfPath path;
    path.nodes.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double u = h * static_cast<double>(k);
        const Complex lam = s0 * Complex(1.0 - kSinPhi * std::cosh(u), kCosPhi * std::sinh(u));
        const Complex dlam = s0 * Complex(-kSinPhi * std::sinh(u), kCosPhi * std::cosh(u));
        path.nodes.push_back({lam, dlam * trap_weight(k, n, h)});
    }
    return path;
}

// upper parabola lambda = c0 + nu (ap + i b)^2 [+ i shift], b in [0, b_max]
void add_parabola(HalfPath& path, double c0, double nu, double ap, double shift, double bmax,
                  int n) {
    const double h = bmax / static_cast<double>(n - 1);
    for (int k = 0; k < n; ++k) {
        const double b = h * static_cast<double>(k);
        const Complex mu0(ap, b);
        const Complex lam = c0 + nu * mu0 * mu0 + Complex(0.0, shift);
        const Complex dlam = 2.0 * nu * Complex(0.0, 1.0) * mu0;
        path.nodes.push_back({lam, dlam * trap_weight(k, n, h)});
    }
}

HalfPath case1_path(const ContourSpec& spec, double t, double nu, int alpha, double z, double y) {
    const double a = std::abs(static_cast<double>(alpha));
    const double ap = (y + z) / (2.0 * nu * t);
    const double c0 = -0.5 * a * a * nu + nu * ap * ap;
    const double M = std::max(spec.arc_radius, 1.2 * std::abs(c0) + 1.0);
    HalfPath path;
    // arc: lambda = c0 + M e^{i theta}, theta in [0, pi/2]
    const int n_arc = std::max(17, spec.n_nodes / 3);
    const double htheta = 0.5 * 3.14159265358979323846 / static_cast<double>(n_arc - 1);
    for (int k = 0; k < n_arc; ++k) {
        const double th = htheta * static_cast<double>(k);
        const Complex e(std::cos(th), std::sin(th));
        path.nodes.push_back({c0 + M * e, Complex(0, 1) * M * e * trap_weight(k, n_arc, htheta)});
    }
    double bmax = spec.b_max;
    if (bmax <= 0.0) bmax = std::sqrt(kDecayTarget / (nu * t));
    add_parabola(path, c0, nu, ap, M, bmax, spec.n_nodes);
    return path;
}

HalfPath case2_path(const ContourSpec& spec, double t, double nu, int alpha, double z,
                    double vertex_factor) {
    const double a = std::abs(static_cast<double>(alpha));
    const double ap = z / (2.0 * nu * t);
    const double c0 = -vertex_factor * a * a * nu;
    double bmax = spec.b_max;
    if (bmax <= 0.0) bmax = std::sqrt(kDecayTarget / (nu * t));
    HalfPath path;
    add_parabola(path, c0, nu, ap, 0.0, bmax, spec.n_nodes);
    return path;
}

}  // namespace

HalfPath make_half_path(const ContourSpec& spec, double t, double nu, int alpha, double z, double y) {
    validate_contour(spec, t, nu, alpha, z, y);
    switch (spec.family) {
        case ContourFamily::production: return hyperbola(spec, t, nu);
        case ContourFamily::gamma_pm_c: return case1_path(spec, t, nu, alpha, z, y);
        case ContourFamily::gamma1: return case2_path(spec, t, nu, alpha, z, 1.0);
        case ContourFamily::gamma2: return case2_path(spec, t, nu, alpha, z, 0.125);
    }
    fail(ErrorCode::internal, "unreachable contour family");
}

}  // namespace slipns
