#include "slipns/resolvent.hpp"

#include <cmath>

#include "slipns/errors.hpp"

namespace slipns {

double ResolventQuery::slip_coefficient() const { return std::pow(nu, slip_exponent); }

void ResolventQuery::validate() const {
    require(nu > 0.0, ErrorCode::invalid_argument, "ResolventQuery: nu must be positive");
    require(slip_exponent >= 0.0 && slip_exponent <= 1.0, ErrorCode::invalid_argument,
            "ResolventQuery: slip exponent must lie in [0, 1]");
    const double a2nu = abs_alpha() * abs_alpha() * nu;
    if (std::abs(lambda.imag()) <= 1e-300 && lambda.real() <= -a2nu)
        fail(ErrorCode::branch_cut, "ResolventQuery: lambda lies on the spectral cut");
}

Complex mu_branch(const ResolventQuery& q) {
    q.validate();
    const double a = q.abs_alpha();
    const Complex mu = std::sqrt(q.lambda / q.nu + a * a);
    require(mu.real() > 0.0, ErrorCode::branch_cut,
            "mu_branch: query touches the branch cut, Re(mu) not positive");
    return mu;
}

Complex residual_time_integrand(const ResolventQuery& q, Complex mu, double t, double z, double y) {
    const double a = q.abs_alpha();
    const double nu = q.nu;
    const double slip = q.slip_coefficient();
    const Complex lt = q.lambda * t;

    const Complex arg_m = lt - mu * (y + z);
    const Complex arg_a = lt - mu * z - a * y;
    const Complex Em = (arg_m.real() < -745.0) ? Complex(0, 0) : std::exp(arg_m);
    const Complex Ea = (arg_a.real() < -745.0) ? Complex(0, 0) : std::exp(arg_a);

    // (Ea - Em)/(mu - a) without cancellation at the removable pole mu = a
    const Complex quotient = Ea * y * em1_ratio((mu - a) * y);

    const Complex D = slip * (mu + a) + 1.0;
    const Complex bracket = slip * Em + quotient + Ea / (mu + a);
    return -((mu + a) / (2.0 * mu * nu * D)) * bracket - Em / (2.0 * mu * nu);
}

ResolventParts resolvent_kernel(const ResolventQuery& q, double z, double y) {
    require(z >= 0.0 && y >= 0.0, ErrorCode::invalid_argument, "resolvent_kernel: z, y must be >= 0");
    const Complex mu = mu_branch(q);
    const double nu = q.nu;
    ResolventParts out;
    const Complex e_diff = std::exp(-mu * std::abs(y - z));
    const Complex e_sum = (mu.real() * (y + z) > 745.0) ? Complex(0, 0) : std::exp(-mu * (y + z));
    out.H = (e_diff + e_sum) / (2.0 * mu * nu);
    out.R = residual_time_integrand(q, mu, 0.0, z, y);
    return out;
}

Complex residual_reference_beta1(const ResolventQuery& q, double z, double y) {
    require(q.slip_exponent == 1.0, ErrorCode::invalid_argument,
            "residual_reference_beta1: defined for beta = 1 only");
    const Complex mu = mu_branch(q);
    const double a = q.abs_alpha();
    const Complex denom = q.nu * (q.lambda + mu - a);
    require(std::abs(q.lambda + mu - a) > 1e-12 * std::max(1.0, std::abs(mu)), ErrorCode::domain_error,
            "residual_reference_beta1: too close to the lambda = 0 pole");
    return ((a - q.lambda) / mu) * std::exp(-mu * (y + z)) / denom -
           std::exp(-a * y - mu * z) / denom;
}

}  // namespace slipns
