#pragma once

#include <complex>

#include "slipns/cmath_util.hpp"

namespace slipns {

// One evaluation point of the resolvent problem
//   (lambda - nu Delta_alpha) G = delta_y,
//   nu^beta G(0,y) = -int_0^inf e^{-|alpha| z} G(z,y) dz.
// The slip exponent generalizes the critical case beta = 1.
struct ResolventQuery {
    Complex lambda;
    int alpha = 0;
    double nu = 0.0;
    double slip_exponent = 1.0;  // beta in [0, 1]

    double abs_alpha() const { return std::abs(static_cast<double>(alpha)); }
    double slip_coefficient() const;  // nu^beta
    void validate() const;            // rejects lambda on the cut {-alpha^2 nu - R_+}
};

// mu = sqrt(lambda/nu + alpha^2) with positive real part.
Complex mu_branch(const ResolventQuery& q);

struct ResolventParts {
    Complex H;  // Neumann heat resolvent part
    Complex R;  // residual part from the nonlocal boundary condition
};

// Closed-form resolvent kernel split G = H + R. R is evaluated in a form
// whose lambda -> 0 singularity is removable: the (mu - |alpha|) quotient is
// computed through (1 - e^{-w})/w, so no 0/0 occurs near the pole.
ResolventParts resolvent_kernel(const ResolventQuery& q, double z, double y);

// e^{lambda t} R_{lambda,alpha}(z,y) with all exponentials fused into single
// exp() calls; this is the integrand of the inverse Laplace transform and
// stays well-scaled on the steep verification contours. mu must equal
// mu_branch(q).
Complex residual_time_integrand(const ResolventQuery& q, Complex mu, double t, double z, double y);

// Critical-case (beta = 1) combined-fraction reference
//   R = [((a - lambda)/mu) e^{-mu(y+z)} - e^{-a y - mu z}] / (nu (lambda + mu - a)),
// used to pin the generalized coefficients against the closed form.
Complex residual_reference_beta1(const ResolventQuery& q, double z, double y);

}  // namespace slipns
