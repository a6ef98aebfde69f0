#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slipns/cmath_util.hpp"

namespace slipns {

// Inverse-Laplace integration paths. gamma_pm_c is the arc-plus-parabola
// path for alpha^2 nu <= 1; gamma1/gamma2 are the (possibly shifted)
// parabolas for alpha^2 nu >= 1; production is a fixed t-scaled hyperbola
// that is admissible for every (alpha, nu) and shared across a whole kernel
// table.
enum class ContourFamily { gamma_pm_c, gamma1, gamma2, production };

struct ContourSpec {
    ContourFamily family = ContourFamily::production;
    double vertex_a = 0.0;    // vertex scale: adds nu*a^2 to the hyperbola vertex
    double arc_radius = 2.0;  // minimum arc radius M for gamma_pm_c
    double b_max = 0.0;       // manual truncation of the path parameter; 0 = auto
    int n_nodes = 96;
    double mu0 = 4.0;         // hyperbola vertex scale mu0/t

    std::uint64_t hash() const;
    ContourSpec with_nodes(int n) const {
        ContourSpec s = *this;
        s.n_nodes = n;
        return s;
    }
};

const char* contour_family_name(ContourFamily f);
ContourFamily contour_family_from_name(const std::string& s);

// One node of the upper (Im >= 0) half of a conjugate-symmetric path:
// dweight = lambda'(u) * trapezoid weight. An integral (1/2 pi i) int_G F dlambda
// of a conjugate-even F evaluates to (1/pi) sum_k Im( F(lambda_k) * dweight_k ).
struct PathNode {
    Complex lambda;
    Complex dweight;
};

struct HalfPath {
    std::vector<PathNode> nodes;
};

// Throws if the family is not admissible at (t, nu, alpha, z, y) or if the
// path would touch the spectral cut.
void validate_contour(const ContourSpec& spec, double t, double nu, int alpha, double z, double y);

HalfPath make_half_path(const ContourSpec& spec, double t, double nu, int alpha, double z, double y);

}  // namespace slipns
