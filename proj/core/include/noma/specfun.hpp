#pragma once

// Special functions needed by the outage closed forms: integer-order modified
// Bessel functions of the second kind, small exact combinatorics, and the
// Gauss-Chebyshev quadrature rule used for the semi-closed-form integral.

#include <vector>

namespace noma::specfun {

// Modified Bessel function of the second kind K_v(z) for integer order
// v >= 0 and z > 0. Relative accuracy <= 1e-10 over z in [1e-8, 700],
// orders 0..6 (validated against a high-precision table).
// Returns 0 once the true value falls below the smallest normal double
// (underflow horizon near z ~ 745 for low orders). Throws std::domain_error
// for v < 0 or z <= 0.
double bessel_k(int v, double z);

// Gamma(m) = (m-1)! for integer m >= 1, exact in double up to m = 171.
double gamma_int(int m);

// Binomial coefficient C(n, k), exact integer value (n small; the callers
// pass n = m-1 <= 49 where C(n,k) < 2^53 holds with room to spare).
double binomial(int n, int k);

// Gauss-Chebyshev rule adapted to plain integrals on [-1, 1]:
//   nodes   t_j = cos((2j-1)pi/(2J)), strictly decreasing in (-1, 1)
//   weights w_j = (pi/J) * |sin((2j-1)pi/(2J))|
// Folding sqrt(1-t^2) into the weight turns the first-kind rule into
//   integral_{-1}^{1} f(t) dt ~= sum_j w_j f(t_j),
// so integral_0^b f(rho) drho ~= (b/2) sum_j w_j f((b/2)(1+t_j)).
// The rule is not interpolatory for plain integrals: sum_j w_j equals
// (pi/J)/sin(pi/(2J)) -> 2 with an O(J^-2) excess, so even a constant
// integrand carries that relative error. The semi-closed outage form is
// defined in terms of exactly this rule, so the excess is kept, not fixed.
struct ChebyshevRule {
    int order;                   // J >= 1
    std::vector<double> nodes;   // size J
    std::vector<double> weights; // size J, all positive
};

// Builds the rule above. Throws std::domain_error for order < 1.
ChebyshevRule chebyshev_rule(int order);

} // namespace noma::specfun
