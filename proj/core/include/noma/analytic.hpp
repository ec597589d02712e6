#pragma once

// Closed-form and semi-closed-form outage probabilities. Every routine
// returns a probability in [0,1]; tiny negative rounding residue (magnitude
// below 1e-12) is clamped to 0 and the mirrored residue above 1 is clamped
// to 1, while anything further out raises numeric_error.

#include "noma/model.hpp"
#include "noma/outage_estimate.hpp"

namespace noma::analytic {

// Fixed power allocation, user 1 (the ordered-stronger user): closed form
// for general integer m. 1.0 when the power split cannot support tau2.
double fpa_outage_user1(const SystemParams& p);

// Fixed power allocation, user 2: single-branch form using Phi row 0 with
// the ordered-minimum mean Omega2.
double fpa_outage_user2(const SystemParams& p);

// User 1 under residual SIC error sigma_ic2. With sigma_ic2 = 0 this follows
// the exact same arithmetic as fpa_outage_user1 (bit-identical result).
double fpa_outage_user1_isic(const SystemParams& p);

// High-SNR limit (P -> infinity) of the FPA outage; user is 1 or 2.
// Strictly positive iff sigma_e2 > 0 on the valid delta region.
double fpa_floor(const SystemParams& p, int user);

// Dynamic power allocation (rate-guarantee split for user 2), m = 1 only;
// throws unsupported_error otherwise. User 1 needs the order-J Chebyshev
// evaluation of the residual integral; user 2 is fully closed.
double dpa_outage_user1(const SystemParams& p, int J = 30);
double dpa_outage_user2(const SystemParams& p);

// The residual DPA probability mass handled by quadrature: the event that
// the relay harvests, user 2's guarantee is met with g2 below the
// self-sufficiency point tau0(sigma_e2 + 1/P'), and g1 still clears the
// induced threshold. Two independent evaluation routes:
//   - chebyshev: the semi-closed form (order-J Gauss-Chebyshev of the
//     Bessel-K integrand),
//   - direct: 2-D adaptive quadrature of the defining double integral with
//     the g1 tail integrated analytically; no Bessel functions, no Chebyshev
//     nodes. Relative accuracy target 1e-4.
// Both require m = 1.
double upsilon_ii_chebyshev(const SystemParams& p, int J);
double upsilon_ii_direct(const SystemParams& p);

// Per-realization decoding threshold on g1 given the source-relay gain g:
// max over valid Phi rows of Phi[n][0] + Phi[n][1]/(P g - tau0).
// +infinity when g <= tau0/P or when a row is invalid.
double lambda_max(const PhiMatrix& phi, double g, const Thresholds& t);

// CDF of the ordered-stronger relay-user gain g1:
// F(x) = 1 - [e^(-x/Omega1) - e^(-x/Omega2) + e^(-x/Omega3)], 0 for x <= 0.
double ordered_gain_cdf(const SystemParams& p, double x);

// Applies the shared clamping contract to a raw probability-like value.
double clamp_probability(double value, const char* what);

} // namespace noma::analytic
