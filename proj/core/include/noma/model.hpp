#pragma once

// System model for the two-user wireless-powered cooperative relaying
// network: parameter validation and the derived quantities every outage
// expression consumes (SINR thresholds, ordered-channel means, the threshold
// matrix Phi, and the power-split regime classification).

#include <string>

namespace noma {

// All power-like fields are linear (the config layer converts dB inputs
// exactly once). Distances are raw; path loss enters as d^(-alpha).
struct SystemParams {
    double ps_lin = 0.0;     // source transmit power (linear)
    double sigma2_lin = 0.0; // noise power (linear)
    double eta = 0.7;        // energy-harvesting efficiency, [0,1]
    double delta = 0.0;      // relay power split: fraction delta to user 2
    double xi = 0.5;         // source power split (carried metadata; no outage formula uses it)
    int m = 1;               // Nakagami-m parameter of the source-relay link
    double d = 1.0;          // source-relay distance
    double d1 = 1.0;         // relay-user1 distance
    double d2 = 10.0;        // relay-user2 distance
    double alpha = 2.0;      // path-loss exponent
    double r1 = 0.0;         // target rate, user 1 (bit/s/Hz)
    double r2 = 0.0;         // target rate, user 2
    double sigma_e2 = 0.0;   // channel-estimation error variance
    double sigma_ic2 = 0.0;  // residual SIC error variance
};

// Throws validation_error listing every violated field at once.
void validate(const SystemParams& p);

struct Thresholds {
    double tau0; // 2^(2(r1+r2)) - 1, the harvesting/decoding gate at the relay
    double tau1; // 2^(2 r1) - 1
    double tau2; // 2^(2 r2) - 1
    double P;    // normalized source SNR ps_lin / sigma2_lin
};

// Means of the relay-user estimated channel powers. Omega3 belongs to the
// user-1 link, Omega1 to the user-2 link; Omega2 = Omega1*Omega3/(Omega1+Omega3)
// is the mean of the ordered minimum (1/Omega2 = 1/Omega1 + 1/Omega3).
struct OmegaSet {
    double omega1;
    double omega2;
    double omega3;
};

// Row n of Phi defines the user-1 decoding threshold on g1 as
// Phi[n][0] + Phi[n][1]/(P g - tau0): row 0 from the gamma_{1/2} > tau2
// condition, row 1 from the gamma_1 > tau1 condition. Entries are the outer
// product of (a, b) with (sigma_e2, 1/eta) where a = tau2/(delta(tau2+1)-tau2)
// and b = tau1/(1-delta) (perfect SIC) or b = tau1/(1-delta(tau1*sigma_ic2+1))
// (SIC-aware). A row is valid only when its denominator is strictly positive;
// an invalid row means the owning scheme is in outage with certainty.
struct PhiMatrix {
    double v[2][2];
    bool sic_aware;
    bool row_valid[2];
};

// Which Phi row realizes Lambda_max = max over rows, uniform in g on the
// valid delta region. ALWAYS_OUTAGE: delta <= tau2/(tau2+1) (and, SIC-aware,
// also delta >= 1/(tau1*sigma_ic2+1)). BRANCH_1: row 0 dominates
// (delta below the crossover). BRANCH_2: row 1 dominates.
struct DeltaBranch {
    enum Kind { ALWAYS_OUTAGE, BRANCH_1, BRANCH_2 };
    Kind branch;
    double lower;   // always-outage boundary tau2/(tau2+1)
    double upper;   // row crossover: (tau0-tau1)/tau0, or
                    // (tau0-tau1)/(tau0+tau1*tau2*sigma_ic2) when SIC-aware
    double ceiling; // SIC-aware always-outage ceiling 1/(tau1*sigma_ic2+1);
                    // 1.0 when sigma_ic2 = 0
};

PhiMatrix make_phi(const Thresholds& t, const SystemParams& p, bool sic_aware);
DeltaBranch classify_delta(const Thresholds& t, const SystemParams& p, bool sic_aware);

struct DerivedQuantities {
    Thresholds tau;
    OmegaSet omega;
    PhiMatrix phi;            // perfect-SIC variant
    PhiMatrix phi_isic;       // SIC-aware variant; equals phi when sigma_ic2 = 0
    DeltaBranch branch;       // perfect-SIC classification
    DeltaBranch branch_isic;  // SIC-aware classification
};

// Validates, then computes every derived quantity.
DerivedQuantities derive(const SystemParams& p);

// 10^(db/10); the only place dB enters the codebase is the config layer.
double db_to_linear(double db);

} // namespace noma
