#pragma once

// Monte Carlo oracle: simulates the system straight from the SINR
// expressions (no closed-form machinery) so the analytic module has an
// independent referee. Campaigns are chunked into fixed-size substreams,
// each seeded by a stateless mix of (master seed, chunk index); results are
// bit-identical for any worker count.

#include "noma/model.hpp"
#include "noma/outage_estimate.hpp"

#include <cstdint>
#include <random>

namespace noma::mc {

struct RngSpec {
    std::uint64_t seed = 1;
    std::uint64_t chunk_size = 1u << 16; // trials per substream
};

// One channel realization. delta_used starts as the configured split;
// eval_dpa ignores it and applies the per-trial rate-guarantee split.
struct TrialDraw {
    double g;          // source-relay gain |h|^2 d^(-alpha), |h|^2 ~ Gamma(m, 1/m)
    double g1;         // max of the two relay-user estimated gains
    double g2;         // min of the two
    double p_prime;    // harvested relay power eta(P g - tau0); <= 0 means no service
    double delta_used;
};

struct TrialOutcome {
    bool outage_u1;
    bool outage_u2;
};

struct OutageCounters {
    std::uint64_t trials = 0;
    std::uint64_t fpa_u1 = 0, fpa_u2 = 0;
    std::uint64_t fpa_isic_u1 = 0, fpa_isic_u2 = 0;
    std::uint64_t dpa_u1 = 0, dpa_u2 = 0;
    std::uint64_t oma_u1 = 0, oma_u2 = 0;
};

enum class Scheme { FPA, FPA_ISIC, DPA, OMA };

// Substream generator for a chunk: mt19937_64 seeded by the stateless mix.
std::mt19937_64 chunk_rng(const RngSpec& spec, std::uint64_t chunk_index);

// Draws one realization, consuming exactly m + 2 uniforms.
TrialDraw draw_trial(std::mt19937_64& rng, const SystemParams& p, const DerivedQuantities& q);

// Outage indicators per scheme, evaluated from the SINR definitions.
TrialOutcome eval_fpa(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q);
TrialOutcome eval_fpa_isic(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q);
TrialOutcome eval_dpa(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q);
TrialOutcome eval_oma(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q);

// The per-trial split chosen by DPA (1 when user 2 cannot be served).
double dpa_delta(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q);

// Runs `trials` draws, evaluating the schemes selected in `schemes` (bitmask
// by Scheme value; all four when 0). workers = 0 picks hardware concurrency.
// Identical (params, trials, spec, schemes) give identical counters for any
// worker count.
OutageCounters run_campaign(const SystemParams& p, std::uint64_t trials,
                            const RngSpec& spec, unsigned schemes_mask = 0,
                            unsigned workers = 0);

constexpr unsigned scheme_bit(Scheme s) { return 1u << static_cast<unsigned>(s); }

// count/trials with the binomial standard error; flags degenerate estimates.
OutageEstimate to_estimate(std::uint64_t count, std::uint64_t trials);

} // namespace noma::mc
