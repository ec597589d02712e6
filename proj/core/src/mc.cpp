#include "noma/mc.hpp"

#include "noma/errors.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace noma::mc {
namespace {

// splitmix64 finalizer over (seed, chunk): cheap, stateless, and well mixed,
// so chunk substreams are independent of how chunks land on workers.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t chunk) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (chunk + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double exp_draw(std::mt19937_64& rng, double mean) {
    return -std::log1p(-u01(rng)) * mean;
}

} // namespace

std::mt19937_64 chunk_rng(const RngSpec& spec, std::uint64_t chunk_index) {
    return std::mt19937_64(mix_seed(spec.seed, chunk_index));
}

TrialDraw draw_trial(std::mt19937_64& rng, const SystemParams& p, const DerivedQuantities& q) {
    // Gamma(m, 1/m) as the mean of m unit exponentials (m is integer).
    double h2 = 0.0;
    for (int i = 0; i < p.m; ++i) h2 += -std::log1p(-u01(rng));
    h2 /= p.m;
    const double g = h2 * std::pow(p.d, -p.alpha);

    const double e_u1 = exp_draw(rng, q.omega.omega3); // relay-user1 estimated gain
    const double e_u2 = exp_draw(rng, q.omega.omega1); // relay-user2 estimated gain

    TrialDraw t;
    t.g = g;
    t.g1 = std::max(e_u1, e_u2);
    t.g2 = std::min(e_u1, e_u2);
    t.p_prime = p.eta * (q.tau.P * g - q.tau.tau0);
    t.delta_used = p.delta;
    return t;
}

TrialOutcome eval_fpa(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q) {
    if (t.p_prime <= 0.0) return {true, true};
    const double dl = p.delta, se = p.sigma_e2, pp = t.p_prime;
    const double sinr_u2 = dl * pp * t.g2 / ((1.0 - dl) * pp * t.g2 + pp * se + 1.0);
    const double sinr_u1_stage = dl * pp * t.g1 / ((1.0 - dl) * pp * t.g1 + pp * se + 1.0);
    const double sinr_u1_own = (1.0 - dl) * pp * t.g1 / (pp * se + 1.0);
    return {!(sinr_u1_stage > q.tau.tau2 && sinr_u1_own > q.tau.tau1),
            !(sinr_u2 > q.tau.tau2)};
}

TrialOutcome eval_fpa_isic(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q) {
    if (t.p_prime <= 0.0) return {true, true};
    const double dl = p.delta, se = p.sigma_e2, pp = t.p_prime;
    const double sinr_u2 = dl * pp * t.g2 / ((1.0 - dl) * pp * t.g2 + pp * se + 1.0);
    const double sinr_u1_stage = dl * pp * t.g1 / ((1.0 - dl) * pp * t.g1 + pp * se + 1.0);
    // Residual SIC error leaves a fraction sigma_ic2 of the peer signal.
    const double sinr_u1_own =
        (1.0 - dl) * pp * t.g1 / (pp * se + pp * dl * t.g1 * p.sigma_ic2 + 1.0);
    return {!(sinr_u1_stage > q.tau.tau2 && sinr_u1_own > q.tau.tau1),
            !(sinr_u2 > q.tau.tau2)};
}

double dpa_delta(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q) {
    if (t.p_prime <= 0.0) return 1.0;
    const double pp = t.p_prime;
    const double headroom = pp * t.g2 - q.tau.tau2 * (p.sigma_e2 * pp + 1.0);
    if (headroom <= 0.0) return 1.0;
    return 1.0 - headroom / ((1.0 + q.tau.tau2) * pp * t.g2);
}

TrialOutcome eval_dpa(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q) {
    if (t.p_prime <= 0.0) return {true, true};
    const double pp = t.p_prime;
    const double headroom = pp * t.g2 - q.tau.tau2 * (p.sigma_e2 * pp + 1.0);
    if (headroom <= 0.0) return {true, true}; // user 2 unservable even with all power
    const double dl = dpa_delta(t, p, q);
    const double sinr_u1_own = (1.0 - dl) * pp * t.g1 / (pp * p.sigma_e2 + 1.0);
    return {!(sinr_u1_own > q.tau.tau1), false};
}

TrialOutcome eval_oma(const TrialDraw& t, const SystemParams& p, const DerivedQuantities& q) {
    if (t.p_prime <= 0.0) return {true, true};
    const double pp = t.p_prime, se = p.sigma_e2;
    // Each user gets the full relay power in half the slot: doubled rate target.
    const double th1 = std::exp2(4.0 * p.r1) - 1.0;
    const double th2 = std::exp2(4.0 * p.r2) - 1.0;
    return {!(pp * t.g1 / (pp * se + 1.0) > th1),
            !(pp * t.g2 / (pp * se + 1.0) > th2)};
}

OutageCounters run_campaign(const SystemParams& p, std::uint64_t trials,
                            const RngSpec& spec, unsigned schemes_mask, unsigned workers) {
    validate(p);
    if (trials == 0) throw validation_error("run_campaign: trials must be >= 1");
    if (spec.chunk_size == 0) throw validation_error("run_campaign: chunk_size must be >= 1");
    const DerivedQuantities q = derive(p);
    if (schemes_mask == 0)
        schemes_mask = scheme_bit(Scheme::FPA) | scheme_bit(Scheme::FPA_ISIC) |
                       scheme_bit(Scheme::DPA) | scheme_bit(Scheme::OMA);

    const std::uint64_t chunks = (trials + spec.chunk_size - 1) / spec.chunk_size;
    unsigned w = workers ? workers : std::thread::hardware_concurrency();
    if (w == 0) w = 1;
    if (w > chunks) w = static_cast<unsigned>(chunks);

    const bool want_fpa = schemes_mask & scheme_bit(Scheme::FPA);
    const bool want_isic = schemes_mask & scheme_bit(Scheme::FPA_ISIC);
    const bool want_dpa = schemes_mask & scheme_bit(Scheme::DPA);
    const bool want_oma = schemes_mask & scheme_bit(Scheme::OMA);

    std::vector<OutageCounters> partial(w);
    auto work = [&](unsigned wi) {
        OutageCounters local{};
        for (std::uint64_t c = wi; c < chunks; c += w) {
            std::mt19937_64 rng = chunk_rng(spec, c);
            const std::uint64_t lo = c * spec.chunk_size;
            const std::uint64_t n = std::min<std::uint64_t>(spec.chunk_size, trials - lo);
            for (std::uint64_t i = 0; i < n; ++i) {
                const TrialDraw t = draw_trial(rng, p, q);
                if (want_fpa) {
                    const TrialOutcome o = eval_fpa(t, p, q);
                    local.fpa_u1 += o.outage_u1;
                    local.fpa_u2 += o.outage_u2;
                }
                if (want_isic) {
                    const TrialOutcome o = eval_fpa_isic(t, p, q);
                    local.fpa_isic_u1 += o.outage_u1;
                    local.fpa_isic_u2 += o.outage_u2;
                }
                if (want_dpa) {
                    const TrialOutcome o = eval_dpa(t, p, q);
                    local.dpa_u1 += o.outage_u1;
                    local.dpa_u2 += o.outage_u2;
                }
                if (want_oma) {
                    const TrialOutcome o = eval_oma(t, p, q);
                    local.oma_u1 += o.outage_u1;
                    local.oma_u2 += o.outage_u2;
                }
            }
        }
        partial[wi] = local;
    };

    if (w == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (unsigned wi = 0; wi < w; ++wi) pool.emplace_back(work, wi);
        for (auto& th : pool) th.join();
    }

    OutageCounters out{};
    out.trials = trials;
    for (const auto& c : partial) {
        out.fpa_u1 += c.fpa_u1;
        out.fpa_u2 += c.fpa_u2;
        out.fpa_isic_u1 += c.fpa_isic_u1;
        out.fpa_isic_u2 += c.fpa_isic_u2;
        out.dpa_u1 += c.dpa_u1;
        out.dpa_u2 += c.dpa_u2;
        out.oma_u1 += c.oma_u1;
        out.oma_u2 += c.oma_u2;
    }
    return out;
}

OutageEstimate to_estimate(std::uint64_t count, std::uint64_t trials) {
    if (trials == 0) throw validation_error("to_estimate: trials must be >= 1");
    if (count > trials) throw numeric_error("to_estimate: count exceeds trials");
    OutageEstimate e;
    e.method = Method::MONTE_CARLO;
    e.trials = trials;
    e.value = static_cast<double>(count) / static_cast<double>(trials);
    e.std_err = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    e.degenerate = (count == 0 || count == trials);
    return e;
}

} // namespace noma::mc
