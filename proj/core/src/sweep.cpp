#include "noma/sweep.hpp"

#include "noma/analytic.hpp"
#include "noma/errors.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace noma {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t count_for(const mc::OutageCounters& c, mc::Scheme s, int user) {
    switch (s) {
        case mc::Scheme::FPA: return user == 1 ? c.fpa_u1 : c.fpa_u2;
        case mc::Scheme::FPA_ISIC: return user == 1 ? c.fpa_isic_u1 : c.fpa_isic_u2;
        case mc::Scheme::DPA: return user == 1 ? c.dpa_u1 : c.dpa_u2;
        case mc::Scheme::OMA: return user == 1 ? c.oma_u1 : c.oma_u2;
    }
    throw validation_error("count_for: bad scheme");
}

} // namespace

bool is_sweepable_param(const std::string& name) {
    return name == "p_s_db" || name == "noise_db" || name == "delta" || name == "eta" ||
           name == "sigma_e2" || name == "sigma_ic2" || name == "d2" || name == "alpha";
}

std::string scheme_name(mc::Scheme s) {
    switch (s) {
        case mc::Scheme::FPA: return "fpa";
        case mc::Scheme::FPA_ISIC: return "fpa_isic";
        case mc::Scheme::DPA: return "dpa";
        case mc::Scheme::OMA: return "oma";
    }
    throw validation_error("scheme_name: bad scheme");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::CLOSED_FORM: return "analytic";
        case Method::QUADRATURE_ORACLE: return "quadrature";
        case Method::MONTE_CARLO: return "mc";
    }
    throw validation_error("method_name: bad method");
}

SystemParams apply_sweep_value(const SystemParams& base, const std::string& param, double value) {
    SystemParams p = base;
    if (param == "p_s_db") p.ps_lin = db_to_linear(value);
    else if (param == "noise_db") p.sigma2_lin = db_to_linear(value);
    else if (param == "delta") p.delta = value;
    else if (param == "eta") p.eta = value;
    else if (param == "sigma_e2") p.sigma_e2 = value;
    else if (param == "sigma_ic2") p.sigma_ic2 = value;
    else if (param == "d2") p.d2 = value;
    else if (param == "alpha") p.alpha = value;
    else throw validation_error("apply_sweep_value: '" + param + "' is not sweepable");
    return p;
}

std::vector<ResultRow> run_sweep(const SystemParams& base, const SweepSpec& sweep,
                                 unsigned workers, std::ostream* log) {
    if (sweep.grid.empty()) throw validation_error("run_sweep: empty grid");
    if (sweep.schemes.empty()) throw validation_error("run_sweep: empty schemes set");
    if (sweep.users.empty()) throw validation_error("run_sweep: empty users set");
    if (!sweep.method_analytic && !sweep.method_mc)
        throw validation_error("run_sweep: no method requested");
    if (sweep.trials == 0) throw validation_error("run_sweep: trials must be >= 1");
    if (sweep.j < 1) throw validation_error("run_sweep: j must be >= 1");

    // Fail fast: every grid point must yield valid parameters before any work.
    for (double v : sweep.grid) {
        try {
            validate(apply_sweep_value(base, sweep.param, v));
        } catch (const validation_error& e) {
            std::ostringstream os;
            os << "run_sweep: grid value " << v << " for '" << sweep.param
               << "' rejected: " << e.what();
            throw validation_error(os.str());
        }
    }

    unsigned schemes_mask = 0;
    for (mc::Scheme s : sweep.schemes) schemes_mask |= mc::scheme_bit(s);

    std::vector<ResultRow> rows;
    const mc::RngSpec spec{sweep.seed, mc::RngSpec{}.chunk_size};

    for (double v : sweep.grid) {
        const SystemParams p = apply_sweep_value(base, sweep.param, v);

        // One shared campaign per grid point: every scheme sees the same draws.
        mc::OutageCounters counters{};
        if (sweep.method_mc)
            counters = mc::run_campaign(p, sweep.trials, spec, schemes_mask, workers);

        for (mc::Scheme s : sweep.schemes) {
            for (int user : sweep.users) {
                if (sweep.method_analytic && s != mc::Scheme::OMA) {
                    ResultRow row;
                    row.sweep_param = sweep.param;
                    row.value = v;
                    row.scheme = s;
                    row.user = user;
                    row.method = Method::CLOSED_FORM;
                    row.seed = 0;
                    row.trials = 0;
                    row.j = sweep.j;
                    try {
                        if (s == mc::Scheme::FPA)
                            row.outage = user == 1 ? analytic::fpa_outage_user1(p)
                                                   : analytic::fpa_outage_user2(p);
                        else if (s == mc::Scheme::FPA_ISIC)
                            row.outage = user == 1 ? analytic::fpa_outage_user1_isic(p)
                                                   : analytic::fpa_outage_user2(p);
                        else
                            row.outage = user == 1 ? analytic::dpa_outage_user1(p, sweep.j)
                                                   : analytic::dpa_outage_user2(p);
                    } catch (const unsupported_error& e) {
                        row.outage = kNaN;
                        row.error = "unsupported";
                        if (log)
                            *log << "notice: " << scheme_name(s) << " user " << user
                                 << " analytic row at " << sweep.param << " = " << v
                                 << " skipped: " << e.what() << "\n";
                    }
                    rows.push_back(std::move(row));
                }
                if (sweep.method_mc) {
                    const OutageEstimate est =
                        mc::to_estimate(count_for(counters, s, user), sweep.trials);
                    ResultRow row;
                    row.sweep_param = sweep.param;
                    row.value = v;
                    row.scheme = s;
                    row.user = user;
                    row.method = Method::MONTE_CARLO;
                    row.outage = est.value;
                    row.std_err = est.std_err;
                    row.trials = sweep.trials;
                    row.seed = sweep.seed;
                    row.j = sweep.j;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

} // namespace noma
