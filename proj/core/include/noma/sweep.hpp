#pragma once

// Parameter sweeps: the bridge from a validated config to the flat list of
// result rows the CSV/SVG emitters consume.

#include "noma/mc.hpp"
#include "noma/model.hpp"
#include "noma/outage_estimate.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace noma {

// Parameters a sweep may vary. dB-valued ones are converted per grid point.
bool is_sweepable_param(const std::string& name);

struct SweepSpec {
    std::string param;           // one of the sweepable names
    std::vector<double> grid;    // resolved grid values, in sweep order
    bool log_axis = false;       // grid came from a log range (plot hint)
    std::vector<mc::Scheme> schemes;
    std::vector<int> users;      // subset of {1, 2}
    bool method_analytic = true;
    bool method_mc = true;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int j = 30;                  // Chebyshev order for DPA user 1
};

struct ResultRow {
    std::string sweep_param;
    double value = 0.0;
    mc::Scheme scheme = mc::Scheme::FPA;
    int user = 1;
    Method method = Method::CLOSED_FORM;
    double outage = 0.0;     // NaN on error rows
    double std_err = 0.0;    // 0 for analytic rows (CSV field left empty)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int j = 0;
    std::string error;       // nonempty marks an error row (outage empty in CSV)
};

std::string scheme_name(mc::Scheme s);
std::string method_name(Method m);

// Applies one grid value to a copy of the base parameters.
SystemParams apply_sweep_value(const SystemParams& base, const std::string& param, double value);

// Produces one row per grid value x scheme x user x requested method, in
// that order, with two carve-outs: OMA has no analytic route (those
// combinations are skipped), and DPA analytic with m != 1 yields error rows.
// `log`, when given, receives one progress/notice line per anomaly.
std::vector<ResultRow> run_sweep(const SystemParams& base, const SweepSpec& sweep,
                                 unsigned workers = 0, std::ostream* log = nullptr);

} // namespace noma
