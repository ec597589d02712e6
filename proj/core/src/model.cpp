#include "noma/model.hpp"

#include "noma/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace noma {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

} // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void validate(const SystemParams& p) {
    std::ostringstream bad;
    auto flag = [&](const char* field, const char* why) {
        if (bad.tellp() > 0) bad << "; ";
        bad << field << " (" << why << ")";
    };
    if (!finite_pos(p.ps_lin)) flag("ps_lin", "must be finite and > 0");
    if (!finite_pos(p.sigma2_lin)) flag("sigma2_lin", "must be finite and > 0");
    if (!in_unit(p.eta)) flag("eta", "must be in [0,1]");
    if (!in_unit(p.delta)) flag("delta", "must be in [0,1]");
    if (!in_unit(p.xi)) flag("xi", "must be in [0,1]");
    if (p.m < 1 || p.m > 50) flag("m", "must be an integer in [1,50]");
    if (!finite_pos(p.d)) flag("d", "must be finite and > 0");
    if (!finite_pos(p.d1)) flag("d1", "must be finite and > 0");
    if (!finite_pos(p.d2)) flag("d2", "must be finite and > 0");
    if (!finite_pos(p.alpha)) flag("alpha", "must be finite and > 0");
    if (!finite_pos(p.r1)) flag("r1", "must be finite and > 0");
    if (!finite_pos(p.r2)) flag("r2", "must be finite and > 0");
    if (!finite_nonneg(p.sigma_e2)) flag("sigma_e2", "must be finite and >= 0");
    if (!finite_nonneg(p.sigma_ic2)) flag("sigma_ic2", "must be finite and >= 0");
    if (bad.tellp() > 0) throw validation_error("invalid parameters: " + bad.str());
}

PhiMatrix make_phi(const Thresholds& t, const SystemParams& p, bool sic_aware) {
    PhiMatrix phi{};
    phi.sic_aware = sic_aware;

    const double den0 = p.delta * (t.tau2 + 1.0) - t.tau2;
    const double den1 = sic_aware ? 1.0 - p.delta * (t.tau1 * p.sigma_ic2 + 1.0)
                                  : 1.0 - p.delta;
    phi.row_valid[0] = den0 > 0.0;
    phi.row_valid[1] = den1 > 0.0;
    const double a = phi.row_valid[0] ? t.tau2 / den0 : kInf;
    const double b = phi.row_valid[1] ? t.tau1 / den1 : kInf;
    phi.v[0][0] = a * p.sigma_e2;
    phi.v[0][1] = a / p.eta;
    phi.v[1][0] = b * p.sigma_e2;
    phi.v[1][1] = b / p.eta;
    return phi;
}

DeltaBranch classify_delta(const Thresholds& t, const SystemParams& p, bool sic_aware) {
    DeltaBranch db{};
    db.lower = t.tau2 / (t.tau2 + 1.0);
    db.ceiling = sic_aware ? 1.0 / (t.tau1 * p.sigma_ic2 + 1.0) : 1.0;
    db.upper = sic_aware ? (t.tau0 - t.tau1) / (t.tau0 + t.tau1 * t.tau2 * p.sigma_ic2)
                         : (t.tau0 - t.tau1) / t.tau0;
    if (p.delta <= db.lower || (sic_aware && p.delta >= db.ceiling)) {
        db.branch = DeltaBranch::ALWAYS_OUTAGE;
    } else if (p.delta < db.upper) {
        db.branch = DeltaBranch::BRANCH_1;
    } else {
        db.branch = DeltaBranch::BRANCH_2;
    }
    return db;
}

DerivedQuantities derive(const SystemParams& p) {
    validate(p);
    DerivedQuantities q{};
    q.tau.tau1 = std::exp2(2.0 * p.r1) - 1.0;
    q.tau.tau2 = std::exp2(2.0 * p.r2) - 1.0;
    q.tau.tau0 = std::exp2(2.0 * (p.r1 + p.r2)) - 1.0;
    q.tau.P = p.ps_lin / p.sigma2_lin;

    q.omega.omega3 = std::pow(p.d1, -p.alpha) + p.sigma_e2;
    q.omega.omega1 = std::pow(p.d2, -p.alpha) + p.sigma_e2;
    q.omega.omega2 = q.omega.omega1 * q.omega.omega3 / (q.omega.omega1 + q.omega.omega3);

    q.phi = make_phi(q.tau, p, false);
    q.phi_isic = make_phi(q.tau, p, true);
    q.branch = classify_delta(q.tau, p, false);
    q.branch_isic = classify_delta(q.tau, p, true);
    return q;
}

} // namespace noma
