#pragma once

// Small statistics toolkit for the acceptance suite: regularized incomplete
// gamma (series + continued fraction), Gamma CDF/quantile, chi-square
// p-values, and the two-sided Kolmogorov-Smirnov statistic. Header-only and
// independent of the library under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace teststats {

// Regularized lower incomplete gamma P(a, x). Series expansion for
// x < a + 1, continued fraction for the upper tail otherwise.
inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 1000; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(log_prefactor);
    }
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(log_prefactor) * h;
}

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
// directly in the tail so small p-values keep relative precision.
inline double gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p(a, x);
    const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(log_prefactor) * h;
}

// CDF of Gamma(shape k, scale theta) at x.
inline double gamma_cdf(double shape, double scale, double x) {
    if (x <= 0.0) return 0.0;
    return gamma_p(shape, x / scale);
}

// Quantile of Gamma(shape k, scale theta) by bracketing + bisection.
inline double gamma_quantile(double shape, double scale, double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("gamma_quantile: p outside (0,1)");
    double hi = shape * scale;
    while (gamma_cdf(shape, scale, hi) < p) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_cdf(shape, scale, mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

// Survival function of the chi-square distribution with dof degrees of
// freedom: the p-value of an observed statistic.
inline double chi2_pvalue(double dof, double statistic) {
    if (statistic <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * statistic);
}

// Pearson chi-square statistic for observed counts against equal expected
// counts (total / bins per bin).
inline double chi2_equiprobable(const std::vector<std::uint64_t>& observed) {
    std::uint64_t total = 0;
    for (std::uint64_t c : observed) total += c;
    const double expected = static_cast<double>(total) / static_cast<double>(observed.size());
    double stat = 0.0;
    for (std::uint64_t c : observed) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

// Two-sided Kolmogorov-Smirnov statistic sup |F_n - F|. Sorts in place.
inline double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

} // namespace teststats
