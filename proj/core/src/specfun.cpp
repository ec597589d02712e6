#include "noma/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <string>

namespace noma::specfun {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;
constexpr double kPi = 3.14159265358979323846264338327950;

// Ascending series for K0 and K1, accurate for z <= 2 (terms fall like
// (z^2/4)^k / (k!)^2, so ~18 terms reach double precision at z = 2).
// K0(z) = -(ln(z/2)+gamma) I0(z) + sum_{k>=1} q^k/(k!)^2 H_k
// K1(z) = 1/z + ln(z/2) I1(z) - (z/4) sum_{k>=0} (H_k + H_{k+1} - 2 gamma) q^k/(k!(k+1)!)
// with q = z^2/4 and H_k the k-th harmonic number.
void k0_k1_series(double z, double& k0, double& k1) {
    const double q = 0.25 * z * z;
    const double lg = std::log(0.5 * z);

    double i0 = 1.0, i1 = 0.5 * z;        // I0, I1 partial sums
    double s0 = 0.0;                      // sum for K0
    double s1 = (0.0 + 1.0 - 2.0 * kEulerGamma); // k = 0 term factor of K1 sum
    double t0 = 1.0;                      // q^k/(k!)^2
    double t1 = 1.0;                      // q^k/(k!(k+1)!)
    double hk = 0.0;
    for (int k = 1; k < 60; ++k) {
        t0 *= q / (static_cast<double>(k) * k);
        t1 *= q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        const double hk1 = hk + 1.0 / (k + 1);
        i0 += t0;
        i1 += 0.5 * z * t1;
        s0 += t0 * hk;
        s1 += t1 * (hk + hk1 - 2.0 * kEulerGamma);
        if (t0 < 1e-19 * i0 && k > 3) break;
    }
    k0 = -(lg + kEulerGamma) * i0 + s0;
    k1 = 1.0 / z + lg * i1 - 0.25 * z * s1;
}

// Steed/Thompson-Barnett continued fraction (CF2) for order 0 at z > 2,
// returning exp(z) K0(z) and exp(z) K1(z). Near machine accuracy for z >= 2.
void k0_k1_cf2_scaled(double z, double& k0s, double& k1s) {
    constexpr double eps = DBL_EPSILON;
    const double a1 = 0.25; // 1/4 - mu^2 at mu = 0
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 20000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (a * d + b);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < eps) break;
    }
    h = a1 * h;
    k0s = std::sqrt(kPi / (2.0 * z)) / s;
    k1s = k0s * (z + 0.5 - h) / z;
}

} // namespace

double bessel_k(int v, double z) {
    if (v < 0) throw std::domain_error("bessel_k: order must be >= 0, got " + std::to_string(v));
    if (!(z > 0.0)) throw std::domain_error("bessel_k: argument must be > 0");

    double k0, k1;
    double log_scale = 0.0; // result = value * exp(-log_scale)
    if (z <= 2.0) {
        k0_k1_series(z, k0, k1);
    } else {
        k0_k1_cf2_scaled(z, k0, k1);
        log_scale = z;
    }

    double kv = (v == 0) ? k0 : k1;
    double kvm = k0;
    for (int n = 1; n < v; ++n) { // K_{n+1} = K_{n-1} + (2n/z) K_n
        const double next = kvm + (2.0 * n / z) * kv;
        kvm = kv;
        kv = next;
    }

    if (log_scale == 0.0) return kv;
    // Unscale through logs so values straddling the underflow horizon are
    // either returned accurately or flushed to exactly 0 per contract.
    const double lg = std::log(kv) - log_scale;
    if (lg < std::log(DBL_MIN)) return 0.0;
    return std::exp(lg);
}

double gamma_int(int m) {
    if (m < 1) throw std::domain_error("gamma_int: argument must be >= 1, got " + std::to_string(m));
    double r = 1.0;
    for (int k = 2; k < m; ++k) r *= k;
    return r;
}

double binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    if (n > 60) throw std::domain_error("binomial: n too large for exact evaluation");
    std::uint64_t r = 1;
    const int kk = (k > n - k) ? n - k : k; // symmetry keeps intermediates small
    for (int i = 1; i <= kk; ++i) {
        r = r * static_cast<std::uint64_t>(n - kk + i) / static_cast<std::uint64_t>(i);
    }
    return static_cast<double>(r);
}

ChebyshevRule chebyshev_rule(int order) {
    if (order < 1) throw std::domain_error("chebyshev_rule: order must be >= 1, got " + std::to_string(order));
    ChebyshevRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int j = 1; j <= order; ++j) {
        const double theta = (2.0 * j - 1.0) * kPi / (2.0 * order);
        rule.nodes[j - 1] = std::cos(theta);
        rule.weights[j - 1] = (kPi / order) * std::fabs(std::sin(theta));
    }
    return rule;
}

} // namespace noma::specfun
