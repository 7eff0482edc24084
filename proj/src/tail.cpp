#include "egonet/tail.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace egonet::tail {

namespace {

constexpr double kEps = 3e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 1000;

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("betacf: continued fraction failed to converge");
}

// Series for the regularized lower incomplete gamma, valid for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("gamma_p: series failed to converge");
}

// Continued fraction for the regularized upper incomplete gamma, x >= a+1.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("gamma_q: continued fraction failed to converge");
}

}  // namespace

double beta_inc(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("beta_inc: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double ln_pre = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                    b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(ln_pre) * betacf(a, b, x) / a;
    }
    return 1.0 - std::exp(ln_pre) * betacf(b, a, 1.0 - x) / b;
}

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double binom_sf(std::uint64_t k, std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binom_sf: p outside [0,1]");
    if (k == 0) return 1.0;
    if (k > n) return 0.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    // P[B >= k] = I_p(k, n-k+1)
    return beta_inc(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

std::uint64_t binom_threshold_k(std::uint64_t n, double p, double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("binom_threshold_k: t outside (0,1)");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binom_threshold_k: p outside [0,1]");
    // sf is nonincreasing in k; sf(0) = 1 > t and sf(n+1) = 0 <= t.
    std::uint64_t lo = 0, hi = n + 1;
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (binom_sf(mid, n, p) <= t) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double poisson_sf(std::uint64_t k, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("poisson_sf: negative rate");
    if (k == 0) return 1.0;
    if (lambda == 0.0) return 0.0;
    // P[X >= k] = P(k, lambda), the regularized lower incomplete gamma
    return gamma_p(static_cast<double>(k), lambda);
}

double chi2_quantile_1df(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("chi2_quantile_1df: prob outside (0,1)");
    double lo = 0.0, hi = 1.0;
    while (gamma_p(0.5, hi / 2.0) < prob) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + lo); ++i) {
        double mid = 0.5 * (lo + hi);
        if (gamma_p(0.5, mid / 2.0) < prob) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace egonet::tail
