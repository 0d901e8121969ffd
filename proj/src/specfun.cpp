#include "vortexbound/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "vortexbound/errors.hpp"
#include "vortexbound/model.hpp"

namespace vortexbound::specfun {

using constants::pi;

void SeriesPolicy::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-6)) {
        throw ValidationError("series rel_tol must lie in (0, 1e-6]");
    }
    if (max_terms < 200) throw ValidationError("series max_terms must be at least 200");
}

void QuadraturePolicy::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(t_max > 1.0)) {
        throw ValidationError("quadrature tolerances and t_max must be positive");
    }
}

double QuadraturePolicy::min_argument() const {
    return -std::log(abs_tol) / (std::cosh(t_max) - 1.0);
}

double pochhammer(double a, unsigned m) {
    double p = 1.0;
    for (unsigned k = 0; k < m; ++k) p *= a + k;
    return p;
}

double chf_m(double a, double b, double x, const SeriesPolicy& policy) {
    policy.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x)) {
        throw ValidationError("chf_m: non-finite argument");
    }
    if (b <= 0.0 && b == std::floor(b)) {
        throw ValidationError("chf_m: b must not be a non-positive integer");
    }
    if (x < 0.0) throw ValidationError("chf_m: x must be non-negative");

    long double term = 1.0L;
    long double sum = 1.0L;
    int quiet = 0;
    for (int m = 0; m < policy.max_terms; ++m) {
        term *= (static_cast<long double>(a) + m) * x /
                ((static_cast<long double>(b) + m) * (m + 1));
        sum += term;
        if (term == 0.0L) return static_cast<double>(sum);
        // Terms only shrink for good once m exceeds x; before that a small term
        // (a close to a non-positive integer) can be followed by growth.
        if (std::fabs(term) < policy.rel_tol * std::fabs(sum) && m + 1 > x) {
            if (++quiet >= 3) return static_cast<double>(sum);
        } else {
            quiet = 0;
        }
    }
    throw AccuracyError("chf_m: series did not converge within max_terms",
                        static_cast<double>(std::fabs(term / sum)));
}

double laguerre(unsigned n, double beta, double x) {
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + beta - x;
    for (unsigned k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + beta - x) * cur - (k + beta) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double lower_inc_gamma_fact(double beta, double x) {
    if (!(beta >= 0.0) || !(x >= 0.0) || !std::isfinite(beta) || !std::isfinite(x)) {
        throw ValidationError("lower_inc_gamma_fact: beta and x must be finite and >= 0");
    }
    if (x == 0.0) return 0.0;
    const bool integer = beta == std::floor(beta) && beta <= 100.0;
    // The finite sum cancels badly once x is small compared with beta + 1.
    if (integer && x >= beta + 1.0) {
        const auto ell = static_cast<unsigned>(beta);
        double term = 1.0;
        double partial = 1.0;
        for (unsigned k = 1; k <= ell; ++k) {
            term *= x / k;
            partial += term;
        }
        return std::tgamma(beta + 1.0) * (1.0 - std::exp(-x) * partial);
    }
    return boost::math::tgamma_lower(beta + 1.0, x);
}

namespace {

// (beta, x)! / (x^beta e^-x) = x M(1, beta+2; x) / (beta+1), finite at x = 0.
double scaled_inc_gamma(double beta, double x, const SeriesPolicy& policy) {
    return x * chf_m(1.0, beta + 2.0, x, policy) / (beta + 1.0);
}

double chf_m_da0(double beta, double x, const SeriesPolicy& policy) {
    long double term = x;  // m = 0 term before the 1/(m+1) factor
    long double sum = term;
    int quiet = 0;
    for (int m = 1; m < policy.max_terms; ++m) {
        term *= static_cast<long double>(x) / (beta + 1.0L + m);
        const long double contrib = term / (m + 1);
        sum += contrib;
        if (contrib == 0.0L) break;
        if (std::fabs(contrib) < policy.rel_tol * std::fabs(sum) && m + 1 > x) {
            if (++quiet >= 3) return static_cast<double>(sum / (beta + 1.0L));
        } else {
            quiet = 0;
        }
    }
    if (sum == 0.0L) return 0.0;
    throw AccuracyError("chf_m_da: n = 0 series did not converge", 0.0);
}

// M(-k, beta+1; x) through the Laguerre reduction.
double chf_polynomial(unsigned k, double beta, double x) {
    return std::tgamma(k + 1.0) / pochhammer(beta + 1.0, k) * laguerre(k, beta, x);
}

}  // namespace

double chf_m_da(unsigned n, double beta, double x, const SeriesPolicy& policy) {
    policy.validate();
    if (!(beta >= 0.0) || !(x >= 0.0)) {
        throw ValidationError("chf_m_da: beta and x must be non-negative");
    }
    const double d0 = chf_m_da0(beta, x, policy);
    if (n == 0) return d0;

    const double d1 =
        (-x / (beta + 1.0) + scaled_inc_gamma(beta, x, policy) + (1.0 + beta - x) * d0) /
        (beta + 1.0);
    if (n == 1) return d1;

    double prev = d0;
    double cur = d1;
    for (unsigned k = 2; k <= n; ++k) {
        const double rhs = chf_polynomial(k, beta, x) - 2.0 * chf_polynomial(k - 1, beta, x) +
                           chf_polynomial(k - 2, beta, x);
        const double next =
            (rhs + (2.0 * k + beta - x - 1.0) * cur - (k - 1.0) * prev) / (beta + k);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw ValidationError("log_gamma: requires Re z > 0");
    // Shift to |z| >= 15, where the Stirling series below is at double precision.
    std::complex<double> shift = 0.0;
    while (std::abs(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static constexpr double bernoulli[] = {1.0 / 6.0,     -1.0 / 30.0,   1.0 / 42.0,
                                           -1.0 / 30.0,   5.0 / 66.0,    -691.0 / 2730.0,
                                           7.0 / 6.0,     -3617.0 / 510.0};
    const std::complex<double> z2 = z * z;
    std::complex<double> zpow = z;
    std::complex<double> series = 0.0;
    for (int k = 1; k <= 8; ++k) {
        series += bernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0) * zpow);
        zpow *= z2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
}

double arg_gamma_phase(double lambda) {
    if (!std::isfinite(lambda)) throw ValidationError("arg_gamma_phase: non-finite lambda");
    if (lambda == 0.0) return 0.0;
    return log_gamma({1.0, lambda}).imag();
}

namespace {

enum class Weight { Cos, Cosh };

// e^x times int_0^inf exp(-x cosh t) [cosh t]^p w(order t) dt, with w = cos or cosh.
double k_integral(Weight weight, double order, double x, bool derivative,
                  const QuadraturePolicy& policy) {
    policy.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("Bessel K: x must be positive");
    if (!std::isfinite(order)) throw ValidationError("Bessel K: non-finite order");
    order = std::fabs(order);

    const double log_tol = -std::log(policy.abs_tol);
    // Solve x (cosh t - 1) = log_tol + growth(t) by fixed-point iteration;
    // growth covers the cosh(t) factor and a cosh(order t) weight.
    double t_cut = std::acosh(1.0 + log_tol / x);
    for (int it = 0; it < 4; ++it) {
        double growth = derivative ? t_cut : 0.0;
        if (weight == Weight::Cosh) growth += order * t_cut;
        t_cut = std::acosh(1.0 + (log_tol + growth) / x);
    }
    if (t_cut > policy.t_max) {
        double tail = x * (std::cosh(policy.t_max) - 1.0);
        throw AccuracyError("Bessel K: argument below the quadrature cutoff range",
                            std::exp(-tail));
    }

    // Break at the cosine zeros so each panel holds at most one half-oscillation,
    // and keep panels no longer than one unit of t.
    std::vector<double> breaks{0.0};
    const double period = (weight == Weight::Cos && order > 0.0) ? pi / order : 0.0;
    double next_zero = period > 0.0 ? 0.5 * period : t_cut;
    while (breaks.back() < t_cut) {
        const double step_end = std::min(breaks.back() + 1.0, t_cut);
        if (next_zero < step_end && next_zero > breaks.back()) {
            breaks.push_back(next_zero);
            next_zero += period;
        } else {
            breaks.push_back(step_end);
        }
    }

    auto integrand = [&](double t) {
        const double ch = std::cosh(t);
        double v = std::exp(-x * (ch - 1.0));
        if (derivative) v *= ch;
        v *= weight == Weight::Cos ? std::cos(order * t) : std::cosh(order * t);
        return v;
    };

    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    double total_err = 0.0;
    double total_l1 = 0.0;
    // Panels are refined only when the single Kronrod estimate misses both the
    // relative target and a share of the absolute one; otherwise negligible tail
    // panels recurse to full depth chasing a relative error of ~1e-16 values.
    const double abs_share = 0.1 * policy.abs_tol / static_cast<double>(breaks.size());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double err = 0.0;
        double l1 = 0.0;
        double v = gauss_kronrod<double, 21>::integrate(integrand, breaks[i], breaks[i + 1], 0, 0.0,
                                                        &err, &l1);
        if (err > abs_share && err > 0.1 * policy.rel_tol * l1) {
            v = gauss_kronrod<double, 21>::integrate(integrand, breaks[i], breaks[i + 1], 12,
                                                     policy.rel_tol * 0.1, &err, &l1);
        }
        total += v;
        total_err += err;
        total_l1 += l1;
    }
    if (total_err > policy.abs_tol + policy.rel_tol * total_l1) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "Bessel K: quadrature tolerance not reached (estimate %.3e)",
                      total_err);
        throw AccuracyError(msg, total_err);
    }
    return total;
}

}  // namespace

double bessel_k_imag(double lambda, double x, const QuadraturePolicy& policy) {
    return std::exp(-x) * k_integral(Weight::Cos, lambda, x, false, policy);
}

double bessel_k_imag_dx(double lambda, double x, const QuadraturePolicy& policy) {
    return -std::exp(-x) * k_integral(Weight::Cos, lambda, x, true, policy);
}

double bessel_k_real(double nu, double x, const QuadraturePolicy& policy) {
    return std::exp(-x) * k_integral(Weight::Cosh, nu, x, false, policy);
}

double bessel_k_real_dx(double nu, double x, const QuadraturePolicy& policy) {
    return -std::exp(-x) * k_integral(Weight::Cosh, nu, x, true, policy);
}

TransitionValues k_transition(double lambda, const QuadraturePolicy& policy) {
    if (!(lambda > 0.0)) throw ValidationError("k_transition: lambda must be positive");
    // The common e^{-lambda} prefactor cancels in the ratio.
    const double k = k_integral(Weight::Cos, lambda, lambda, false, policy);
    const double kp = -k_integral(Weight::Cos, lambda, lambda, true, policy);
    TransitionValues out;
    out.k1 = -kp / k;
    out.k2 = -out.k1 / lambda + out.k1 * out.k1;
    return out;
}

double transition_beta() {
    return std::cbrt(6.0) * std::tgamma(2.0 / 3.0) / std::tgamma(1.0 / 3.0);
}

double k_transition_asymptotic(double lambda) {
    if (!(lambda > 0.0)) throw ValidationError("k_transition_asymptotic: lambda must be positive");
    return transition_beta() / std::cbrt(lambda) * (1.0 + 0.25 / lambda);
}

AsymptoticPair bessel_k_asymptotic_pair(double lambda) {
    if (!(lambda >= 1.0)) throw ValidationError("bessel_k_asymptotic_pair: lambda must be >= 1");
    const double pref = std::exp(-0.5 * pi * lambda) / (2.0 * std::sqrt(3.0));
    AsymptoticPair out;
    out.k = pref * std::cbrt(6.0) * std::tgamma(1.0 / 3.0) / std::cbrt(lambda);
    out.k_prime = -pref * std::cbrt(36.0) * std::tgamma(2.0 / 3.0) / std::cbrt(lambda * lambda) *
                  (1.0 + 0.25 / lambda);
    return out;
}

double bessel_k_imag_small_arg(double lambda, double x) {
    if (!(lambda > 0.0) || !(x > 0.0)) {
        throw ValidationError("bessel_k_imag_small_arg: lambda and x must be positive");
    }
    return -std::sqrt(pi / (lambda * std::sinh(pi * lambda))) *
           std::sin(lambda * std::log(0.5 * x) - arg_gamma_phase(lambda));
}

}  // namespace vortexbound::specfun
