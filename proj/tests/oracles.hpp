#pragma once

// Reference evaluations used only by the tests. Each one takes a different route
// from the library code it checks.

#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

namespace oracle {

inline double kummer(double a, double b, double x) {
    return boost::math::hypergeometric_1F1(a, b, x);
}

// Sum of |terms| of the terminating series M(-n, b; x); scale for relative errors
// of a polynomial that may pass through zero.
inline double kummer_term_scale(unsigned n, double b, double x) {
    double term = 1.0, sum = 1.0;
    for (unsigned m = 0; m < n; ++m) {
        term *= (static_cast<double>(n) - m) * x / ((b + m) * (m + 1));
        sum += std::fabs(term);
    }
    return sum;
}

// int_0^x t^beta e^-t dt from the regularized incomplete gamma.
inline double lower_gamma(double beta, double x) {
    if (x == 0.0) return 0.0;
    return boost::math::gamma_p(beta + 1.0, x) * boost::math::tgamma(beta + 1.0);
}

// Trapezoid rule on int_0^inf exp(-x cosh t) w(t) dt in long double. The
// integrand is even and analytic in t, so the rule converges geometrically.
template <class W>
long double trapezoid_k(double x, W weight, long double step = 0.004L) {
    long double sum = 0.5L * std::exp(-static_cast<long double>(x)) * weight(0.0L);
    for (long double t = step;; t += step) {
        const long double e = std::exp(-x * std::cosh(t));
        sum += e * weight(t);
        if (e * std::cosh(t) < 1e-30L && t > 1.0L) break;
    }
    return sum * step;
}

inline double bessel_k_imag(double lambda, double x) {
    return static_cast<double>(trapezoid_k(x, [&](long double t) { return std::cos(lambda * t); }));
}

inline double bessel_k_imag_dx(double lambda, double x) {
    return -static_cast<double>(
        trapezoid_k(x, [&](long double t) { return std::cosh(t) * std::cos(lambda * t); }));
}

// arg Gamma(1 + i lambda) from the Weierstrass product:
// -gamma_E lambda + sum_k (lambda/k - atan(lambda/k)), tail summed by Euler-Maclaurin.
inline double arg_gamma(double lambda) {
    const long double lam = lambda;
    long double sum = -0.57721566490153286061L * lam;
    const int n = 200000;
    for (int k = 1; k <= n; ++k) sum += lam / k - std::atan(lam / k);
    // f(k) ~ lam^3/(3k^3) - lam^5/(5k^5); integral from n+1/2 approximates the tail.
    const long double m = n + 0.5L;
    sum += lam * lam * lam / (6.0L * m * m) - lam * lam * lam * lam * lam / (20.0L * m * m * m * m);
    return static_cast<double>(sum);
}

struct ShootResult {
    double slope;
};

// Fixed-step RK4 in long double for the charge-1 vortex, bisecting the initial
// slope until the trajectory neither overshoots 1 nor turns down before r_end.
inline double vortex_slope(double r_end = 40.0, long double step = 1e-3L) {
    auto rhs = [](long double r, long double y, long double v, long double& dy, long double& dv) {
        dy = v;
        dv = -v / r + y / (r * r) - (1.0L - y * y) * y;
    };
    long double lo = 0.3L, hi = 0.9L;
    for (int it = 0; it < 70; ++it) {
        const long double s = 0.5L * (lo + hi);
        long double r = 1e-4L;
        long double y = s * r - s * r * r * r / 8.0L;
        long double v = s - 3.0L * s * r * r / 8.0L;
        int verdict = 0;
        while (r < r_end) {
            long double k1y, k1v, k2y, k2v, k3y, k3v, k4y, k4v;
            rhs(r, y, v, k1y, k1v);
            rhs(r + step / 2, y + step / 2 * k1y, v + step / 2 * k1v, k2y, k2v);
            rhs(r + step / 2, y + step / 2 * k2y, v + step / 2 * k2v, k3y, k3v);
            rhs(r + step, y + step * k3y, v + step * k3v, k4y, k4v);
            y += step / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
            v += step / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
            r += step;
            if (y > 1.0L) {
                verdict = 1;
                break;
            }
            if (v < 0.0L) {
                verdict = -1;
                break;
            }
        }
        if (verdict > 0) {
            hi = s;
        } else if (verdict < 0) {
            lo = s;
        } else {
            return static_cast<double>(s);
        }
    }
    return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace oracle
