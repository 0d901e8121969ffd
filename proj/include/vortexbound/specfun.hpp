#pragma once

#include <complex>

// Special-function kernel: Kummer M and its first-parameter derivative,
// Laguerre polynomials, lower incomplete gamma, arg Gamma(1+i lambda), and
// the modified Bessel function K of imaginary order.

namespace vortexbound::specfun {

// Truncation control for power series.
struct SeriesPolicy {
    double rel_tol = 1e-15;
    int max_terms = 5000;

    void validate() const;  // rel_tol in (0, 1e-6], max_terms >= 200
};

// Control for the semi-infinite integral representation of K. Integration is
// truncated at the smaller of t_max and the point where exp(-x (cosh t - 1))
// falls below abs_tol.
struct QuadraturePolicy {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    double t_max = 22.0;

    void validate() const;
    // Smallest argument x for which t_max still reaches the abs_tol cutoff.
    double min_argument() const;
};

// Rising factorial a(a+1)...(a+m-1).
double pochhammer(double a, unsigned m);

// Kummer's function M(a, b; x) for x >= 0 by direct summation.
double chf_m(double a, double b, double x, const SeriesPolicy& policy = {});

// Generalized Laguerre polynomial L_n^(beta)(x), three-term recurrence in n.
double laguerre(unsigned n, double beta, double x);

// Lower incomplete gamma (beta, x)! = int_0^x t^beta e^-t dt.
double lower_inc_gamma_fact(double beta, double x);

// dM/da (a, beta+1; x) at a = -n.
double chf_m_da(unsigned n, double beta, double x, const SeriesPolicy& policy = {});

std::complex<double> log_gamma(std::complex<double> z);  // Re z > 0

// arg Gamma(1 + i lambda) on the branch continuous from 0 at lambda = 0.
double arg_gamma_phase(double lambda);

// K_{i lambda}(x) and its x-derivative, x > 0.
double bessel_k_imag(double lambda, double x, const QuadraturePolicy& policy = {});
double bessel_k_imag_dx(double lambda, double x, const QuadraturePolicy& policy = {});

// Real-order K_nu(x) from the same quadrature (cosh(nu t) weight).
double bessel_k_real(double nu, double x, const QuadraturePolicy& policy = {});
double bessel_k_real_dx(double nu, double x, const QuadraturePolicy& policy = {});

// Logarithmic-derivative data at the transition point x = lambda:
// k1 = -(ln K_{i lambda})'(lambda), k2 = -(ln K_{i lambda})''(lambda) = -k1/lambda + k1^2.
struct TransitionValues {
    double k1 = 0.0;
    double k2 = 0.0;
};

TransitionValues k_transition(double lambda, const QuadraturePolicy& policy = {});

// 6^{1/3} Gamma(2/3) / Gamma(1/3) ~ 0.918
double transition_beta();

// beta lambda^{-1/3} (1 + 1/(4 lambda))
double k_transition_asymptotic(double lambda);

struct AsymptoticPair {
    double k = 0.0;
    double k_prime = 0.0;
};

// Stationary-phase values of K_{i lambda}(lambda) and K'_{i lambda}(lambda), lambda >= 1.
AsymptoticPair bessel_k_asymptotic_pair(double lambda);

// Leading small-x form of K_{i lambda}(x).
double bessel_k_imag_small_arg(double lambda, double x);

}  // namespace vortexbound::specfun
