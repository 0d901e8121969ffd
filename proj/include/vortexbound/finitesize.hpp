#pragma once

#include <vector>

#include "vortexbound/model.hpp"
#include "vortexbound/spectrum.hpp"

namespace vortexbound {

// Smallest q whose classical turning point lies inside the trap: gamma_alpha/(R/xi).
double physical_q_threshold(const ModelParams& params);
// Strict: q^2 > gamma^2/(alpha^2 R^2).
bool is_physical_q(double q, const ModelParams& params);
bool is_physical(const BoundState& state, const ModelParams& params);

// (1 + 1/ell) M(1/2, ell+1; ell) / M(3/2, ell+2; ell), ell >= 1.
double a_ell(int ell);

// Leading-order onset depth gamma^2 of the p = 0 state.
double onset_gamma2_analytic(int ell, double r_over_xi);
// Leading-order onset lambda, pi / ln(R/(xi r0)), ell >= 1.
double onset_lambda_analytic(int ell, double r_over_xi);

// lambda at which the p-th shallow level of channel ell reaches the trap edge.
double solve_onset(int ell, int p, double r_over_xi);

struct OnsetFit {
    int ell = 0;
    int p = 0;
    double c = 0.0;         // 1/lambda = c (ln R/xi + ln_inv_r)
    double ln_inv_r = 0.0;
    double residual = 0.0;  // max relative deviation of the fit over the R grid
};

// 40 log-spaced points in [50, 3000].
std::vector<double> default_onset_grid();
OnsetFit fit_onset(int ell, int p, const std::vector<double>& r_grid);

// Fits for ell <= 2, p <= 4 on the default grid, computed once.
const std::vector<OnsetFit>& onset_table();

// Fitted onset lambda and depth for a table entry at radius R/xi; infinite when
// the fit predicts no onset.
double fitted_onset_lambda(const OnsetFit& fit, double r_over_xi);
double fitted_onset_gamma2(const OnsetFit& fit, double r_over_xi, double alpha = default_alpha());

// Physical bound states counted with the factor 2 for ell >= 1.
int regime_count(double r_over_xi, double gamma2, double alpha = default_alpha());

struct RegimeCell {
    double r_over_xi = 0.0;
    double gamma2 = 0.0;
    int n_states = 0;
};

// nx log-spaced radii in [r_min, r_max] times ny depths gamma2_max*j/ny, j = 1..ny.
std::vector<RegimeCell> regime_grid(double r_min, double r_max, double gamma2_max, int nx, int ny,
                                    int threads = 1);

}  // namespace vortexbound
