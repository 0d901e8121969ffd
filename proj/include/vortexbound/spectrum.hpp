#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vortexbound/model.hpp"
#include "vortexbound/specfun.hpp"

namespace vortexbound {

// Fixed angular-momentum channel; exists only when gamma_alpha > ell.
struct Channel {
    int ell = 0;
    double lambda = 0.0;  // sqrt(gamma_alpha^2 - ell^2)
    double delta = 0.0;   // gamma_alpha - ell
    int n_deep = 0;       // deep-state count, -1 < delta - 2 n_deep < 1
};

std::optional<Channel> make_channel(int ell, const ModelParams& params);

enum class StateClass { Deep, Shallow, ExactMatch, Numeric };
std::string_view to_string(StateClass cls);

struct BoundState {
    int ell = 0;
    int p = 0;
    double eps = 0.0;
    double q = 0.0;
    StateClass cls = StateClass::ExactMatch;
    double e_over_n0g12 = 0.0;
    double e_over_hbar_omega = 0.0;
    bool physical = true;
    int degeneracy = 1;  // 2 for ell >= 1 (the +ell and -ell states)
};

// Fills q, both energy views, physicality and degeneracy from eps.
BoundState make_state(int ell, int p, double eps, StateClass cls, const ModelParams& params);

// Log-derivative of the core solution at r_alpha for energy eps. Valid for any ell.
double region1_log_deriv(double eps, int ell, const ModelParams& params);
inline double region1_log_deriv(double eps, const Channel& ch, const ModelParams& params) {
    return region1_log_deriv(eps, ch.ell, params);
}

// q K'(q r_alpha)/K(q r_alpha); imaginary order i*lambda when gamma_alpha > ell,
// real order sqrt(ell^2 - gamma_alpha^2) otherwise. Returns NaN at a zero of K.
double region2_log_deriv(double q, int ell, const ModelParams& params,
                         const specfun::QuadraturePolicy& policy = {});
inline double region2_log_deriv(double q, const Channel& ch, const ModelParams& params,
                                const specfun::QuadraturePolicy& policy = {}) {
    return region2_log_deriv(q, ch.ell, params, policy);
}

// Pole-free matching function r_alpha M K (region1 - region2); its zeros in q are
// the bound states.
double matching_function(double q, int ell, const ModelParams& params,
                         const specfun::QuadraturePolicy& policy = {});

struct ExactSearchReport {
    int scan_points = 0;
    int refinements = 0;  // scan doublings needed before the root count settled
};

// All roots of the matching condition with q in (q_min, gamma), labelled p = 0,1,...
// in order of decreasing q.
std::vector<BoundState> find_states_exact(const Channel& ch, const ModelParams& params,
                                          double q_min, ExactSearchReport* report = nullptr,
                                          const specfun::QuadraturePolicy& policy = {});

// theta of the shallow-state phase on the branch continuous in lambda, with the
// constant offset that makes theta_0 -> pi/2 and theta_ell -> 0 (ell >= 1) at onset.
double theta_ell(int ell, double lambda);
double theta_ell(const Channel& ch);
// Same branch without the offset: atan2(lambda, D) continued through the zeros of M.
double theta_continuous(int ell, double lambda);

// ln Lambda_ell at gamma_alpha = sqrt(ell^2 + lambda^2).
double log_shallow_amplitude(int ell, double lambda);

std::vector<BoundState> shallow_spectrum(const Channel& ch, const ModelParams& params, int p_max);

// Omega_ell of the deep closed form. With exact_k the transition derivative comes
// from quadrature and Omega from its unexpanded form.
double deep_omega(const Channel& ch, bool exact_k = false);
// Ell = 0 specialization, gamma_alpha > 1.
double deep_omega0(double gamma_alpha);
// p = 0 deep state; nullopt when the channel has no deep state.
std::optional<BoundState> deep_spectrum(const Channel& ch, const ModelParams& params,
                                        bool exact_k = false);

enum class SpectrumMethod { ExactMatch, ClosedForm, Auto };
SpectrumMethod parse_method(std::string_view name);

// Deep closed form is trusted only when delta - 2p exceeds this.
inline constexpr double kDeepMargin = 1.1;
// Shallow closed form is trusted only when q r_alpha is below this.
inline constexpr double kShallowLimit = 0.5;

std::vector<BoundState> assemble_spectrum(const ModelParams& params, int ell_max, int p_max,
                                          SpectrumMethod method,
                                          const specfun::QuadraturePolicy& policy = {});

}  // namespace vortexbound
