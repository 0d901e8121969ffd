#include "vortexbound/vortex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/numeric/odeint.hpp>
#include <lapacke.h>

#include "vortexbound/errors.hpp"

namespace vortexbound {

struct RadialProfile::Interp {
    boost::math::interpolators::pchip<std::vector<double>> spline;
};

double variational_phi(double alpha, double r) {
    const double r_alpha = std::sqrt(2.0) / alpha;
    if (r <= r_alpha) return 0.5 * alpha * r;
    return std::sqrt(1.0 - 1.0 / (alpha * alpha * r * r));
}

double variational_dphi(double alpha, double r) {
    const double r_alpha = std::sqrt(2.0) / alpha;
    if (r <= r_alpha) return 0.5 * alpha;
    const double ar2 = alpha * alpha * r * r;
    return 1.0 / (ar2 * r * std::sqrt(1.0 - 1.0 / ar2));
}

double vortex_tail(double r) {
    const double u = 1.0 / (r * r);
    return 1.0 - 0.5 * u - 1.125 * u * u;
}

double vortex_ode_residual(double phi, double dphi, double d2phi, double r, int charge) {
    const double n2 = static_cast<double>(charge) * charge;
    return d2phi + dphi / r - n2 * phi / (r * r) + (1.0 - phi * phi) * phi;
}

RadialProfile RadialProfile::variational(double alpha, double r_table, int n_table) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ValidationError("variational profile: alpha must be positive");
    }
    if (!(r_table > 0.0) || n_table < 2) throw ValidationError("variational profile: bad table");
    RadialProfile out;
    out.kind_ = ProfileKind::Variational;
    out.alpha_ = alpha;
    out.slope0_ = 0.5 * alpha;
    out.r_.resize(n_table + 1);
    out.phi_.resize(n_table + 1);
    for (int i = 0; i <= n_table; ++i) {
        out.r_[i] = r_table * i / n_table;
        out.phi_[i] = variational_phi(alpha, out.r_[i]);
    }
    return out;
}

double RadialProfile::operator()(double r) const {
    if (!(r >= 0.0)) throw ValidationError("profile evaluated at negative or NaN radius");
    if (kind_ == ProfileKind::Variational) return variational_phi(alpha_, r);
    if (r >= r_.back()) return vortex_tail(r);
    return interp_->spline(r);
}

double RadialProfile::derivative(double r) const {
    if (!(r >= 0.0)) throw ValidationError("profile evaluated at negative or NaN radius");
    if (kind_ == ProfileKind::Variational) return variational_dphi(alpha_, r);
    if (r >= r_.back()) return 1.0 / (r * r * r) + 4.5 / std::pow(r, 5);
    return interp_->spline.prime(r);
}

namespace {

using State = std::array<double, 2>;

enum class ShotOutcome { Overshoot, Collapse, Survived };

struct Shot {
    ShotOutcome outcome;
    double r_end;
};

constexpr double kShootStart = 1e-4;
constexpr double kShootEnd = 40.0;

State series_start(double s) {
    const double r = kShootStart;
    return {s * r - s * r * r * r / 8.0, s - 3.0 * s * r * r / 8.0};
}

void vortex_rhs(const State& y, State& dy, double r) {
    dy[0] = y[1];
    dy[1] = -y[1] / r + y[0] / (r * r) - (1.0 - y[0] * y[0]) * y[0];
}

template <class Observer>
Shot shoot(double s, Observer&& observe) {
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(series_start(s), kShootStart, 1e-4);
    while (stepper.current_time() < kShootEnd) {
        stepper.do_step(vortex_rhs);
        const State& y = stepper.current_state();
        const double r = stepper.current_time();
        observe(stepper);
        if (y[0] > 1.0) return {ShotOutcome::Overshoot, r};
        if (y[1] < 0.0) return {ShotOutcome::Collapse, r};
    }
    return {ShotOutcome::Survived, kShootEnd};
}

}  // namespace

RadialProfile solve_vortex_ode(double r_max, int grid_n) {
    if (!(r_max >= 20.0) || !std::isfinite(r_max)) {
        throw ValidationError("solve_vortex_ode: r_max must be >= 20");
    }
    if (grid_n < 2000) throw ValidationError("solve_vortex_ode: grid_n must be >= 2000");

    // Bisect the initial slope between collapse (too small) and overshoot.
    double lo = 0.3;
    double hi = 0.9;
    auto ignore = [](const auto&) {};
    for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Shot shot = shoot(mid, ignore);
        if (shot.outcome == ShotOutcome::Overshoot) {
            hi = mid;
        } else if (shot.outcome == ShotOutcome::Collapse) {
            lo = mid;
        } else {
            lo = hi = mid;
        }
    }
    const double slope = 0.5 * (lo + hi);

    const double h = r_max / grid_n;
    std::vector<double> r(grid_n + 1);
    std::vector<double> phi(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i) r[i] = h * i;

    // Initial guess: the shot trajectory up to r_match, the tail beyond, with a
    // linear blend over two healing lengths.
    const double r_match = 10.0;
    const double blend = 2.0;
    for (int i = 0; i <= grid_n; ++i) phi[i] = vortex_tail(std::max(r[i], 1.0));
    {
        int next = 1;
        shoot(lo, [&](auto& stepper) {
            while (next <= grid_n && r[next] <= stepper.current_time() && r[next] <= r_match) {
                if (r[next] < kShootStart) {
                    phi[next] = slope * r[next];
                } else {
                    State y;
                    stepper.calc_state(r[next], y);
                    const double w = std::clamp((r_match - r[next]) / blend, 0.0, 1.0);
                    phi[next] = w * y[0] + (1.0 - w) * vortex_tail(r[next]);
                }
                ++next;
            }
        });
    }
    phi[0] = 0.0;
    phi[grid_n] = vortex_tail(r_max);

    // Newton relaxation of the second-order discretization.
    const int n = grid_n - 1;
    std::vector<double> res(n), dl(n - 1), d(n), du(n - 1);
    auto residual = [&]() {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const int i = k + 1;
            res[k] = vortex_ode_residual(phi[i], (phi[i + 1] - phi[i - 1]) / (2.0 * h),
                                         (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h), r[i]);
            worst = std::max(worst, std::fabs(res[k]));
        }
        return worst;
    };
    double worst = residual();
    for (int it = 0; it < 50 && worst > 1e-13; ++it) {
        for (int k = 0; k < n; ++k) {
            const int i = k + 1;
            d[k] = -2.0 / (h * h) - 1.0 / (r[i] * r[i]) + 1.0 - 3.0 * phi[i] * phi[i];
            if (k > 0) dl[k - 1] = 1.0 / (h * h) - 1.0 / (2.0 * h * r[i]);
            if (k < n - 1) du[k] = 1.0 / (h * h) + 1.0 / (2.0 * h * r[i]);
            res[k] = -res[k];
        }
        const lapack_int info =
            LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(), res.data(), n);
        if (info != 0) throw SolverError("vortex relaxation: singular Jacobian", worst);
        for (int k = 0; k < n; ++k) phi[k + 1] += res[k];
        const double previous = worst;
        worst = residual();
        if (it > 10 && worst > 0.5 * previous) break;
    }
    if (!(worst < 1e-8)) {
        char msg[80];
        std::snprintf(msg, sizeof msg, "vortex relaxation did not converge (residual %.3e)", worst);
        throw SolverError(msg, worst);
    }

    RadialProfile out;
    out.kind_ = ProfileKind::NumericOde;
    out.slope0_ = slope;
    out.residual_ = worst;
    out.r_ = r;
    out.phi_ = phi;
    out.interp_ = std::make_shared<const RadialProfile::Interp>(
        RadialProfile::Interp{boost::math::interpolators::pchip<std::vector<double>>(std::move(r), std::move(phi),
                                                                      slope)});
    return out;
}

const RadialProfile& default_ode_profile() {
    static const RadialProfile profile = solve_vortex_ode();
    return profile;
}

double effective_potential(const RadialProfile& profile, double gamma2, int ell, double r) {
    if (!(r > 0.0)) throw ValidationError("effective_potential: r must be positive");
    const double phi = profile(r);
    return gamma2 * phi * phi + static_cast<double>(ell) * ell / (r * r);
}

ProfileDiscrepancy profile_compare(const RadialProfile& a, const RadialProfile& b, double r_max,
                                   int samples) {
    if (!(r_max > 0.0) || samples < 2) throw ValidationError("profile_compare: bad sampling");
    ProfileDiscrepancy out;
    for (int i = 0; i <= samples; ++i) {
        const double r = r_max * i / samples;
        const double diff = std::fabs(a(r) - b(r));
        if (diff > out.max_abs) {
            out.max_abs = diff;
            out.r_at_max = r;
        }
    }
    return out;
}

ProfileDiscrepancy profile_compare(double alpha) {
    return profile_compare(RadialProfile::variational(alpha), default_ode_profile());
}

}  // namespace vortexbound
