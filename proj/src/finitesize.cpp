#include "vortexbound/finitesize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "vortexbound/errors.hpp"
#include "vortexbound/specfun.hpp"

namespace vortexbound {

using constants::euler_gamma;
using constants::pi;

double physical_q_threshold(const ModelParams& params) {
    return params.gamma_alpha() / params.r_trap();
}

bool is_physical_q(double q, const ModelParams& params) {
    const double t = physical_q_threshold(params);
    return q * q > t * t;
}

bool is_physical(const BoundState& state, const ModelParams& params) {
    return is_physical_q(state.q, params);
}

double a_ell(int ell) {
    if (ell < 1) throw ValidationError("a_ell: ell must be >= 1");
    const double l = ell;
    return (1.0 + 1.0 / l) * specfun::chf_m(0.5, l + 1.0, l) / specfun::chf_m(1.5, l + 2.0, l);
}

namespace {

void check_radius(double r_over_xi) {
    if (!(r_over_xi > 1.0) || !std::isfinite(r_over_xi)) {
        throw ValidationError("trap radius R/xi must be finite and > 1");
    }
}

}  // namespace

double onset_lambda_analytic(int ell, double r_over_xi) {
    if (ell < 1) throw ValidationError("onset_lambda_analytic: ell must be >= 1");
    check_radius(r_over_xi);
    const double r0 = std::exp(euler_gamma - a_ell(ell)) * std::sqrt(3.0 * ell * ell / 5.0);
    return pi / std::log(r_over_xi / r0);
}

double onset_gamma2_analytic(int ell, double r_over_xi) {
    if (ell < 0) throw ValidationError("onset_gamma2_analytic: ell must be >= 0");
    check_radius(r_over_xi);
    const double alpha = default_alpha();
    double c0 = 0.0;
    double r0 = 0.0;
    if (ell == 0) {
        c0 = std::sqrt(6.0 / 5.0) / (1.5 * pi - euler_gamma);
        r0 = std::exp(euler_gamma) * std::sqrt(3.0 * euler_gamma * euler_gamma / 5.0);
    } else {
        c0 = std::sqrt(6.0 / 5.0) / pi;
        r0 = std::exp(euler_gamma - a_ell(ell)) * std::sqrt(3.0 * ell * ell / 5.0);
    }
    const double log_r = std::log(r_over_xi / r0);
    return alpha * alpha * ell * ell + 1.0 / (c0 * c0 * log_r * log_r);
}

double solve_onset(int ell, int p, double r_over_xi) {
    if (ell < 0 || p < 0) throw ValidationError("solve_onset: ell and p must be non-negative");
    check_radius(r_over_xi);
    const double log_target = std::log(default_alpha() * r_over_xi);
    // The p-th level sits at the trap edge: Lambda exp(-pi p/lambda) = xi/(alpha R).
    auto f = [&](double lambda) {
        return log_shallow_amplitude(ell, lambda) - pi * p / lambda + log_target;
    };

    constexpr double lam_min = 0.02;
    constexpr double lam_max = 12.0;
    constexpr double step = 0.01;
    double lo = lam_min;
    double f_lo = f(lo);
    double hi = std::numeric_limits<double>::quiet_NaN();
    for (double lam = lam_min + step; lam <= lam_max; lam += step) {
        const double f_cur = f(lam);
        if ((f_lo < 0.0) != (f_cur < 0.0)) {
            hi = lam;
            break;
        }
        lo = lam;
        f_lo = f_cur;
    }
    if (std::isnan(hi)) {
        throw SolverError("solve_onset: no onset bracket for ell=" + std::to_string(ell) +
                              ", p=" + std::to_string(p),
                          std::fabs(f_lo));
    }

    // Newton with a central-difference slope, kept inside the bracket.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (f_lo < 0.0)) {
            lo = x;
        } else {
            hi = x;
        }
        const double dx = 1e-6 * x;
        const double slope = (f(x + dx) - f(x - dx)) / (2.0 * dx);
        double next = x - fx / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) < 1e-12 || hi - lo < 1e-12) return next;
        x = next;
    }
    throw SolverError("solve_onset: Newton iteration did not converge", hi - lo);
}

std::vector<double> default_onset_grid() {
    std::vector<double> grid(40);
    const double a = std::log(50.0);
    const double b = std::log(3000.0);
    for (int i = 0; i < 40; ++i) grid[i] = std::exp(a + (b - a) * i / 39.0);
    return grid;
}

OnsetFit fit_onset(int ell, int p, const std::vector<double>& r_grid) {
    if (r_grid.size() < 2) throw ValidationError("fit_onset: need at least two radii");
    const std::size_t n = r_grid.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(r_grid[i]);
        ys[i] = 1.0 / solve_onset(ell, p, r_grid[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw SolverError("fit_onset: singular fit (degenerate R grid)", 0.0);
    OnsetFit fit;
    fit.ell = ell;
    fit.p = p;
    fit.c = sxy / sxx;
    const double intercept = my - fit.c * mx;
    fit.ln_inv_r = intercept / fit.c;
    for (std::size_t i = 0; i < n; ++i) {
        const double model = fit.c * (xs[i] + fit.ln_inv_r);
        fit.residual = std::max(fit.residual, std::fabs(ys[i] - model) / ys[i]);
    }
    return fit;
}

const std::vector<OnsetFit>& onset_table() {
    static const std::vector<OnsetFit> table = [] {
        std::vector<OnsetFit> out;
        const std::vector<double> grid = default_onset_grid();
        for (int ell = 0; ell <= 2; ++ell) {
            for (int p = 0; p <= 4; ++p) out.push_back(fit_onset(ell, p, grid));
        }
        return out;
    }();
    return table;
}

double fitted_onset_lambda(const OnsetFit& fit, double r_over_xi) {
    const double inv = fit.c * (std::log(r_over_xi) + fit.ln_inv_r);
    if (!(inv > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / inv;
}

double fitted_onset_gamma2(const OnsetFit& fit, double r_over_xi, double alpha) {
    const double lam = fitted_onset_lambda(fit, r_over_xi);
    return alpha * alpha * (static_cast<double>(fit.ell) * fit.ell + lam * lam);
}

int regime_count(double r_over_xi, double gamma2, double alpha) {
    if (!(r_over_xi > 0.0) || !(gamma2 > 0.0)) {
        throw ValidationError("regime_count: inputs must be positive");
    }
    int count = 0;
    for (const OnsetFit& fit : onset_table()) {
        if (gamma2 > fitted_onset_gamma2(fit, r_over_xi, alpha)) count += fit.ell == 0 ? 1 : 2;
    }
    return count;
}

std::vector<RegimeCell> regime_grid(double r_min, double r_max, double gamma2_max, int nx, int ny,
                                    int threads) {
    if (!(r_min > 0.0) || !(r_max >= r_min) || !(gamma2_max > 0.0) || nx < 1 || ny < 1) {
        throw ValidationError("regime_grid: ranges must be positive with nx, ny >= 1");
    }
    onset_table();  // build the shared fits before fanning out
    std::vector<RegimeCell> cells(static_cast<std::size_t>(nx) * ny);
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const int i = static_cast<int>(k / ny);
            const int j = static_cast<int>(k % ny);
            const double t = nx == 1 ? 0.0 : static_cast<double>(i) / (nx - 1);
            RegimeCell& cell = cells[k];
            cell.r_over_xi = std::exp(std::log(r_min) + t * (std::log(r_max) - std::log(r_min)));
            cell.gamma2 = gamma2_max * (j + 1) / ny;
            cell.n_states = regime_count(cell.r_over_xi, cell.gamma2);
        }
    };
    const std::size_t n = cells.size();
    const int workers = std::clamp(threads, 1, 64);
    if (workers == 1) {
        fill(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(n, w * chunk);
            const std::size_t end = std::min(n, begin + chunk);
            pool.emplace_back(fill, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return cells;
}

}  // namespace vortexbound
