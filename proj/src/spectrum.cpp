#include "vortexbound/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "vortexbound/errors.hpp"
#include "vortexbound/finitesize.hpp"

namespace vortexbound {

using constants::pi;

std::optional<Channel> make_channel(int ell, const ModelParams& params) {
    if (ell < 0) throw ValidationError("make_channel: ell must be non-negative");
    const double ga = params.gamma_alpha();
    if (!(ga > ell)) return std::nullopt;
    Channel ch;
    ch.ell = ell;
    ch.lambda = std::sqrt((ga - ell) * (ga + ell));
    ch.delta = ga - ell;
    ch.n_deep = std::max(0, static_cast<int>(std::ceil((ch.delta - 1.0) / 2.0)));
    return ch;
}

std::string_view to_string(StateClass cls) {
    switch (cls) {
        case StateClass::Deep: return "deep";
        case StateClass::Shallow: return "shallow";
        case StateClass::ExactMatch: return "exact";
        case StateClass::Numeric: return "numeric";
    }
    return "unknown";
}

BoundState make_state(int ell, int p, double eps, StateClass cls, const ModelParams& params) {
    BoundState s;
    s.ell = ell;
    s.p = p;
    s.eps = eps;
    s.q = std::sqrt(params.gamma2() - eps);
    s.cls = cls;
    const EnergyViews views = energy_views(eps, params);
    s.e_over_n0g12 = views.e_over_n0g12;
    s.e_over_hbar_omega = views.e_over_hbar_omega;
    s.physical = is_physical_q(s.q, params);
    s.degeneracy = ell == 0 ? 1 : 2;
    return s;
}

namespace {

struct CoreValues {
    double m;        // M(a, ell+1; gamma_alpha)
    double m_prime;  // dM/dz at the same point
};

CoreValues core_values(double eps, int ell, const ModelParams& params) {
    const double a = -eps / (2.0 * params.alpha() * params.gamma()) + 0.5 * (ell + 1);
    const double b = ell + 1.0;
    const double z = params.gamma_alpha();
    return {specfun::chf_m(a, b, z), a / b * specfun::chf_m(a + 1.0, b + 1.0, z)};
}

struct OuterValues {
    double k;
    double k_prime;
};

OuterValues outer_values(double q, int ell, const ModelParams& params,
                         const specfun::QuadraturePolicy& policy) {
    const double ga = params.gamma_alpha();
    const double x = q * params.r_alpha();
    if (ga > ell) {
        const double lambda = std::sqrt((ga - ell) * (ga + ell));
        return {specfun::bessel_k_imag(lambda, x, policy),
                specfun::bessel_k_imag_dx(lambda, x, policy)};
    }
    const double nu = std::sqrt((ell - ga) * (ell + ga));
    return {specfun::bessel_k_real(nu, x, policy), specfun::bessel_k_real_dx(nu, x, policy)};
}

}  // namespace

double region1_log_deriv(double eps, int ell, const ModelParams& params) {
    if (ell < 0) throw ValidationError("region1_log_deriv: ell must be non-negative");
    const CoreValues c = core_values(eps, ell, params);
    const double ga = params.gamma_alpha();
    return (-(ga - ell) + 2.0 * ga * c.m_prime / c.m) / params.r_alpha();
}

double region2_log_deriv(double q, int ell, const ModelParams& params,
                         const specfun::QuadraturePolicy& policy) {
    if (!(q > 0.0)) throw ValidationError("region2_log_deriv: q must be positive");
    if (ell < 0) throw ValidationError("region2_log_deriv: ell must be non-negative");
    const OuterValues o = outer_values(q, ell, params, policy);
    if (o.k == 0.0) return std::nan("");
    return q * o.k_prime / o.k;
}

double matching_function(double q, int ell, const ModelParams& params,
                         const specfun::QuadraturePolicy& policy) {
    const double eps = params.gamma2() - q * q;
    const CoreValues c = core_values(eps, ell, params);
    const OuterValues o = outer_values(q, ell, params, policy);
    const double ga = params.gamma_alpha();
    return (-(ga - ell) * c.m + 2.0 * ga * c.m_prime) * o.k -
           params.r_alpha() * c.m * q * o.k_prime;
}

namespace {

std::vector<double> scan_grid(const Channel& ch, const ModelParams& params, double q_min,
                              int density) {
    const double q_top = params.gamma() * (1.0 - 1e-12);
    const double log_span = std::log(q_top / q_min);
    const int n_log = std::max(50, static_cast<int>(std::ceil(log_span / (pi / ch.lambda) * density)));
    std::vector<double> grid;
    grid.reserve(n_log + 5 * density + 2);
    for (int i = 0; i <= n_log; ++i) grid.push_back(q_min * std::exp(log_span * i / n_log));
    // Deep roots crowd the top decade, where the log grid is sparse.
    const double q_dec = std::max(q_min, 0.1 * q_top);
    const int n_top = 5 * density;
    for (int i = 1; i < n_top; ++i) grid.push_back(q_dec + (q_top - q_dec) * i / n_top);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<double> roots_on_grid(const std::vector<double>& grid, int ell,
                                  const ModelParams& params,
                                  const specfun::QuadraturePolicy& policy) {
    auto h = [&](double q) { return matching_function(q, ell, params, policy); };
    std::vector<double> roots;
    double q_prev = grid.front();
    double h_prev = h(q_prev);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double q_cur = grid[i];
        const double h_cur = h(q_cur);
        if (h_cur == 0.0) {
            roots.push_back(q_cur);
        } else if (h_prev != 0.0 && (h_prev < 0.0) != (h_cur < 0.0)) {
            double lo = q_prev;
            double hi = q_cur;
            double h_lo = h_prev;
            while (hi - lo > 1e-10 * lo) {
                const double mid = 0.5 * (lo + hi);
                const double h_mid = h(mid);
                if (h_mid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((h_mid < 0.0) == (h_lo < 0.0)) {
                    lo = mid;
                    h_lo = h_mid;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        q_prev = q_cur;
        h_prev = h_cur;
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

}  // namespace

std::vector<BoundState> find_states_exact(const Channel& ch, const ModelParams& params,
                                          double q_min, ExactSearchReport* report,
                                          const specfun::QuadraturePolicy& policy) {
    if (!(q_min > 0.0) || !(q_min < params.gamma())) {
        throw ValidationError("find_states_exact: need 0 < q_min < gamma");
    }
    int density = 40;
    std::vector<double> grid = scan_grid(ch, params, q_min, density);
    std::vector<double> roots = roots_on_grid(grid, ch.ell, params, policy);
    int refinements = 0;
    // A cell holding two roots hides both; double the density until the count settles.
    for (; refinements < 4; ++refinements) {
        density *= 2;
        std::vector<double> finer_grid = scan_grid(ch, params, q_min, density);
        std::vector<double> finer = roots_on_grid(finer_grid, ch.ell, params, policy);
        const bool settled = finer.size() == roots.size();
        grid = std::move(finer_grid);
        roots = std::move(finer);
        if (settled) break;
    }
    if (report) {
        report->scan_points = static_cast<int>(grid.size());
        report->refinements = refinements;
    }
    std::vector<BoundState> states;
    for (std::size_t p = 0; p < roots.size(); ++p) {
        const double q = roots[p];
        states.push_back(make_state(ch.ell, static_cast<int>(p), params.gamma2() - q * q,
                                    StateClass::ExactMatch, params));
    }
    return states;
}

namespace {

struct ThetaPieces {
    double m;
    double d;  // Delta - 2 gamma_alpha M'/M
};

ThetaPieces theta_pieces(int ell, double lambda) {
    const double ga = std::hypot(static_cast<double>(ell), lambda);
    const double delta = ga - ell;
    const double a = 0.5 * (1.0 - delta);
    const double b = ell + 1.0;
    const double m = specfun::chf_m(a, b, ga);
    const double mp = a / b * specfun::chf_m(a + 1.0, b + 1.0, ga);
    return {m, delta - 2.0 * ga * mp / m};
}

struct BranchJump {
    double lambda;
    double shift;
};

// Zeros of M(a(lambda), ell+1; gamma_alpha(lambda)) along lambda, where atan2 jumps.
class JumpTable {
public:
    std::vector<BranchJump> jumps(int ell, double lambda_max) {
        std::lock_guard<std::mutex> lock(mutex_);
        Entry& e = entries_[ell];
        if (e.scanned < lambda_max) extend(ell, e, std::max(lambda_max, 2.0 * e.scanned));
        std::vector<BranchJump> out;
        for (const BranchJump& j : e.jumps) {
            if (j.lambda < lambda_max) out.push_back(j);
        }
        return out;
    }

private:
    struct Entry {
        double scanned = 0.0;
        double last_m = 0.0;
        std::vector<BranchJump> jumps;
    };

    static void extend(int ell, Entry& e, double target) {
        constexpr double step = 0.01;
        double lam = e.scanned;
        double m_prev = e.last_m;
        if (lam == 0.0) {
            lam = 1e-6;
            m_prev = theta_pieces(ell, lam).m;
        }
        while (lam < target) {
            const double next = lam + step;
            const double m_next = theta_pieces(ell, next).m;
            if ((m_prev < 0.0) != (m_next < 0.0)) {
                double lo = lam;
                double hi = next;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if ((theta_pieces(ell, mid).m < 0.0) == (m_prev < 0.0)) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                // Just before the zero |D| is huge; its sign says whether atan2 was
                // approaching 0 (continue downward) or pi (continue upward).
                const double d_before = theta_pieces(ell, lo).d;
                e.jumps.push_back({0.5 * (lo + hi), d_before > 0.0 ? -pi : pi});
            }
            lam = next;
            m_prev = m_next;
        }
        e.scanned = lam;
        e.last_m = m_prev;
    }

    std::mutex mutex_;
    std::map<int, Entry> entries_;
};

JumpTable& jump_table() {
    static JumpTable table;
    return table;
}

}  // namespace

double theta_continuous(int ell, double lambda) {
    if (ell < 0) throw ValidationError("theta: ell must be non-negative");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("theta: lambda must be positive");
    }
    const ThetaPieces tp = theta_pieces(ell, lambda);
    double theta = std::atan2(lambda, tp.d);
    for (const BranchJump& j : jump_table().jumps(ell, lambda)) theta += j.shift;
    return theta;
}

double theta_ell(int ell, double lambda) {
    return theta_continuous(ell, lambda) - (ell == 0 ? 0.0 : pi);
}

double theta_ell(const Channel& ch) { return theta_ell(ch.ell, ch.lambda); }

double log_shallow_amplitude(int ell, double lambda) {
    const double ga = std::hypot(static_cast<double>(ell), lambda);
    return std::log(std::sqrt(2.0) / ga) -
           (theta_continuous(ell, lambda) - specfun::arg_gamma_phase(lambda)) / lambda;
}

std::vector<BoundState> shallow_spectrum(const Channel& ch, const ModelParams& params, int p_max) {
    const double log_amp = log_shallow_amplitude(ch.ell, ch.lambda);
    std::vector<BoundState> out;
    for (int p = ch.n_deep; p <= p_max; ++p) {
        const double depth = std::exp(2.0 * log_amp - 2.0 * pi * p / ch.lambda);  // 1 - E/(n0 g12)
        const double eps = params.gamma2() * (1.0 - depth);
        if (!(eps > 0.0) || !(eps < params.gamma2())) continue;
        out.push_back(make_state(ch.ell, p, eps, StateClass::Shallow, params));
    }
    return out;
}

namespace {

// (ell, x)! / (x^(ell+1) e^-x)
double deep_gamma_ratio(int ell, double ga) {
    return specfun::chf_m(1.0, ell + 2.0, ga) / (ell + 1.0);
}

double transition_k(const Channel& ch, bool exact_k) {
    return exact_k ? specfun::k_transition(ch.lambda).k1
                   : specfun::k_transition_asymptotic(ch.lambda);
}

}  // namespace

double deep_omega(const Channel& ch, bool exact_k) {
    const double ga = std::hypot(static_cast<double>(ch.ell), ch.lambda);
    const double g = deep_gamma_ratio(ch.ell, ga);
    if (exact_k) {
        const double k = transition_k(ch, true);
        return 1.0 / (1.0 + g / (k * k));
    }
    const double beta = specfun::transition_beta();
    return 1.0 / (1.0 + std::pow(ch.lambda, 5.0 / 3.0) / (ch.lambda + 0.5) * g / (beta * beta));
}

double deep_omega0(double gamma_alpha) {
    if (!(gamma_alpha > 0.0)) throw ValidationError("deep_omega0: gamma_alpha must be positive");
    const double beta = specfun::transition_beta();
    return 1.0 / (1.0 + std::pow(gamma_alpha, 2.0 / 3.0) / (beta * beta) *
                            std::expm1(gamma_alpha) / (gamma_alpha + 0.5));
}

std::optional<BoundState> deep_spectrum(const Channel& ch, const ModelParams& params,
                                        bool exact_k) {
    if (ch.n_deep < 1) return std::nullopt;
    const double ga = params.gamma_alpha();
    const double ell = ch.ell;
    const double k = transition_k(ch, exact_k);
    const double omega = deep_omega(ch, exact_k);
    const double e_hw = (ell + 1.0) * (1.0 - omega) +
                        ((ga * ga + ell * ell) / (2.0 * ga) - (ch.delta - ch.lambda * k) / (ga * k * k)) *
                            omega;
    const double eps = e_hw * params.alpha() * params.gamma();
    if (!(eps > 0.0) || !(eps < params.gamma2())) return std::nullopt;
    return make_state(ch.ell, 0, eps, StateClass::Deep, params);
}

SpectrumMethod parse_method(std::string_view name) {
    if (name == "exact" || name == "exactmatch" || name == "ExactMatch") return SpectrumMethod::ExactMatch;
    if (name == "closed" || name == "closedform" || name == "ClosedForm") return SpectrumMethod::ClosedForm;
    if (name == "auto" || name == "Auto") return SpectrumMethod::Auto;
    throw ValidationError("unknown spectrum method '" + std::string(name) +
                          "' (expected exact, closed or auto)");
}

std::vector<BoundState> assemble_spectrum(const ModelParams& params, int ell_max, int p_max,
                                          SpectrumMethod method,
                                          const specfun::QuadraturePolicy& policy) {
    if (ell_max < 0 || p_max < 0) throw ValidationError("assemble_spectrum: negative ell_max/p_max");
    std::vector<BoundState> out;
    const double q_min = physical_q_threshold(params);
    for (int ell = 0; ell <= ell_max; ++ell) {
        const auto ch = make_channel(ell, params);
        if (!ch) continue;

        std::vector<BoundState> exact;
        if (method != SpectrumMethod::ClosedForm && q_min < params.gamma()) {
            exact = find_states_exact(*ch, params, q_min, nullptr, policy);
        }
        if (method == SpectrumMethod::ExactMatch) {
            for (const BoundState& s : exact) {
                if (s.p <= p_max) out.push_back(s);
            }
            continue;
        }

        const std::vector<BoundState> shallow = shallow_spectrum(*ch, params, p_max);
        const auto deep = deep_spectrum(*ch, params);
        auto exact_at = [&](int p) -> const BoundState* {
            return p < static_cast<int>(exact.size()) ? &exact[p] : nullptr;
        };
        auto shallow_at = [&](int p) -> const BoundState* {
            for (const BoundState& s : shallow) {
                if (s.p == p) return &s;
            }
            return nullptr;
        };

        for (int p = 0; p <= p_max; ++p) {
            const BoundState* pick = nullptr;
            if (p < ch->n_deep) {
                const bool deep_ok = p == 0 && deep.has_value();
                if (method == SpectrumMethod::ClosedForm) {
                    if (deep_ok) pick = &*deep;
                } else if (deep_ok && ch->delta - 2.0 * p > kDeepMargin) {
                    pick = &*deep;
                } else {
                    pick = exact_at(p);
                }
            } else {
                const BoundState* s = shallow_at(p);
                if (method == SpectrumMethod::ClosedForm) {
                    pick = s;
                } else if (s && s->q * params.r_alpha() < kShallowLimit) {
                    pick = s;
                } else {
                    pick = exact_at(p);
                }
            }
            if (pick) out.push_back(*pick);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const BoundState& a, const BoundState& b) {
        return a.ell != b.ell ? a.ell < b.ell : a.p < b.p;
    });
    return out;
}

}  // namespace vortexbound
