#include "vortexbound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortexbound/config.hpp"
#include "vortexbound/errors.hpp"
#include "vortexbound/finitesize.hpp"
#include "vortexbound/fullnumeric.hpp"
#include "vortexbound/model.hpp"
#include "vortexbound/specfun.hpp"
#include "vortexbound/spectrum.hpp"
#include "vortexbound/vortex.hpp"

namespace vortexbound::cli {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(std::ostream& os) : os_(os) {}
    void header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            os_ << (first ? "" : ",") << c;
            first = false;
        }
        os_ << '\n';
    }
    template <class... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
        os_ << '\n';
    }

private:
    static std::string cell(double v) { return num(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(std::string_view v) { return std::string(v); }
    static std::string cell(const char* v) { return v; }

    std::ostream& os_;
};

// Model options shared by the spectrum-type commands.
struct ModelOptions {
    double gamma2 = 6.0;
    double alpha = default_alpha();
    double radius = 1000.0;
    std::optional<double> m1, m2, g11, g12, n0;
    CLI::Option* gamma2_opt = nullptr;

    void add(CLI::App* app, double default_gamma2) {
        gamma2 = default_gamma2;
        gamma2_opt = app->add_option("--gamma2", gamma2, "dimensionless depth gamma^2");
        app->add_option("--alpha", alpha, "variational slope");
        app->add_option("--radius", radius, "trap radius R/xi");
        app->add_option("--m1", m1, "condensate particle mass (kg)");
        app->add_option("--m2", m2, "impurity mass (kg)");
        app->add_option("--g11", g11, "intra-species 2D coupling (J m^2)");
        app->add_option("--g12", g12, "inter-species 2D coupling (J m^2)");
        app->add_option("--n0", n0, "surface density (m^-2)");
    }

    ModelParams params() const {
        const bool any = m1 || m2 || g11 || g12 || n0;
        if (!any) return ModelParams(gamma2, alpha, radius);
        if (!(m1 && m2 && g11 && g12 && n0)) {
            throw ValidationError("physical system needs all of m1, m2, g11, g12, n0");
        }
        if (gamma2_opt && gamma2_opt->count() > 0) {
            throw ValidationError("give either gamma2 or a physical system, not both");
        }
        PhysicalSystem sys{*m1, *m2, *g11, *g12, *n0};
        return ModelParams(derive_scales(sys, alpha).gamma2, alpha, radius);
    }
};

specfun::QuadraturePolicy quad_policy(std::optional<double> tol) {
    specfun::QuadraturePolicy p;
    if (tol) {
        if (!(*tol > 0.0) || *tol > 1e-3) throw ValidationError("--tol must lie in (0, 1e-3]");
        p.rel_tol = *tol;
    }
    p.validate();
    return p;
}

std::vector<double> parse_sweep(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !(lo > 0.0) ||
        !(hi >= lo)) {
        throw ValidationError("--sweep expects GMIN:GMAX:N with 0 < GMIN <= GMAX, N >= 1");
    }
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return out;
}

void emit_spectrum(Csv& csv, const ModelParams& params, const std::vector<BoundState>& states) {
    for (const BoundState& s : states) {
        csv.row(params.gamma2(), s.ell, s.p, to_string(s.cls), s.eps, s.q, s.e_over_n0g12,
                s.e_over_hbar_omega, s.physical);
    }
}

std::string find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states of an impurity in a quantum vortex"};
    app.name("vortexbound");
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    int threads = 1;
    std::optional<double> tol;
    app.add_option("--config", config_path, "JSON or flat TOML parameter file");
    app.add_option("--out", out_path, "write data to this file instead of stdout");
    app.add_option("--threads", threads, "worker threads for grid commands")->check(CLI::Range(1, 64));
    app.add_option("--tol", tol, "relative tolerance for the Bessel-K quadrature");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "bound-state spectrum table");
    ModelOptions spec_model;
    spec_model.add(spectrum, 6.0);
    int spec_lmax = 3, spec_pmax = 6;
    std::string spec_method = "auto", spec_sweep;
    spectrum->add_option("--lmax", spec_lmax)->check(CLI::Range(0, 50));
    spectrum->add_option("--pmax", spec_pmax)->check(CLI::Range(0, 200));
    spectrum->add_option("--method", spec_method, "exact | closed | auto");
    spectrum->add_option("--sweep", spec_sweep, "GMIN:GMAX:N sweep over gamma2");

    // profile
    auto* profile = app.add_subcommand("profile", "vortex profiles and effective potentials");
    double prof_gamma2 = 6.0, prof_alpha = default_alpha(), prof_rmax = 10.0;
    int prof_n = 200;
    profile->add_option("--gamma2", prof_gamma2);
    profile->add_option("--alpha", prof_alpha);
    profile->add_option("--rmax", prof_rmax)->check(CLI::Range(0.1, 40.0));
    profile->add_option("--n", prof_n)->check(CLI::Range(2, 1000000));

    // compare
    auto* compare = app.add_subcommand("compare", "exact matching vs closed forms vs eigensolver");
    ModelOptions cmp_model;
    cmp_model.add(compare, 6.0);
    int cmp_lmax = 2;
    int cmp_ngrid = 0;
    std::string cmp_profile = "variational";
    compare->add_option("--lmax", cmp_lmax)->check(CLI::Range(0, 20));
    compare->add_option("--ngrid", cmp_ngrid, "base grid cells (default 20 R/xi)");
    compare->add_option("--profile", cmp_profile, "variational | ode");

    // onset-table
    auto* onset = app.add_subcommand("onset-table", "onset fits 1/lambda = c (ln R + ln 1/r)");
    int on_lmax = 2, on_pmax = 4, on_npts = 40;
    double on_rmin = 50.0, on_rmax = 3000.0;
    onset->add_option("--lmax", on_lmax)->check(CLI::Range(0, 10));
    onset->add_option("--pmax", on_pmax)->check(CLI::Range(0, 20));
    onset->add_option("--rmin", on_rmin);
    onset->add_option("--rmax", on_rmax);
    onset->add_option("--npts", on_npts)->check(CLI::Range(2, 10000));

    // regime-diagram
    auto* regime = app.add_subcommand("regime-diagram", "number of physical bound states over (R, gamma2)");
    double rg_rmin = 100.0, rg_rmax = 3000.0, rg_gmax = 3.3;
    int rg_nx = 50, rg_ny = 50;
    regime->add_option("--rmin", rg_rmin);
    regime->add_option("--rmax", rg_rmax);
    regime->add_option("--gmax", rg_gmax);
    regime->add_option("--nx", rg_nx)->check(CLI::Range(1, 100000));
    regime->add_option("--ny", rg_ny)->check(CLI::Range(1, 100000));

    // specfun-check
    auto* sfcheck = app.add_subcommand("specfun-check", "K at the transition point vs asymptotics");
    double sf_lmin = 0.5, sf_lmax = 5.0;
    int sf_n = 46;
    sfcheck->add_option("--lmin", sf_lmin);
    sfcheck->add_option("--lmax", sf_lmax);
    sfcheck->add_option("--n", sf_n)->check(CLI::Range(1, 100000));

    // presets
    auto* presets_cmd = app.add_subcommand("presets", "named mass presets and derived scales");
    std::string pr_name;
    std::optional<double> pr_g11, pr_g12, pr_n0;
    double pr_alpha = default_alpha();
    presets_cmd->add_option("--name", pr_name);
    presets_cmd->add_option("--g11", pr_g11);
    presets_cmd->add_option("--g12", pr_g12);
    presets_cmd->add_option("--n0", pr_n0);
    presets_cmd->add_option("--alpha", pr_alpha);

    if (args_in.empty()) {
        err << app.help();
        return kValidation;
    }

    try {
        std::vector<std::string> args = args_in;
        const std::string cfg = find_config_path(args);
        if (!cfg.empty()) {
            CLI::App* sub = nullptr;
            for (const std::string& a : args) {
                for (CLI::App* s : app.get_subcommands({})) {
                    if (s->get_name() == a) sub = s;
                }
                if (sub) break;
            }
            for (const auto& [key, value] : load_config(cfg)) {
                if (key == "config") throw ValidationError("config: key 'config' is not allowed");
                const bool known = (sub && sub->get_option_no_throw("--" + key)) ||
                                   app.get_option_no_throw("--" + key);
                if (!known) throw ValidationError("config: unknown key '" + key + "'");
                if (!given_on_command_line(args, key)) {
                    args.push_back("--" + key);
                    args.push_back(value);
                }
            }
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    std::ostringstream data;
    Csv csv(data);
    try {
        const specfun::QuadraturePolicy qpol = quad_policy(tol);

        if (spectrum->parsed()) {
            const SpectrumMethod method = parse_method(spec_method);
            csv.header({"gamma2", "ell", "p", "class", "eps", "q", "E_over_n0g12",
                        "E_over_hbar_omega", "physical"});
            const ModelParams base = spec_model.params();
            std::vector<double> g2s{base.gamma2()};
            if (!spec_sweep.empty()) g2s = parse_sweep(spec_sweep);
            for (double g2 : g2s) {
                const ModelParams p = base.with_gamma2(g2);
                emit_spectrum(csv, p, assemble_spectrum(p, spec_lmax, spec_pmax, method, qpol));
            }
        } else if (profile->parsed()) {
            const ModelParams p(prof_gamma2, prof_alpha);
            const RadialProfile var = RadialProfile::variational(p.alpha());
            const RadialProfile& ode = default_ode_profile();
            csv.header({"r", "phi_variational", "phi_ode", "veff_l0", "veff_l1", "veff_l2", "veff_l3"});
            for (int i = 1; i <= prof_n; ++i) {
                const double r = prof_rmax * i / prof_n;
                csv.row(r, var(r), ode(r), effective_potential(var, p.gamma2(), 0, r),
                        effective_potential(var, p.gamma2(), 1, r),
                        effective_potential(var, p.gamma2(), 2, r),
                        effective_potential(var, p.gamma2(), 3, r));
            }
        } else if (compare->parsed()) {
            const ModelParams p = cmp_model.params();
            if (cmp_profile != "variational" && cmp_profile != "ode") {
                throw ValidationError("--profile must be 'variational' or 'ode'");
            }
            const RadialProfile prof = cmp_profile == "ode" ? default_ode_profile()
                                                            : RadialProfile::variational(p.alpha());
            const int ngrid = cmp_ngrid > 0 ? cmp_ngrid
                                            : static_cast<int>(std::ceil(20.0 * p.r_trap()));
            csv.header({"gamma2", "ell", "p", "eps_numeric", "eps_exactmatch", "eps_closedform"});
            const double q_min = physical_q_threshold(p);
            const auto closed = assemble_spectrum(p, cmp_lmax, 200, SpectrumMethod::ClosedForm, qpol);
            for (int ell = 0; ell <= cmp_lmax; ++ell) {
                const auto ch = make_channel(ell, p);
                std::vector<BoundState> exact;
                if (ch && q_min < p.gamma()) exact = find_states_exact(*ch, p, q_min, nullptr, qpol);
                const EigenProblem prob = EigenProblem::from_profile(prof, p.gamma2(), ell,
                                                                     p.r_trap(), ngrid);
                const int n_req = static_cast<int>(exact.size()) + 2;
                std::vector<double> numeric;
                for (const EigenLevel& lv : radial_eigensolve(prob, n_req)) {
                    if (lv.below_continuum) numeric.push_back(lv.eps);
                }
                std::map<int, double> closed_eps;
                for (const BoundState& s : closed) {
                    if (s.ell == ell) closed_eps[s.p] = s.eps;
                }
                const std::size_t rows = std::max(exact.size(), numeric.size());
                for (std::size_t k = 0; k < rows; ++k) {
                    const int pk = static_cast<int>(k);
                    const double nan = std::nan("");
                    csv.row(p.gamma2(), ell, pk, k < numeric.size() ? numeric[k] : nan,
                            k < exact.size() ? exact[k].eps : nan,
                            closed_eps.count(pk) ? closed_eps[pk] : nan);
                }
            }
        } else if (onset->parsed()) {
            if (!(on_rmin > 1.0) || !(on_rmax > on_rmin)) {
                throw ValidationError("onset-table needs 1 < rmin < rmax");
            }
            std::vector<double> grid(on_npts);
            for (int i = 0; i < on_npts; ++i) {
                grid[i] = std::exp(std::log(on_rmin) +
                                   (std::log(on_rmax) - std::log(on_rmin)) * i / (on_npts - 1));
            }
            csv.header({"ell", "p", "c", "ln_inv_r", "residual"});
            for (int ell = 0; ell <= on_lmax; ++ell) {
                for (int pp = 0; pp <= on_pmax; ++pp) {
                    const OnsetFit f = fit_onset(ell, pp, grid);
                    csv.row(f.ell, f.p, f.c, f.ln_inv_r, f.residual);
                }
            }
        } else if (regime->parsed()) {
            csv.header({"r_over_xi", "gamma2", "n_states"});
            for (const RegimeCell& c : regime_grid(rg_rmin, rg_rmax, rg_gmax, rg_nx, rg_ny, threads)) {
                csv.row(c.r_over_xi, c.gamma2, c.n_states);
            }
        } else if (sfcheck->parsed()) {
            if (!(sf_lmin > 0.0) || !(sf_lmax >= sf_lmin)) {
                throw ValidationError("specfun-check needs 0 < lmin <= lmax");
            }
            csv.header({"lambda", "K", "Kprime", "K1", "K1_asym"});
            for (int i = 0; i < sf_n; ++i) {
                const double lam = sf_n == 1 ? sf_lmin : sf_lmin + (sf_lmax - sf_lmin) * i / (sf_n - 1);
                const double k = specfun::bessel_k_imag(lam, lam, qpol);
                const double kp = specfun::bessel_k_imag_dx(lam, lam, qpol);
                csv.row(lam, k, kp, specfun::k_transition(lam, qpol).k1,
                        specfun::k_transition_asymptotic(lam));
            }
        } else if (presets_cmd->parsed()) {
            nlohmann::json doc = nlohmann::json::array();
            for (const Preset& pr : presets()) {
                if (!pr_name.empty() && pr.name != pr_name) continue;
                nlohmann::json entry{{"name", pr.name},
                                     {"description", pr.description},
                                     {"m1", pr.m1},
                                     {"m2", pr.m2},
                                     {"mass_ratio", pr.m2 / pr.m1}};
                if (pr_g11 || pr_g12 || pr_n0) {
                    if (!(pr_g11 && pr_g12 && pr_n0)) {
                        throw ValidationError("scales need all of g11, g12, n0");
                    }
                    const PhysicalSystem sys{pr.m1, pr.m2, *pr_g11, *pr_g12, *pr_n0};
                    const DerivedScales sc = derive_scales(sys, pr_alpha);
                    entry["scales"] = {{"xi", sc.xi},         {"mu", sc.mu},     {"gamma2", sc.gamma2},
                                       {"kappa2", sc.kappa2}, {"zeta", sc.zeta}, {"xi_hat", sc.xi_hat},
                                       {"omega", sc.omega}};
                    entry["decoupling_ratio"] = decoupling_ratio(sys);
                    entry["n0g12_nK"] = shallow_scale_nanokelvin(sys);
                }
                doc.push_back(entry);
            }
            if (doc.empty()) throw ValidationError("unknown preset '" + pr_name + "'");
            data << doc.dump(2) << '\n';
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const AccuracyError& e) {
        err << "accuracy error: " << e.what() << " (achieved " << num(e.achieved()) << ")\n";
        return kSolver;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << " (residual " << num(e.residual()) << ")\n";
        return kSolver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kSolver;
    }

    if (out_path.empty()) {
        out << data.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return kValidation;
        }
        file << data.str();
    }
    return kOk;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace vortexbound::cli
