#include "vortexbound/fullnumeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <lapacke.h>

#include "vortexbound/errors.hpp"

namespace vortexbound {

EigenProblem EigenProblem::from_profile(const RadialProfile& profile, double gamma2, int ell,
                                        double r_max, int n_grid) {
    EigenProblem p;
    p.potential = [profile, gamma2](double r) {
        const double phi = profile(r);
        return gamma2 * phi * phi;
    };
    p.gamma2 = gamma2;
    p.ell = ell;
    p.r_max = r_max;
    p.n_grid = n_grid;
    if (profile.kind() == ProfileKind::Variational) p.face = std::sqrt(2.0) / profile.alpha();
    return p;
}

void EigenProblem::validate() const {
    if (!potential) throw ValidationError("EigenProblem: potential is not set");
    if (!(r_max >= 50.0) || !std::isfinite(r_max)) throw ValidationError("EigenProblem: r_max must be >= 50");
    if (!(n_grid >= 10.0 * r_max)) throw ValidationError("EigenProblem: n_grid must be >= 10 r_max");
    if (ell < 0) throw ValidationError("EigenProblem: ell must be non-negative");
    if (!(gamma2 > 0.0)) throw ValidationError("EigenProblem: gamma2 must be positive");
    if (face < 0.0 || face >= r_max) throw ValidationError("EigenProblem: face outside the domain");
}

GridSpec grid_for(const EigenProblem& problem, int multiplier) {
    problem.validate();
    double h = problem.r_max / problem.n_grid;
    if (problem.face > 0.0) h = problem.face / std::ceil(problem.face / h);
    GridSpec g;
    g.cells = static_cast<int>(std::lround(problem.r_max / h)) * multiplier;
    g.h = h / multiplier;
    return g;
}

namespace {

// Symmetric tridiagonal form of the cell-centred finite-volume operator after
// scaling by sqrt(r_i). The inner face at r = 0 carries no flux; the outer wall
// is a Dirichlet condition through an odd ghost cell.
void assemble(const EigenProblem& problem, const GridSpec& g, std::vector<double>& d,
              std::vector<double>& e) {
    const int n = g.cells;
    const double h = g.h;
    const double l2 = static_cast<double>(problem.ell) * problem.ell;
    d.assign(n, 0.0);
    e.assign(n - 1, 0.0);
    for (int i = 0; i < n; ++i) {
        const double r = (i + 0.5) * h;
        const double r_in = i * h;
        const double r_out = (i + 1) * h;
        const double wall = i == n - 1 ? r_out : 0.0;
        d[i] = (r_in + r_out + wall) / (h * h * r) + l2 / (r * r) + problem.potential(r);
        if (i + 1 < n) {
            const double r_next = (i + 1.5) * h;
            e[i] = -r_out / (h * h * std::sqrt(r * r_next));
        }
    }
}

}  // namespace

std::vector<double> raw_eigenvalues(const EigenProblem& problem, int n_states, int multiplier) {
    if (n_states < 1) throw ValidationError("raw_eigenvalues: n_states must be >= 1");
    const GridSpec g = grid_for(problem, multiplier);
    if (n_states > g.cells) throw ValidationError("raw_eigenvalues: more states than grid cells");
    std::vector<double> d, e;
    assemble(problem, g, d, e);
    std::vector<double> w(g.cells);
    std::vector<lapack_int> iblock(g.cells), isplit(g.cells);
    lapack_int m = 0, nsplit = 0;
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    const lapack_int info =
        LAPACKE_dstebz('I', 'E', g.cells, 0.0, 0.0, 1, n_states, abstol, d.data(), e.data(), &m,
                       &nsplit, w.data(), iblock.data(), isplit.data());
    if (info != 0 || m != n_states) {
        throw SolverError("tridiagonal eigensolver failed (info " + std::to_string(info) + ")",
                          static_cast<double>(info));
    }
    w.resize(m);
    return w;
}

std::vector<double> eigenvector(const EigenProblem& problem, int p) {
    const GridSpec g = grid_for(problem, 1);
    if (p < 0 || p >= g.cells) throw ValidationError("eigenvector: level out of range");
    std::vector<double> d, e;
    assemble(problem, g, d, e);
    e.push_back(0.0);
    std::vector<double> w(g.cells), z(g.cells);
    std::vector<lapack_int> isuppz(2);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', g.cells, d.data(), e.data(),
                                           0.0, 0.0, p + 1, p + 1, 0.0, &m, w.data(), z.data(),
                                           g.cells, isuppz.data());
    if (info != 0 || m != 1) throw SolverError("eigenvector: LAPACK dstevr failed", info);
    // Undo the sqrt(r) symmetrization.
    for (int i = 0; i < g.cells; ++i) z[i] /= std::sqrt((i + 0.5) * g.h);
    return z;
}

ConvergenceReport convergence_report(const EigenProblem& problem, int n_states) {
    const std::vector<double> e1 = raw_eigenvalues(problem, n_states, 1);
    const std::vector<double> e2 = raw_eigenvalues(problem, n_states, 2);
    const std::vector<double> e4 = raw_eigenvalues(problem, n_states, 4);
    ConvergenceReport rep;
    for (int k = 0; k < n_states; ++k) {
        const double est_coarse = (4.0 * e2[k] - e1[k]) / 3.0;
        const double est_fine = (4.0 * e4[k] - e2[k]) / 3.0;
        rep.eps.push_back(est_fine);
        rep.drift.push_back(std::fabs(est_fine - est_coarse));
        rep.raw_change.push_back(std::fabs(e2[k] - e1[k]));
        rep.max_drift = std::max(rep.max_drift, rep.drift.back());
    }
    return rep;
}

std::vector<EigenLevel> radial_eigensolve(const EigenProblem& problem, int n_states,
                                          double drift_tol) {
    const ConvergenceReport rep = convergence_report(problem, n_states);
    if (rep.max_drift > drift_tol) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "radial eigensolver: drift %.3e under grid doubling exceeds %.1e",
                      rep.max_drift, drift_tol);
        throw AccuracyError(msg, rep.max_drift);
    }
    std::vector<EigenLevel> out;
    for (double eps : rep.eps) out.push_back({eps, eps < problem.gamma2});
    return out;
}

}  // namespace vortexbound
