#pragma once

#include <functional>
#include <vector>

#include "vortexbound/vortex.hpp"

namespace vortexbound {

// -(1/r)(r R')' + (ell^2/r^2 + V(r)) R = eps R on [0, r_max], R(r_max) = 0.
struct EigenProblem {
    std::function<double(double)> potential;  // V(r), without the centrifugal term
    double gamma2 = 0.0;                        // continuum edge
    int ell = 0;
    double r_max = 0.0;
    int n_grid = 0;
    double face = 0.0;  // if > 0, the grid is adjusted so that this radius is a cell face

    // V = gamma2 phi^2; for variational profiles r_alpha is placed on a face.
    static EigenProblem from_profile(const RadialProfile& profile, double gamma2, int ell,
                                     double r_max, int n_grid);

    void validate() const;  // r_max >= 50, n_grid >= 10 r_max
};

struct EigenLevel {
    double eps = 0.0;
    bool below_continuum = false;  // eps < gamma2; others are states of the trap wall
};

struct GridSpec {
    int cells = 0;
    double h = 0.0;
};
GridSpec grid_for(const EigenProblem& problem, int multiplier = 1);

// Lowest n eigenvalues of the second-order discretization with the given refinement.
std::vector<double> raw_eigenvalues(const EigenProblem& problem, int n_states, int multiplier = 1);

// Eigenvector of level p on the base grid, as R(r_i) at cell centres.
std::vector<double> eigenvector(const EigenProblem& problem, int p);

struct ConvergenceReport {
    std::vector<double> eps;    // Richardson estimate from grids 2N and 4N
    std::vector<double> drift;  // |estimate(2N,4N) - estimate(N,2N)|
    std::vector<double> raw_change;  // |eps(2N) - eps(N)|, second-order in h
    double max_drift = 0.0;
};

ConvergenceReport convergence_report(const EigenProblem& problem, int n_states);

// Richardson-extrapolated levels; AccuracyError when any drift exceeds drift_tol.
std::vector<EigenLevel> radial_eigensolve(const EigenProblem& problem, int n_states,
                                          double drift_tol = 1e-6);

}  // namespace vortexbound
