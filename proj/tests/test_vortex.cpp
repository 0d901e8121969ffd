#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vortexbound/errors.hpp"
#include "vortexbound/model.hpp"
#include "vortexbound/vortex.hpp"

using namespace vortexbound;

TEST_CASE("variational profile is C1 at the matching radius") {
    for (double alpha : {default_alpha(), 0.5, 1.7}) {
        const double ra = std::sqrt(2.0) / alpha;
        const double below = std::nextafter(ra, 0.0);
        const double above = std::nextafter(ra, 10.0);
        CHECK(variational_phi(alpha, below) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(variational_phi(alpha, above) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(std::fabs(variational_dphi(alpha, below) - variational_dphi(alpha, above)) < 1e-14);
        CHECK(variational_dphi(alpha, below) == doctest::Approx(alpha / 2.0));
    }
    const double a = default_alpha();
    CHECK(variational_phi(a, 0.0) == 0.0);
    // 1 - 1/(2 alpha^2 r^2) at large r
    const double r = 1e3;
    CHECK(1.0 - variational_phi(a, r) == doctest::Approx(1.0 / (2 * a * a * r * r)).epsilon(1e-5));
    const RadialProfile p = RadialProfile::variational(a);
    CHECK(p(3.3) == variational_phi(a, 3.3));
    CHECK(p.kind() == ProfileKind::Variational);
    CHECK_THROWS_AS(RadialProfile::variational(-1.0), ValidationError);
}

TEST_CASE("uniform condensate solves the charge-0 equation") {
    for (double r : {0.5, 2.0, 30.0}) CHECK(vortex_ode_residual(1.0, 0.0, 0.0, r, 0) == 0.0);
}

TEST_CASE("tail expansion satisfies the equation to its order") {
    for (double r : {20.0, 40.0}) {
        const double h = 1e-3;
        const double f = vortex_tail(r);
        const double d1 = (vortex_tail(r + h) - vortex_tail(r - h)) / (2 * h);
        const double d2 = (vortex_tail(r + h) - 2 * f + vortex_tail(r - h)) / (h * h);
        CHECK(std::fabs(vortex_ode_residual(f, d1, d2, r)) < 50.0 / std::pow(r, 6));
    }
}

TEST_CASE("ODE vortex profile") {
    const RadialProfile& p = default_ode_profile();
    CHECK(p.kind() == ProfileKind::NumericOde);
    CHECK(p.residual() < 1e-8);
    CHECK(std::fabs(p(10.0) - vortex_tail(10.0)) < 1e-3);
    CHECK(p.slope0() == doctest::Approx(oracle::vortex_slope()).epsilon(2e-4));
    CHECK(p.slope0() == doctest::Approx(0.5827).epsilon(1e-3));
    for (std::size_t i = 1; i < p.phi().size(); ++i) CHECK(p.phi()[i] > p.phi()[i - 1]);
    CHECK(p(0.0) == 0.0);
    CHECK(p(100.0) == vortex_tail(100.0));
    // Interpolated residual away from the nodes.
    for (double r : {0.73, 2.01, 7.77}) {
        const double h = 1e-3;
        const double d2 = (p(r + h) - 2 * p(r) + p(r - h)) / (h * h);
        CHECK(std::fabs(vortex_ode_residual(p(r), p.derivative(r), d2, r)) < 1e-4);
    }
    CHECK_THROWS_AS(solve_vortex_ode(10.0, 4000), ValidationError);
    CHECK_THROWS_AS(solve_vortex_ode(40.0, 100), ValidationError);
}

TEST_CASE("effective potential") {
    const double a = default_alpha();
    const RadialProfile v = RadialProfile::variational(a);
    const double gamma2 = 6.0;
    CHECK(effective_potential(v, gamma2, 0, 2.0) == doctest::Approx(gamma2 * variational_phi(a, 2.0) * variational_phi(a, 2.0)));
    // Inside the core V = gamma^2 alpha^2 r^2/4 + ell^2/r^2 with minimum alpha gamma ell.
    const int ell = 1;
    const double rmin = std::sqrt(2.0 * ell / (a * std::sqrt(gamma2)));
    CHECK(effective_potential(v, gamma2, ell, rmin) == doctest::Approx(a * std::sqrt(gamma2) * ell).epsilon(1e-12));
    // gamma_alpha < ell: no point of the potential lies below the continuum.
    for (double r = 0.05; r < 50.0; r += 0.05) CHECK(effective_potential(v, gamma2, 3, r) > gamma2);
}

TEST_CASE("profile comparison") {
    const RadialProfile v = RadialProfile::variational(default_alpha());
    CHECK(profile_compare(v, v).max_abs == 0.0);
    const ProfileDiscrepancy best = profile_compare(default_alpha());
    CHECK(best.max_abs < 0.1);
    CHECK(best.max_abs < profile_compare(2.0).max_abs);
    CHECK(best.max_abs < profile_compare(0.5).max_abs);
}
