#include <doctest.h>

#include <cmath>

#include "vortexbound/errors.hpp"
#include "vortexbound/model.hpp"

using namespace vortexbound;

namespace {

PhysicalSystem li_like() {
    const double m1 = 7.016 * constants::atomic_mass;
    return {m1, m1, 1e-40, 1e-40, 1e14};
}

}  // namespace

TEST_CASE("derive_scales satisfies its defining identities") {
    PhysicalSystem s = li_like();
    s.m2 = 25.0 * s.m1;
    s.g12 = 0.7e-40;
    const DerivedScales d = derive_scales(s);
    const double hbar = constants::hbar;
    CHECK(d.xi * d.xi * 2.0 * s.n0 * s.m1 * s.g11 == doctest::Approx(hbar * hbar).epsilon(1e-12));
    CHECK(d.xi_hat * d.xi_hat == doctest::Approx(d.xi * d.zeta).epsilon(1e-12));
    CHECK(d.gamma2 == doctest::Approx((d.xi / d.zeta) * (d.xi / d.zeta)).epsilon(1e-12));
    CHECK(d.gamma2 == doctest::Approx(25.0 * 0.7).epsilon(1e-12));
    CHECK(d.kappa2 == doctest::Approx(2.0 * s.m1 * s.g12 / (hbar * hbar)).epsilon(1e-12));
    CHECK(d.mu == doctest::Approx(s.n0 * s.g11).epsilon(1e-14));
}

TEST_CASE("symmetric system has unit depth") {
    CHECK(derive_scales(li_like()).gamma2 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unit round trip reconstructs m1 g11 from xi and n0") {
    const PhysicalSystem s = li_like();
    const DerivedScales d = derive_scales(s);
    const double m1g11 = constants::hbar * constants::hbar / (2.0 * s.n0 * d.xi * d.xi);
    CHECK(m1g11 == doctest::Approx(s.m1 * s.g11).epsilon(1e-10));
    CHECK(d.mu / s.n0 == doctest::Approx(s.g11).epsilon(1e-10));
}

TEST_CASE("hbar omega in eps units is alpha gamma") {
    // eps = 2 m2 xi^2 E / hbar^2, so E = hbar omega maps to alpha*gamma.
    PhysicalSystem s = li_like();
    s.m2 = 24.8 * s.m1;
    s.g12 = 0.3e-40;
    const DerivedScales d = derive_scales(s);
    const double eps_omega = 2.0 * s.m2 * d.xi * d.xi * constants::hbar * d.omega /
                             (constants::hbar * constants::hbar);
    const double alpha = default_alpha();
    CHECK(eps_omega == doctest::Approx(alpha * std::sqrt(d.gamma2)).epsilon(1e-12));
    const ModelParams p(d.gamma2);
    CHECK(energy_views(alpha * p.gamma(), p).e_over_hbar_omega == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("decoupling ratio") {
    PhysicalSystem s = li_like();
    // choose n0 so that n0 xi^2 = 10 with m1 = m2
    const double hbar = constants::hbar;
    s.n0 = 1e14;
    s.g11 = hbar * hbar / (2.0 * s.m1 * 10.0);  // xi^2 = 10/n0
    CHECK(decoupling_ratio(s) == doctest::Approx(0.1).epsilon(1e-12));
    s.m2 = 25.0 * s.m1;
    s.g11 = hbar * hbar / (2.0 * s.m1 * 100.0);
    CHECK(decoupling_ratio(s) == doctest::Approx(1.0 / 2500.0).epsilon(1e-12));
    s.m2 = 1e6 * s.m1;
    CHECK(decoupling_ratio(s) < 1e-7);
}

TEST_CASE("energy views") {
    const ModelParams p(6.0);
    const double alpha = std::sqrt(5.0 / 6.0);
    EnergyViews v = energy_views(3.0, p);
    CHECK(v.e_over_n0g12 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v.e_over_hbar_omega == doctest::Approx(3.0 / (alpha * std::sqrt(6.0))).epsilon(1e-15));
    v = energy_views(0.0, p);
    CHECK(v.e_over_n0g12 == 0.0);
    CHECK(v.e_over_hbar_omega == 0.0);
    CHECK(energy_views(6.0, p).e_over_n0g12 == doctest::Approx(1.0));
}

TEST_CASE("model params derived quantities") {
    const ModelParams p(6.0, default_alpha(), 1000.0);
    CHECK(p.r_alpha() * p.alpha() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
    CHECK(p.gamma_alpha() == doctest::Approx(std::sqrt(6.0) / std::sqrt(5.0 / 6.0)));
    CHECK(default_alpha() == doctest::Approx(0.913).epsilon(1e-3));
}

TEST_CASE("validation names the offending field") {
    PhysicalSystem s = li_like();
    s.g12 = -1.0;
    try {
        derive_scales(s);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("g12") != std::string::npos);
    }
    s = li_like();
    s.n0 = std::nan("");
    CHECK_THROWS_AS(derive_scales(s), ValidationError);
    CHECK_THROWS_AS(ModelParams(0.0), ValidationError);
    CHECK_THROWS_AS(ModelParams(6.0, 0.9, 1.0), ValidationError);
    CHECK_THROWS_AS(ModelParams(6.0, -1.0), ValidationError);
}

TEST_CASE("Yb-Li preset mass ratio") {
    const auto p = find_preset("yb7li");
    REQUIRE(p.has_value());
    CHECK(p->m2 / p->m1 == doctest::Approx(24.8).epsilon(0.01));
    CHECK_FALSE(find_preset("nope").has_value());
    PhysicalSystem s{p->m1, p->m2, 1e-40, 1e-40, 1e14};
    CHECK(derive_scales(s).gamma2 == doctest::Approx(p->m2 / p->m1));
}

TEST_CASE("from_system uses the healing length for the trap radius") {
    PhysicalSystem s = li_like();
    const DerivedScales d = derive_scales(s);
    const ModelParams p = ModelParams::from_system(s, 500.0 * d.xi);
    CHECK(p.r_trap() == doctest::Approx(500.0));
    CHECK(p.gamma2() == doctest::Approx(1.0));
}
