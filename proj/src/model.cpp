#include "vortexbound/model.hpp"

#include <algorithm>

#include "vortexbound/errors.hpp"

namespace vortexbound {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(std::string("field '") + name +
                              "' must be finite and strictly positive");
    }
}

}  // namespace

void PhysicalSystem::validate() const {
    require_positive(m1, "m1");
    require_positive(m2, "m2");
    require_positive(g11, "g11");
    require_positive(g12, "g12");
    require_positive(n0, "n0");
}

DerivedScales derive_scales(const PhysicalSystem& system, double alpha) {
    system.validate();
    require_positive(alpha, "alpha");
    const double hbar = constants::hbar;

    DerivedScales s;
    s.xi = hbar / std::sqrt(2.0 * system.n0 * system.m1 * system.g11);
    s.mu = system.n0 * system.g11;
    s.gamma2 = system.g12 * system.m2 / (system.g11 * system.m1);
    s.kappa2 = 2.0 * system.m1 * system.g12 / (hbar * hbar);
    s.zeta = hbar / std::sqrt(2.0 * system.n0 * system.m2 * system.g12);
    s.xi_hat = std::sqrt(s.xi * s.zeta);
    s.omega = 0.5 * alpha * hbar / (system.m2 * s.xi_hat * s.xi_hat);
    return s;
}

double decoupling_ratio(const PhysicalSystem& system) {
    system.validate();
    const double xi2 =
        constants::hbar * constants::hbar / (2.0 * system.n0 * system.m1 * system.g11);
    return (system.m1 / system.m2) / (system.n0 * xi2);
}

ModelParams::ModelParams(double gamma2, double alpha, double r_trap)
    : gamma2_(gamma2), gamma_(0.0), alpha_(alpha), r_trap_(r_trap), gamma_alpha_(0.0),
      r_alpha_(0.0) {
    require_positive(gamma2, "gamma2");
    require_positive(alpha, "alpha");
    if (!std::isfinite(r_trap) || r_trap <= 1.0) {
        throw ValidationError("field 'r_trap' must be finite and greater than 1");
    }
    gamma_ = std::sqrt(gamma2);
    gamma_alpha_ = gamma_ / alpha;
    r_alpha_ = std::sqrt(2.0) / alpha;
}

ModelParams ModelParams::from_system(const PhysicalSystem& system, double radius_m,
                                     double alpha) {
    const DerivedScales s = derive_scales(system, alpha);
    require_positive(radius_m, "radius");
    return ModelParams(s.gamma2, alpha, radius_m / s.xi);
}

EnergyViews energy_views(double eps, const ModelParams& params) {
    return {eps / params.gamma2(), eps / (params.alpha() * params.gamma())};
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = {
        {"yb7li", "174Yb impurity in a 7Li condensate", 7.016003437 * constants::atomic_mass,
         173.938866 * constants::atomic_mass},
        {"yb173li7", "173Yb impurity in a 7Li condensate", 7.016003437 * constants::atomic_mass,
         172.938216 * constants::atomic_mass},
    };
    return table;
}

std::optional<Preset> find_preset(std::string_view name) {
    const auto& table = presets();
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const Preset& p) { return p.name == name; });
    if (it == table.end()) return std::nullopt;
    return *it;
}

double shallow_scale_nanokelvin(const PhysicalSystem& system) {
    system.validate();
    return system.n0 * system.g12 / constants::k_boltzmann * 1e9;
}

}  // namespace vortexbound
