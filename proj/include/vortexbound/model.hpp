#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vortexbound {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double atomic_mass = 1.66053906660e-27;  // kg
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

// Variational slope of the piecewise vortex profile, sqrt(5/6).
inline double default_alpha() { return std::sqrt(5.0 / 6.0); }

// Dimensionful inputs (SI). Couplings are the effective 2D ones.
struct PhysicalSystem {
    double m1 = 0.0;   // condensate particle mass
    double m2 = 0.0;   // impurity mass
    double g11 = 0.0;  // intra-species coupling, J m^2
    double g12 = 0.0;  // inter-species coupling, J m^2
    double n0 = 0.0;   // surface density, m^-2

    // Throws ValidationError naming the first non-finite or non-positive field.
    void validate() const;
};

struct DerivedScales {
    double xi = 0.0;      // healing length
    double mu = 0.0;      // chemical potential n0*g11
    double gamma2 = 0.0;  // potential depth g12*m2/(g11*m1)
    double kappa2 = 0.0;  // back-reaction parameter 2*m1*g12/hbar^2
    double zeta = 0.0;    // impurity penetration length
    double xi_hat = 0.0;  // sqrt(xi*zeta)
    double omega = 0.0;   // deep-state angular frequency
};

DerivedScales derive_scales(const PhysicalSystem& system, double alpha = default_alpha());

// kappa^2/gamma^2 = (m1/m2) / (n0 xi^2); small values certify the decoupled regime.
double decoupling_ratio(const PhysicalSystem& system);

// Dimensionless problem definition. Lengths in healing lengths, energies in
// units of hbar^2/(2 m2 xi^2).
class ModelParams {
public:
    explicit ModelParams(double gamma2, double alpha = default_alpha(), double r_trap = 1000.0);

    static ModelParams from_system(const PhysicalSystem& system, double radius_m,
                                   double alpha = default_alpha());

    double gamma2() const { return gamma2_; }
    double gamma() const { return gamma_; }
    double alpha() const { return alpha_; }
    double r_trap() const { return r_trap_; }
    double gamma_alpha() const { return gamma_alpha_; }
    double r_alpha() const { return r_alpha_; }

    ModelParams with_gamma2(double gamma2) const { return ModelParams(gamma2, alpha_, r_trap_); }
    ModelParams with_r_trap(double r_trap) const { return ModelParams(gamma2_, alpha_, r_trap); }

private:
    double gamma2_;
    double gamma_;
    double alpha_;
    double r_trap_;
    double gamma_alpha_;
    double r_alpha_;
};

struct EnergyViews {
    double e_over_n0g12 = 0.0;
    double e_over_hbar_omega = 0.0;
};

EnergyViews energy_views(double eps, const ModelParams& params);

// Literature masses only; the 2D couplings are left to the user.
struct Preset {
    std::string name;
    std::string description;
    double m1 = 0.0;
    double m2 = 0.0;
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(std::string_view name);

// n0*g12 expressed as a temperature, in nK.
double shallow_scale_nanokelvin(const PhysicalSystem& system);

}  // namespace vortexbound
