#pragma once

#include <memory>
#include <vector>

namespace vortexbound {

enum class ProfileKind { Variational, NumericOde };

// Vortex amplitude phi(r), r in healing lengths. Variational profiles are
// evaluated in closed form; ODE profiles are interpolated (monotone cubic)
// inside the table and continued with the large-r expansion beyond it.
class RadialProfile {
public:
    static RadialProfile variational(double alpha, double r_table = 40.0, int n_table = 4000);

    double operator()(double r) const;
    double derivative(double r) const;

    ProfileKind kind() const { return kind_; }
    double alpha() const { return alpha_; }  // 0 for ODE profiles
    double slope0() const { return slope0_; }
    const std::vector<double>& r() const { return r_; }
    const std::vector<double>& phi() const { return phi_; }
    double r_max() const { return r_.back(); }

    // Max |phi''+phi'/r-phi/r^2+(1-phi^2)phi| of the discrete scheme on interior nodes.
    double residual() const { return residual_; }

private:
    friend RadialProfile solve_vortex_ode(double r_max, int grid_n);
    struct Interp;

    RadialProfile() = default;

    ProfileKind kind_ = ProfileKind::Variational;
    double alpha_ = 0.0;
    double slope0_ = 0.0;
    double residual_ = 0.0;
    std::vector<double> r_;
    std::vector<double> phi_;
    std::shared_ptr<const Interp> interp_;
};

// alpha r/2 on [0, sqrt(2)/alpha], sqrt(1 - 1/(alpha r)^2) beyond.
double variational_phi(double alpha, double r);
double variational_dphi(double alpha, double r);

// Large-r expansion 1 - 1/(2r^2) - 9/(8r^4).
double vortex_tail(double r);

// Left side of the charge-n vortex equation for given phi, phi', phi''.
double vortex_ode_residual(double phi, double dphi, double d2phi, double r, int charge = 1);

// Shooting on the initial slope followed by Newton relaxation on a uniform grid.
RadialProfile solve_vortex_ode(double r_max = 40.0, int grid_n = 4000);

// Shared ODE profile with the defaults above, computed once.
const RadialProfile& default_ode_profile();

// gamma^2 phi(r)^2 + ell^2/r^2
double effective_potential(const RadialProfile& profile, double gamma2, int ell, double r);

struct ProfileDiscrepancy {
    double max_abs = 0.0;
    double r_at_max = 0.0;
};

ProfileDiscrepancy profile_compare(const RadialProfile& a, const RadialProfile& b,
                                   double r_max = 20.0, int samples = 4000);
ProfileDiscrepancy profile_compare(double alpha);

}  // namespace vortexbound
