// Fundamental constants and derived dimensionless groups used throughout
// the library. All computations are SI.

#pragma once

namespace casimir {

/// Fundamental constants (SI). kappa = k_B/(hbar c) is the coefficient
/// that turns a gap-temperature product a*T into the dimensionless
/// reduced temperature t = kappa*a*T.
struct PhysicalConstants {
    double hbar;   ///< reduced Planck constant (J s)
    double c;      ///< speed of light in vacuum (m/s)
    double k_B;    ///< Boltzmann constant (J/K)
    double eps0;   ///< vacuum permittivity (F/m)
    double mu0;    ///< vacuum permeability (H/m)
    double kappa;  ///< k_B/(hbar c) (1/(m K)), derived, ~436.70
};

/// CODATA 2018 values. eps0 is derived as 1/(mu0 c^2) so the identity
/// eps0*mu0*c^2 == 1 holds to machine precision; kappa is derived from
/// k_B/(hbar c) and is never set independently.
inline const PhysicalConstants& constants_codata() {
    static const PhysicalConstants k = [] {
        PhysicalConstants pc{};
        pc.hbar  = 1.054571817e-34;
        pc.c     = 2.99792458e8;
        pc.k_B   = 1.380649e-23;
        pc.mu0   = 1.25663706212e-6;
        pc.eps0  = 1.0 / (pc.mu0 * pc.c * pc.c);
        pc.kappa = pc.k_B / (pc.hbar * pc.c);
        return pc;
    }();
    return k;
}

/// hbar*c (J m); appears in every pressure formula.
inline double hbar_c() {
    const auto& pc = constants_codata();
    return pc.hbar * pc.c;
}

inline constexpr const char* kConstantsVersion = "CODATA-2018";

}  // namespace casimir
