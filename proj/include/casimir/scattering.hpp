#pragma once

// Per-object scattering amplitudes on the imaginary frequency axis, each in
// the object's natural wave basis. Everything here is real.

#include "casimir/model.hpp"

namespace casimir {

enum class Polarization { E, M };  // E = TM/Dirichlet, M = TE/Neumann

// Exterior amplitude of a perfect-mirror cylinder of radius R in channel n
// at spectral parameter p = sqrt(kz^2 + kappa^2):
//   E: -I_n(Rp)/K_n(Rp),   M: -I'_n(Rp)/K'_n(Rp).
// Negative n maps to |n|. Throws std::overflow_error outside double range
// (the solvers use the log form below instead).
double cylinder_amplitude(int n, double p, double R, Polarization pol);

// log|amplitude| for n = 0..n_max at fixed x = R p, plus the channel signs:
// E amplitudes are negative at every (p, R); M amplitudes positive
// (I'_n > 0, K'_n < 0). Used by the round-trip assembly.
struct CylinderAmplitudeLogs {
    std::vector<double> log_e, log_m;  // log |f|
    double sign_e = -1.0, sign_m = 1.0;
};
CylinderAmplitudeLogs cylinder_amplitude_logs(int n_max, double x);

// Fresnel reflection coefficient of a planar interface at imaginary
// frequency kappa, x = kappa/sqrt(kappa^2 + kperp^2) in (0, 1]:
//   r^M = (mu - sqrt(1 + (n^2-1) x^2)) / (mu + sqrt(...)),  r^E with eps.
// Perfect conductor returns exactly -1 (M) and +1 (E). In a non-vacuum
// medium the relative responses eps/eps_M, mu/mu_M enter.
double fresnel(Polarization pol, double kappa, double x, const MaterialModel& plate,
               const Medium& medium = Medium::vacuum());

// Parabolic-cylinder amplitude f_{kz nu P} for a perfect mirror with tip
// radius R >= 0 (R = 0 is the knife edge); mu0 = sqrt(2 R sqrt(kappa^2+kz^2))
// is formed internally. E: i^nu D_nu(i mu0)/D_{-nu-1}(mu0); M: the primed
// ratio. Real by construction.
double parabola_amplitude(int nu, double kappa, double kz, double R, Polarization pol,
                          bool* precision_loss = nullptr);

// Reserved: the paper defers the dielectric-cylinder amplitude to the
// continuity-condition solution of an external reference.
double dielectric_cylinder_amplitude(int n, double p, double R, const MaterialModel& m,
                                     Polarization pol);  // always throws

}  // namespace casimir
