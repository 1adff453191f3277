#pragma once

// Closed-form large-distance and proximity results: machine-precision
// functions that double as the oracle layer for the full solvers. All
// energies in hbar = c = 1 units with lengths as given; per-unit-length
// results are E/(hbar c L).

#include "casimir/model.hpp"
#include "casimir/scattering.hpp"

namespace casimir {
namespace asymptotics {

struct OrientationAngles {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double psi = 0.0;  // psi = psi1 - psi2
};

// Two parallel perfect-mirror cylinders at d >> R, per unit length:
//   E-mode: -(1/d^2) [8 pi ln^2(d/R)]^{-1} (1 - 2/ln(d/R))
//   M-mode: -(7/5pi) R^4/d^6
double cyl_pair_asym(double R, double d, Polarization pol);

// Perfect-mirror cylinder parallel to a perfect-mirror plate at H >> R:
//   E: -(1/H^2)/(16 pi ln(H/R)),  M: -(5/32pi) R^2/H^4
double cyl_plate_asym(double R, double H, Polarization pol);

enum class DielectricCylPlate {
    DielectricCylDielectricPlate,  // mu_cyl = 1, arbitrary static plate response
    DielectricCylPerfectPlate,
    PerfectCylDielectricPlate,
};

struct DielectricCylPlateParams {
    double R = 1.0, H = 10.0;
    double eps_cyl = 2.0, mu_cyl = 1.0;   // static (zero-frequency) values
    double eps_plate = 2.0, mu_plate = 1.0;
};

double dielectric_cyl_plate_asym(DielectricCylPlate variant, const DielectricCylPlateParams& p);

// phi^E = int_0^1 dx/(1+x) [r^E(0,x) - x r^M(0,x)] at the plate's static
// response (perfect-plate limit: 1).
double phi_e(double eps_plate0, double mu_plate0);
double phi_e(const MaterialModel& plate);

// Full anisotropic retarded dipole (Casimir-Polder) interaction at
// separation d along z, including both (alpha -> beta) and (1 <-> 2)
// completions.
double cp_two_objects(const PolarizabilityTensor& obj1, const PolarizabilityTensor& obj2,
                      double d);

// Axial polarizabilities relative to a wall normal along z.
struct AxialPolarizability {
    double alpha_z = 0.0, alpha_par = 0.0;
    double beta_z = 0.0, beta_par = 0.0;
};

// Two identical compact objects at distance d parallel to a perfectly
// reflecting wall at height H: E_{2,|} + E_{2,\} + E_3 exactly per the
// printed dipole formulas; large_h switches to the H^{-4}/H^{-6} truncation.
double cp_with_wall(const AxialPolarizability& pol, double d, double H, bool large_h = false);

// the three pieces, exposed for testing
double cp_pair_axial(const AxialPolarizability& pol, double d);              // E_{2,|}
double cp_pair_diagonal(const AxialPolarizability& pol, double D, double d); // E_{2,\}
double cp_three_body(const AxialPolarizability& pol, double D, double d);    // E_3

enum class SphereWallRegime { LargeH, SmallH };

// Quoted truncations of the f_6, f_8 coefficient functions of the
// sphere-sphere-wall force expansion; h = H/d.
double sphere_wall_f(int j, SphereWallRegime regime, double h);

// Two identical perfect-mirror prolate spheroids ("needles"), length L,
// radius R << L, center distance d: the L^6 bracket; at the degenerate
// orientations (theta1 = pi/2 with theta2 = 0 or psi = pi/2) the L^4 R^2
// form is returned instead.
double prolate_pair_energy(const OrientationAngles& angles, double L, double R, double d);

// Two identical perfect-mirror oblate spheroids ("pancakes"), radius R,
// center distance d: the R^6 bracket with its five angular terms.
double oblate_pair_energy(const OrientationAngles& angles, double R, double d);

// Compact object at distance d from a perfectly reflecting wall:
// -(1/8 pi d^4) tr(alpha - beta); with distortion delta != 0 adds the
// orientation-dependent -(1607/(640 sqrt5 pi^{3/2})) delta R^4/d^6 cos(2 theta).
double object_wall_energy(const PolarizabilityTensor& pol, double d, double distortion_delta = 0.0,
                          double distortion_R = 0.0, double theta = 0.0);

enum class PfaKind {
    Parabola,     // E_pfa/(hbar c L) = -pi^3/(960 sqrt2) sqrt(R/H^5);   params: R, H
    TwoSpheres,   // lim d^3 F = -(pi^3/360) rR/(r+R);                   params: r, R
    CylPair,      // |F_pfa| per length = (5/2)(pi^3/1920) sqrt(R/(d-2R)^7), attractive (< 0)
    Theta1PfaR,   // theta_1^{PFA,r}(x) = -(x + x/(1+x) + 3)
    Theta1PfaBig, // theta_1^{PFA,R}(x) = -(3x + x/(1+x) + 1)
    Theta1Fit,    // -(k1 x + k2 x/(1+x) + k3), k = (1.05, 1.08, 1.38)
};

struct PfaParams {
    double a = 0.0, b = 0.0;  // meaning per kind (documented above)
};

double pfa_suite(PfaKind kind, const PfaParams& p);

// PFA energies per unit length used to normalize the full numerics.
double cyl_pair_pfa_energy(double R, double d);    // -(pi^3/1920) sqrt(R/(d-2R)^5)
double cyl_plate_pfa_energy(double R, double H);   // -(pi^3/1920) sqrt(2R/(H-R)^5)

}  // namespace asymptotics
}  // namespace casimir
