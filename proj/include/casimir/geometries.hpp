#pragma once

// Full-numerics solvers for the three implemented geometries, assembling
// scattering amplitudes + translation matrices into round-trip blocks and
// driving the engine's quadrature and truncation machinery.
//
// Energies are returned per unit length in hbar = c = 1 units, i.e.
// E/(hbar c L) with dimension 1/length^2.

#include <optional>

#include "casimir/engine.hpp"
#include "casimir/model.hpp"
#include "casimir/scattering.hpp"

namespace casimir {

enum class Channel { E, M, Total };

struct SolveOptions {
    double trunc_tol = 1e-6;          // relative tolerance in truncation order
    QuadratureSpec quad;              // scale is auto-set from the geometry when 0
    Channel channel = Channel::Total;
    std::optional<Matsubara> temperature;  // engaged => free energy instead of E
    int n_start = 8;                  // first truncation order on the ladder
    int order_cap = 4096;
    MaterialModel plate = PerfectConductor{};  // cylinder-plate only
    Medium medium = Medium::vacuum();          // constant-index media only

    SolveOptions() { quad.scale = 0.0; }
};

// Two parallel perfect-mirror cylinders, common radius R, center separation
// d > 2R. N^P = delta - (F K F K) with F_n the channel amplitudes and
// K_{n+n'}(p d) the translation elements; E/(hbar c L) =
// (1/4pi) int p dp [ln det N^M + ln det N^E].
EnergyResult two_cylinders_energy(double R, double d, const SolveOptions& opts = {});

// Perfect-mirror or dielectric plate at center distance H > R from a
// perfect-mirror cylinder. The plate enters through its Fresnel
// coefficients; the conversion to/from the plane-wave basis treats each
// polarization as an independent scalar channel, which is exact for perfect
// mirrors and for k_z = 0 but neglects TE<->TM conversion for dielectric
// plates at oblique incidence (the exact conversion matrix is not printed
// in the source material).
EnergyResult cylinder_plate_energy(double R, double H, const SolveOptions& opts = {});

// Parabolic cylinder (tip radius R >= 0, R = 0 the knife edge) above a
// perfect-mirror plate; d = focus-plate distance, theta = inclination in
// [0, pi/2). The determinant runs over parabolic channels nu; the inner
// k_x integral is evaluated in the cosh-substituted form with the channel
// phases paired analytically, so the whole pipeline is real.
EnergyResult parabola_plate_energy(double R, double d, double theta,
                                   const SolveOptions& opts = {});

// -dE/d(separation) by Richardson-improved central differences (5-point,
// step 1e-3 * separation). Negative = attractive.
double force(const GeometryDescriptor& geometry, const SolveOptions& opts = {});

// Single-order integrand evaluations (fixed truncation, no ladder), used by
// the convergence machinery and the tests.
double two_cylinders_logdet_sum(double R, double d, double p, int n_max, Channel ch);
double cylinder_plate_logdet_sum(double R, double H, double p, int n_max, Channel ch,
                                 const MaterialModel& plate, double kappa_over_p);
double parabola_plate_logdet_sum(double R, double d, double theta, double q, int nu_max,
                                 Channel ch, int n_chi = 0);

}  // namespace casimir
