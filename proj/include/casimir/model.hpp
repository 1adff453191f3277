#pragma once

// Core data model: materials and medium on the imaginary frequency axis,
// frequency grids, polarizability tensors, geometry descriptors, and the
// result record shared by all solvers.
//
// Units: hbar = c = 1 throughout; every length is in one user-chosen unit
// and every energy is the documented dimensionless combination for its
// geometry (e.g. E/(hbar c L) in units of 1/length^2 for the per-length
// geometries).

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

// ---------------------------------------------------------------------------
// materials

struct PerfectConductor {};

struct ConstantMaterial {
    double eps = 1.0;  // epsilon(i kappa), kappa-independent
    double mu = 1.0;
};

struct TabulatedMaterial {
    // strictly increasing kappa samples; eps, mu > 0. Interpolation is
    // monotone cubic (Fritsch-Carlson) in ln kappa. Queries outside the
    // table throw unless allow_extrapolation is set, in which case the
    // boundary value is held constant.
    std::vector<double> kappa, eps, mu;
    bool allow_extrapolation = false;
};

using MaterialModel = std::variant<PerfectConductor, ConstantMaterial, TabulatedMaterial>;

struct EpsMu {
    double eps = 1.0;
    double mu = 1.0;
};

bool is_perfect_conductor(const MaterialModel& m);

// Response at imaginary frequency kappa > 0. Perfect conductor has no
// finite (eps, mu); callers must branch on is_perfect_conductor first.
EpsMu eval_material(const MaterialModel& m, double kappa);

// Two-or-three column text table `kappa eps [mu]`, '#' comments; mu
// defaults to 1 when the third column is absent.
TabulatedMaterial load_material_table(const std::string& path);

// Validates invariants (positivity, monotone kappa); throws std::invalid_argument.
void validate_material(const MaterialModel& m);

struct Medium {
    MaterialModel eps_model = ConstantMaterial{1.0, 1.0};
    bool is_vacuum() const;
    EpsMu eval(double kappa) const;
    double refractive_index(double kappa) const;  // n_M = sqrt(eps_M mu_M)
    static Medium vacuum() { return Medium{}; }
    static Medium constant(double eps, double mu = 1.0) { return Medium{ConstantMaterial{eps, mu}}; }
};

// ---------------------------------------------------------------------------
// frequency handling

struct ZeroTemperature {
    // quadrature nodes/weights on kappa in (0, inf); filled by the engine
    std::vector<double> nodes, weights;
};

struct Matsubara {
    double temperature = 0.0;  // kT/(hbar c), units 1/length
    int count = 0;             // terms actually used (0 = adaptive)
};

using FrequencyGrid = std::variant<ZeroTemperature, Matsubara>;

// Matsubara wavenumber kappa_n = 2 pi n kT/(hbar c); weight of n = 0 is 1/2.
double matsubara_kappa(int n, double temperature);

// ---------------------------------------------------------------------------
// results

struct EnergyResult {
    double value = 0.0;            // dimensionless energy, geometry-documented
    int truncation_order = 0;
    double quadrature_error = 0.0;
    double truncation_error = 0.0;
};

// ---------------------------------------------------------------------------
// geometry descriptors

struct TwoCylinders {
    double R;  // common radius
    double d;  // center-to-center separation, d > 2R
};

struct CylinderPlate {
    double R;  // cylinder radius
    double H;  // center-to-plate distance, H > R
};

struct ParabolaPlate {
    double R;      // tip curvature radius, >= 0 (0 = knife edge)
    double d;      // focus-to-plate distance
    double theta;  // inclination, [0, pi/2)
    double H() const { return d - 0.5 * R; }  // tip-to-plate separation
};

using GeometryDescriptor = std::variant<TwoCylinders, CylinderPlate, ParabolaPlate>;

// throws std::invalid_argument when a separation precondition is violated
void validate_geometry(const GeometryDescriptor& g);

// ---------------------------------------------------------------------------
// static polarizability

struct PolarizabilityTensor {
    Eigen::Matrix3d electric = Eigen::Matrix3d::Zero();  // units length^3
    Eigen::Matrix3d magnetic = Eigen::Matrix3d::Zero();

    PolarizabilityTensor rotated(const Eigen::Matrix3d& rot) const {
        return {rot * electric * rot.transpose(), rot * magnetic * rot.transpose()};
    }
};

// Depolarizing factors (n1 = n2, n3) of a spheroid with equatorial radius R
// and axial length L. Prolate (L > 2R) uses the real log form, oblate the
// arctan continuation; n1 + n2 + n3 = 1.
void depolarizing_factors(double R, double L, double* n12, double* n3);

// Static dipole response of a spheroid, diagonal in its principal frame
// (z = symmetry axis): alpha_ii = (V/4pi)(eps-1)/(1+(eps-1) n_i) and the
// analogous magnetic entries. Pass PerfectConductor{} for the ideal-metal
// limits alpha = (V/4pi)/n_i, beta = -(V/4pi)/(1-n_i).
PolarizabilityTensor spheroid_polarizability(double R, double L, const MaterialModel& m);

}  // namespace casimir
