#pragma once

// Generic machinery: Gauss-Legendre quadrature over (0, inf) with node
// doubling, log det(I - N), Matsubara sums, truncation-order convergence
// with geometric (Aitken) extrapolation, and a deterministic parallel map.

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

#include "casimir/model.hpp"

namespace casimir {

struct QuadratureSpec {
    enum class Transform { RationalStretch, Exponential };
    int nodes = 64;            // initial node count (doubled until converged)
    double scale = 1.0;        // stretch scale; set to 1/(surface separation)
    double rel_tol = 1e-7;     // convergence target between doublings
    int max_nodes = 4096;      // node cap
    Transform transform = Transform::RationalStretch;
};

struct SingularRoundTrip : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& what, double last, double previous)
        : std::runtime_error(what), last_estimate(last), previous_estimate(previous) {}
    double last_estimate, previous_estimate;
};

// Gauss-Legendre nodes/weights on [-1, 1]; cached per n, thread-safe.
void gauss_legendre(int n, std::vector<double>* x, std::vector<double>* w);

// Nodes/weights on kappa in (0, inf) under the chosen transform.
void infinite_nodes(const QuadratureSpec& spec, int n, std::vector<double>* kappa,
                    std::vector<double>* weight);

// log det(I - N) via pivoted LU. Exactly 0 for N = 0. Throws SingularRoundTrip
// when I - N is singular or the determinant is not positive (an assembled
// round trip at finite separation cannot reach either).
double logdet_i_minus(const Eigen::MatrixXd& N);

// (1/2pi) * integral_0^inf integrand(kappa) dkappa with node doubling.
// quadrature_error is the change under the final doubling.
EnergyResult integrate_zero_t(const std::function<double(double)>& integrand,
                              const QuadratureSpec& spec);

// temperature * [integrand(0+)/2 + sum_{n>=1} integrand(kappa_n)], the
// Matsubara free-energy sum with the zero mode half-weighted. The kappa = 0
// endpoint is evaluated at kappa_min = 1e-8 (in inverse length units).
// cutoff = 0 grows the sum adaptively until the tail is below rel_tol.
EnergyResult matsubara_sum(const std::function<double(double)>& integrand, double temperature,
                           int cutoff, double rel_tol = 1e-9);

// Runs solver(order) on an increasing ladder until the relative change is
// below tol, then Aitken-extrapolates the last three values assuming
// geometric convergence. step_factor controls ladder growth (order doubling
// by default); truncation_error reports the last observed change.
EnergyResult converge_truncation(const std::function<double(int)>& solver, int n_start, double tol,
                                 int order_cap = 4096, double step_factor = 2.0);

// Evaluates f(i) for i = 0..n-1 on min(CASIMIR_THREADS, hardware) workers and
// returns results indexed by i; summation by the caller in index order makes
// reductions bit-identical for any worker count.
std::vector<double> parallel_map(int n, const std::function<double(int)>& f);

int worker_count();

}  // namespace casimir
