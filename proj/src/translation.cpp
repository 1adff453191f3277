#include "casimir/translation.hpp"

#include <cmath>
#include <complex>

#include "casimir/specfun.hpp"

namespace casimir {

double cyl_translation(int n, int nprime, double p, double d) {
    if (!(p > 0.0) || !(d > 0.0))
        throw std::invalid_argument("cyl_translation: p, d must be > 0");
    return specfun::bessel_k(std::abs(n + nprime), p * d).value;
}

double plane_wave_propagator(double kperp, double kappa, double H) {
    if (!(H > 0.0)) throw std::invalid_argument("plane_wave_propagator: H must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("plane_wave_propagator: kappa must be > 0");
    return std::exp(-std::hypot(kperp, kappa) * H);
}

PlaneWaveCoupling parabola_plane_u(int nu, double kx, double kz, double kappa, double d,
                                   double theta) {
    if (nu < 0) throw std::invalid_argument("parabola_plane_u: nu must be >= 0");
    if (!(kappa > 0.0) || !(d > 0.0))
        throw std::invalid_argument("parabola_plane_u: kappa, d must be > 0");
    const double qperp = std::hypot(kappa, kz);
    const double Q = std::hypot(qperp, kx);            // k_y = i Q
    const double chi = std::asinh(kx / qperp);         // tan(phi) = kx/k_y, phi = -i chi
    // sqrt(i/(2 k_y nu! sqrt(2pi))) e^{i k_y d} = sqrt(1/(2 Q nu! sqrt(2pi))) e^{-Q d}
    // with nu! handled in log space
    const double logpre = -0.5 * (std::log(2.0 * Q) + std::lgamma(nu + 1.0) +
                                  0.5 * std::log(2.0 * M_PI)) - Q * d;
    const std::complex<double> half(0.5 * theta, -0.5 * chi);
    const std::complex<double> t = std::tan(half);
    const std::complex<double> val = std::pow(t, nu) / std::cos(half);
    // |t| < 1 for theta < pi/2, so pow underflows benignly at large nu
    const std::complex<double> u = val * std::exp(logpre);
    return {u.real(), u.imag()};
}

double cyl_to_plane(int n, double k, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("cyl_to_plane: p must be > 0");
    // e^{n u} with sinh(u) = k/p; kz-sign symmetric by construction
    return std::exp(n * std::asinh(k / p));
}

}  // namespace casimir
