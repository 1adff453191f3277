#include "casimir/scattering.hpp"

#include <cmath>

#include "casimir/specfun.hpp"

namespace casimir {

double cylinder_amplitude(int n, double p, double R, Polarization pol) {
    if (!(p > 0.0) || !(R > 0.0))
        throw std::invalid_argument("cylinder_amplitude: p, R must be > 0");
    const int na = std::abs(n);  // I_{-n} = I_n, K_{-n} = K_n for integer n
    const double x = p * R;
    const auto i = specfun::bessel_i(na, x);
    const auto k = specfun::bessel_k(na, x);
    return pol == Polarization::E ? -i.value / k.value : -i.derivative / k.derivative;
}

CylinderAmplitudeLogs cylinder_amplitude_logs(int n_max, double x) {
    const auto logs = specfun::bessel_ik_log(n_max + 1, x);
    CylinderAmplitudeLogs out;
    out.log_e.resize(static_cast<size_t>(n_max) + 1);
    out.log_m.resize(static_cast<size_t>(n_max) + 1);
    auto logsum2 = [](double a, double b) {
        const double hi = std::max(a, b);
        return hi + std::log(std::exp(a - hi) + std::exp(b - hi)) - std::log(2.0);
    };
    for (int n = 0; n <= n_max; ++n) {
        const size_t i = static_cast<size_t>(n);
        out.log_e[i] = logs.log_i[i] - logs.log_k[i];
        const double log_ip = n == 0 ? logs.log_i[1] : logsum2(logs.log_i[i - 1], logs.log_i[i + 1]);
        const double log_kp = n == 0 ? logs.log_k[1] : logsum2(logs.log_k[i - 1], logs.log_k[i + 1]);
        out.log_m[i] = log_ip - log_kp;
    }
    return out;
}

double fresnel(Polarization pol, double kappa, double x, const MaterialModel& plate,
               const Medium& medium) {
    if (!(kappa > 0.0)) throw std::invalid_argument("fresnel: kappa must be > 0");
    if (!(x > 0.0 && x <= 1.0)) throw std::invalid_argument("fresnel: x must be in (0, 1]");
    if (is_perfect_conductor(plate)) return pol == Polarization::M ? -1.0 : 1.0;
    EpsMu em = eval_material(plate, kappa);
    if (!medium.is_vacuum()) {
        const EpsMu mm = medium.eval(kappa);
        em.eps /= mm.eps;
        em.mu /= mm.mu;
    }
    const double n2 = em.eps * em.mu;
    const double root = std::sqrt(1.0 + (n2 - 1.0) * x * x);
    const double a = pol == Polarization::M ? em.mu : em.eps;
    return (a - root) / (a + root);
}

double parabola_amplitude(int nu, double kappa, double kz, double R, Polarization pol,
                          bool* precision_loss) {
    if (!(kappa > 0.0)) throw std::invalid_argument("parabola_amplitude: kappa must be > 0");
    if (!(R >= 0.0)) throw std::invalid_argument("parabola_amplitude: R must be >= 0");
    const double mu0 = std::sqrt(2.0 * R * std::hypot(kappa, kz));
    return pol == Polarization::E ? specfun::pcf_ratio_e(nu, mu0, precision_loss)
                                  : specfun::pcf_ratio_m(nu, mu0, precision_loss);
}

double dielectric_cylinder_amplitude(int, double, double, const MaterialModel&, Polarization) {
    throw std::logic_error(
        "dielectric cylinder amplitude is not implemented: the continuity-condition "
        "solution lives in an external reference; only the closed-form large-distance "
        "results are available (see asymptotics)");
}

}  // namespace casimir
