#pragma once

// Special-function kernel: modified Bessel functions of integer order with
// derivatives, and the real-valued combinations of Weber parabolic cylinder
// functions D_nu needed by the parabolic-cylinder scattering amplitudes.
//
// All routines are pure functions of their arguments and thread-safe.

#include <stdexcept>
#include <vector>

namespace casimir::specfun {

struct ValueAndDerivative {
    double value = 0.0;
    double derivative = 0.0;
    bool underflow = false;   // value flushed to zero (large-x K only)
};

// I_n(x) and I'_n(x). Relative accuracy <= 1e-12 for x in [1e-6, 700],
// n in 0..200 (usable well beyond both). Throws std::domain_error for
// x <= 0 or n < 0, std::overflow_error once e^x overflows a double.
ValueAndDerivative bessel_i(int n, double x);

// K_n(x) and K'_n(x). Same contract; for large x the result may underflow
// to zero, in which case the underflow flag is set instead of throwing.
ValueAndDerivative bessel_k(int n, double x);

// log I_n(x) and log|K_n(x)| for n = 0..n_max at fixed x, computed with
// mantissa/exponent scaling so no order/argument combination over- or
// underflows. I_n > 0 and K_n > 0 throughout, so logs determine the values.
// This is the kernel the round-trip assembly uses: elements combine as
// exp(log-sums), which keeps products like I_n(x)K_n(y) representable even
// when the factors are not.
struct BesselLogs {
    std::vector<double> log_i;   // index n = 0..n_max
    std::vector<double> log_k;
};
BesselLogs bessel_ik_log(int n_max, double x);

// log K_n(x) only (upward recurrence), n = 0..n_max.
std::vector<double> bessel_k_log(int n_max, double x);

// Scaled complementary error function e^{x^2} erfc(x), x >= 0.
double erfcx(double x);

// --- Weber parabolic cylinder machinery -----------------------------------
//
// Everything is kept real. With D_nu(z) = e^{-z^2/4} He_nu(z) one has
//   i^nu D_nu(iu) = (-1)^nu e^{u^2/4} P_nu(u),
// where P_{nu+1} = u P_nu + nu P_{nu-1}, P_0 = 1, P_1 = u (all-positive
// upward recurrence). The negative-order family enters through
//   W_k(u) = e^{u^2/4} D_{-k}(u),  k >= 0,  W_0 = 1,
//   W_1 = sqrt(pi/2) erfcx(u/sqrt(2)),
// computed by seeding the two top orders from the integral representation
//   W_k = (1/Gamma(k)) \int_0^inf t^{k-1} e^{-ut-t^2/2} dt
// and recursing upward (W_{k-1} = u W_k + k W_{k+1}), the direction in
// which D_{-k} is the dominant solution. The exact anchors W_0, W_1 give a
// built-in accuracy check for every call.

// log P_nu(u) for nu = 0..nu_max; -HUGE_VAL where P_nu(u) = 0 (odd nu at u=0).
std::vector<double> pcf_log_p(int nu_max, double u);

// log W_k(u) for k = 0..k_max.
std::vector<double> pcf_log_w(int k_max, double u);

// f_{kz nu E} without the channel deltas: the real number
// i^nu D_nu(iu) / D_{-nu-1}(u). Sets *precision_loss if the internal anchor
// check degrades past 1e-8 relative (it does not at any tested u <= 30).
double pcf_ratio_e(int nu, double u, bool* precision_loss = nullptr);

// i^{nu+1} D'_nu(iu) / D'_{-nu-1}(u) (the M-polarization ratio).
double pcf_ratio_m(int nu, double u, bool* precision_loss = nullptr);

// Scaled amplitude family for the round-trip assembly:
//   ghat^P_nu = f_{kz nu P} / nu!
// returned as log magnitude and sign for nu = 0..nu_max. The 1/nu! factor
// is the diagonal similarity that makes the translation side factorial-free.
struct PcfAmplitudes {
    std::vector<double> log_e, log_m;   // log |ghat|, -HUGE_VAL where zero
    std::vector<double> sign_e, sign_m; // -1, 0, +1
};
PcfAmplitudes pcf_amplitudes(int nu_max, double u);

}  // namespace casimir::specfun
