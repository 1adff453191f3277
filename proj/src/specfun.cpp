#include "casimir/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace casimir::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kLn2 = 0.69314718055994530941723212;
const double kLogDblMax = std::log(std::numeric_limits<double>::max());

// e^x sqrt(x) K0(x) as Chebyshev series in u = 1/x over [1/18, 1/2]
constexpr double k0_cheb[] = {
    2.43267764802159212,
    -0.0272738003350934661,
    0.00116632403427802996,
    -0.0000808016105747552411,
    7.35158755900578785e-6,
    -8.02211986227250622e-7,
    9.99532262194604894e-8,
    -1.37968598849877535e-8,
    2.06766104160908813e-9,
    -3.31663231817574188e-10,
    5.63451943043916136e-11,
    -1.00568398260641024e-11,
    1.87399269116881294e-12,
    -3.62723546943241799e-13,
    7.26253117792948801e-14,
    -1.49904261015297201e-14,
    3.1805382538228302e-15,
    -6.9196243930649031e-16,
    1.54043935464073617e-16,
    -3.50262742658232921e-17,
    8.12153258428501235e-18,
    -1.91764224521088642e-18,
};
// e^x sqrt(x) K1(x) as Chebyshev series in u = 1/x over [1/18, 1/2]
constexpr double k1_cheb[] = {
    2.74486257413237938,
    0.0911573452920089905,
    -0.00214635415532488933,
    0.00012405213951625396,
    -0.0000103085280501114558,
    1.06448128547050001e-6,
    -1.27754588443630781e-7,
    1.71600216330137508e-8,
    -2.51864969282905875e-9,
    3.97391475543954128e-10,
    -6.66105702090073776e-11,
    1.17569022549923372e-11,
    -2.17014047636077272e-12,
    4.16641645545700278e-13,
    -8.28326258663211674e-14,
    1.6991257156813665e-14,
    -3.58521691586920014e-15,
    7.76165858875680342e-16,
    -1.72023415914376096e-16,
    3.89573697741634373e-17,
    -8.99999754260774788e-18,
    2.11794982810988683e-18,
};

double cheb_eval(const double* c, int n, double t) {
    // Clenshaw, t in [-1, 1]; series convention f = c0/2 + sum c_j T_j.
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    for (int j = n - 1; j >= 0; --j) {
        b2 = b1;
        b1 = b0;
        b0 = 2.0 * t * b1 - b2 + c[j];
    }
    return 0.5 * (b0 - b2);
}

// I0, I1 by power series (x < 18; all-positive terms, no cancellation).
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double i1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return 0.5 * x * sum;
}

// Hankel asymptotic series for I_nu, K_nu at nu = 0, 1 (x >= 18; optimal
// truncation error ~ e^{-2x} <= e^{-36}).
double ik_asym_sum(int nu, double x, bool alternating) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        term *= alternating ? -f : f;
        if (std::abs(term) < 1e-18) break;
        sum += term;
        if (std::abs(term) > std::abs(sum)) break;  // past optimal truncation
    }
    return sum;
}

double log_i_small_order(int nu, double x) {
    // log I_nu(x) for nu in {0,1}, any x > 0.
    if (x < 18.0) return std::log(nu == 0 ? i0_series(x) : i1_series(x));
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(ik_asym_sum(nu, x, true));
}

// K0, K1 exact series for x <= 2 (A&S 9.6.10-13).
void k01_series(double x, double* k0, double* k1) {
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x);
    // K0 = -(log(x/2)+gamma) I0 + sum_{k>=1} q^k/(k!)^2 H_k
    double term = 1.0, sum0 = 0.0, hk = 0.0;
    for (int k = 1; k < 40; ++k) {
        term *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        sum0 += term * hk;
        if (term * hk < 1e-18 * (std::abs(sum0) + 1.0)) break;
    }
    *k0 = -(lg + kEulerGamma) * i0_series(x) + sum0;
    // K1 = 1/x + (log(x/2)+gamma-1/2 ...) via A&S 9.6.11 at n=1:
    // K1 = (1/x) + log(x/2) I1 - (x/4) sum_k [psi(k+1)+psi(k+2)] q^k/(k!(k+1)!)
    double psum = 0.0;
    term = 1.0;
    double psi1 = -kEulerGamma, psi2 = 1.0 - kEulerGamma;
    for (int k = 0; k < 40; ++k) {
        if (k > 0) {
            term *= q / (static_cast<double>(k) * (k + 1));
            psi1 += 1.0 / k;
            psi2 += 1.0 / (k + 1);
        }
        const double t = term * (psi1 + psi2);
        psum += t;
        if (std::abs(t) < 1e-18 * (std::abs(psum) + 1.0) && k > 2) break;
    }
    *k1 = 1.0 / x + lg * i1_series(x) - 0.25 * x * psum;
}

void log_k01(double x, double* logk0, double* logk1) {
    if (x <= 2.0) {
        double k0, k1;
        k01_series(x, &k0, &k1);
        *logk0 = std::log(k0);
        *logk1 = std::log(k1);
        return;
    }
    if (x < 18.0) {
        const double u = 1.0 / x;
        const double t = (2.0 * u - (1.0 / 18.0 + 0.5)) / (0.5 - 1.0 / 18.0);
        const double g0 = cheb_eval(k0_cheb, sizeof(k0_cheb) / sizeof(double), t);
        const double g1 = cheb_eval(k1_cheb, sizeof(k1_cheb) / sizeof(double), t);
        *logk0 = std::log(g0) - x - 0.5 * std::log(x);
        *logk1 = std::log(g1) - x - 0.5 * std::log(x);
        return;
    }
    const double pre = 0.5 * std::log(M_PI / (2.0 * x)) - x;
    *logk0 = pre + std::log(ik_asym_sum(0, x, false));
    *logk1 = pre + std::log(ik_asym_sum(1, x, false));
}

void check_domain(int n, double x) {
    if (n < 0) throw std::domain_error("bessel: order must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel: argument must be > 0");
}

}  // namespace

std::vector<double> bessel_k_log(int n_max, double x) {
    check_domain(n_max >= 0 ? n_max : 0, x);
    std::vector<double> lk(static_cast<size_t>(n_max) + 1);
    double lk0, lk1;
    log_k01(x, &lk0, &lk1);
    lk[0] = lk0;
    if (n_max >= 1) lk[1] = lk1;
    // Upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n, renormalized to stay
    // in range; K grows with n so the direction is stable.
    double km = 1.0, k = std::exp(lk1 - lk0);  // scaled by e^{-lk0-offset}
    double offset = lk0;
    for (int n = 1; n < n_max; ++n) {
        double kp = km + (2.0 * n / x) * k;
        km = k;
        k = kp;
        if (k > 1e270) {
            const double s = 1e-270;
            k *= s;
            km *= s;
            offset -= std::log(s);
        }
        lk[static_cast<size_t>(n) + 1] = std::log(k) + offset;
    }
    return lk;
}

BesselLogs bessel_ik_log(int n_max, double x) {
    check_domain(n_max >= 0 ? n_max : 0, x);
    BesselLogs out;
    out.log_k = bessel_k_log(n_max, x);
    out.log_i.assign(static_cast<size_t>(n_max) + 1, 0.0);
    // Miller downward recurrence for I: start well above n_max, recurse
    // I_{n-1} = I_{n+1} + (2n/x) I_n with renormalization, normalize by I_0.
    // Contamination decays like exp(-(start^2 - n_max^2)/x), so the start
    // index must grow with sqrt(x) as well as with the order.
    const int start = std::max(
        n_max + 20 + static_cast<int>(2.0 * std::sqrt(40.0 + static_cast<double>(n_max))),
        static_cast<int>(std::sqrt(static_cast<double>(n_max) * n_max + 42.0 * x)) + 16);
    double ip = 0.0, i = 1e-280, offset = 0.0;
    std::vector<double> raw(static_cast<size_t>(n_max) + 1);
    for (int n = start; n >= 1; --n) {
        double im = ip + (2.0 * n / x) * i;
        ip = i;
        i = im;
        if (i > 1e270) {
            const double s = 1e-270;
            i *= s;
            ip *= s;
            offset += std::log(1.0 / s);
        }
        if (n - 1 <= n_max) raw[static_cast<size_t>(n) - 1] = std::log(i) + offset;
    }
    const double shift = log_i_small_order(0, x) - raw[0];
    for (int n = 0; n <= n_max; ++n) out.log_i[static_cast<size_t>(n)] = raw[static_cast<size_t>(n)] + shift;
    return out;
}

ValueAndDerivative bessel_i(int n, double x) {
    check_domain(n, x);
    BesselLogs logs = bessel_ik_log(n + 1, x);
    const double li = logs.log_i[static_cast<size_t>(n)];
    if (li > kLogDblMax) throw std::overflow_error("bessel_i: result exceeds double range");
    ValueAndDerivative out;
    out.value = std::exp(li);
    if (out.value == 0.0) out.underflow = true;
    // I'_n = (I_{n-1} + I_{n+1})/2, I'_0 = I_1
    if (n == 0) {
        out.derivative = std::exp(logs.log_i[1]);
    } else {
        const double lm = logs.log_i[static_cast<size_t>(n) - 1];
        const double lp = logs.log_i[static_cast<size_t>(n) + 1];
        if (lm > kLogDblMax) throw std::overflow_error("bessel_i: derivative exceeds double range");
        out.derivative = 0.5 * (std::exp(lm) + std::exp(lp));
    }
    return out;
}

ValueAndDerivative bessel_k(int n, double x) {
    check_domain(n, x);
    std::vector<double> lk = bessel_k_log(n + 1, x);
    ValueAndDerivative out;
    const double lkn = lk[static_cast<size_t>(n)];
    if (lkn > kLogDblMax) throw std::overflow_error("bessel_k: result exceeds double range");
    out.value = std::exp(lkn);
    const double lm = lk[static_cast<size_t>(n == 0 ? 1 : n - 1)];
    const double lp = lk[static_cast<size_t>(n) + 1];
    out.derivative = n == 0 ? -std::exp(lk[1]) : -0.5 * (std::exp(lm) + std::exp(lp));
    if (out.value == 0.0) out.underflow = true;
    return out;
}

double erfcx(double x) {
    if (x < 0.0) throw std::domain_error("erfcx: x must be >= 0");
    if (x < 6.0) return std::exp(x * x) * std::erfc(x);
    // asymptotic: erfcx(x) ~ 1/(x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4) - ...)
    const double ix2 = 1.0 / (x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 20; ++k) {
        term *= -(2.0 * k - 1.0) * 0.5 * ix2;
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum / (x * std::sqrt(M_PI));
}

std::vector<double> pcf_log_p(int nu_max, double u) {
    if (nu_max < 0) throw std::domain_error("pcf_log_p: nu_max must be >= 0");
    if (u < 0.0) throw std::domain_error("pcf_log_p: u must be >= 0");
    std::vector<double> lp(static_cast<size_t>(nu_max) + 1, -HUGE_VAL);
    lp[0] = 0.0;
    if (nu_max >= 1 && u > 0.0) lp[1] = std::log(u);
    double pm = 1.0, p = u, offset = 0.0;
    for (int n = 1; n < nu_max; ++n) {
        double pp = u * p + n * pm;
        pm = p;
        p = pp;
        if (p > 1e270) {
            p *= 1e-270;
            pm *= 1e-270;
            offset += 270.0 * std::log(10.0);
        }
        if (p > 0.0) lp[static_cast<size_t>(n) + 1] = std::log(p) + offset;
    }
    return lp;
}

namespace {

// log W_k by Gauss-Legendre on the integral representation; used only to
// seed the top two orders of the upward chain.
double pcf_log_w_quad(int k, double u) {
    if (k == 0) return 0.0;
    if (k == 1) return std::log(std::sqrt(M_PI / 2.0) * erfcx(u / std::sqrt(2.0)));
    const double km1 = k - 1;
    const double tstar = 0.5 * (std::sqrt(u * u + 4.0 * km1) - u);
    const double sigma = 1.0 / std::sqrt(km1 / (tstar * tstar) + 1.0);
    const double lo = std::max(tstar - 14.0 * sigma, 0.0);
    // right tail decays like e^{-(u+t)t}: the Gaussian width alone is not
    // enough when u dominates
    const double hi = tstar + 14.0 * sigma + 40.0 / (u + tstar + 1.0);
    // 240-point composite GL (4 x 60) is ample for this bell-shaped integrand
    static const int kN = 60;
    static double gx[kN], gw[kN];
    static bool init = false;
    if (!init) {
        // Newton iteration on Legendre P_60
        for (int i = 0; i < kN; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (kN + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < kN; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                double dp = kN * (z * p0 - p1) / (z * z - 1.0);
                double z1 = z;
                z = z1 - p0 / dp;
                if (std::abs(z - z1) < 1e-15) break;
            }
            gx[i] = z;
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < kN; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            double dp = kN * (z * p0 - p1) / (z * z - 1.0);
            gw[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        init = true;
    }
    double lgmax = -HUGE_VAL;
    const int panels = 4;
    std::vector<double> lg(static_cast<size_t>(panels) * kN), wq(static_cast<size_t>(panels) * kN);
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double a = lo + (hi - lo) * pnl / panels;
        const double b = lo + (hi - lo) * (pnl + 1) / panels;
        for (int i = 0; i < kN; ++i) {
            const double t = 0.5 * (b - a) * gx[i] + 0.5 * (b + a);
            const size_t idx = static_cast<size_t>(pnl) * kN + i;
            lg[idx] = km1 * std::log(t) - u * t - 0.5 * t * t;
            wq[idx] = 0.5 * (b - a) * gw[i];
            lgmax = std::max(lgmax, lg[idx]);
        }
    }
    double s = 0.0;
    for (size_t i = 0; i < lg.size(); ++i) s += wq[i] * std::exp(lg[i] - lgmax);
    return lgmax + std::log(s) - std::lgamma(static_cast<double>(k));
}

}  // namespace

std::vector<double> pcf_log_w(int k_max, double u) {
    if (k_max < 0) throw std::domain_error("pcf_log_w: k_max must be >= 0");
    if (u < 0.0) throw std::domain_error("pcf_log_w: u must be >= 0");
    std::vector<double> lw(static_cast<size_t>(k_max) + 1, 0.0);
    if (k_max == 0) return lw;
    if (k_max == 1) {
        lw[1] = pcf_log_w_quad(1, u);
        return lw;
    }
    const double lw_top = pcf_log_w_quad(k_max, u);
    const double lw_top1 = pcf_log_w_quad(k_max + 1, u);
    lw[static_cast<size_t>(k_max)] = lw_top;
    double wnext = std::exp(lw_top1 - lw_top);  // scaled by e^{-lw_top-offset}
    double w = 1.0, offset = lw_top;
    for (int k = k_max; k >= 2; --k) {
        double wprev = u * w + k * wnext;
        wnext = w;
        w = wprev;
        if (w > 1e270) {
            w *= 1e-270;
            wnext *= 1e-270;
            offset += 270.0 * std::log(10.0);
        }
        lw[static_cast<size_t>(k) - 1] = std::log(w) + offset;
    }
    lw[0] = 0.0;  // exact anchor, W_0 = e^{u^2/4} D_0(u) = 1
    return lw;
}

namespace {

double chain_accuracy(const std::vector<double>& lw, double u) {
    // relative deviation of the recursed W_1 from the exact erfcx anchor
    const double exact = std::log(std::sqrt(M_PI / 2.0) * erfcx(u / std::sqrt(2.0)));
    return std::abs(lw.size() > 1 ? lw[1] - exact : 0.0);
}

}  // namespace

double pcf_ratio_e(int nu, double u, bool* precision_loss) {
    if (nu < 0) throw std::domain_error("pcf_ratio_e: nu must be >= 0");
    if (u < 0.0) throw std::domain_error("pcf_ratio_e: u must be >= 0");
    std::vector<double> lp = pcf_log_p(nu, u);
    std::vector<double> lw = pcf_log_w(nu + 1, u);
    if (precision_loss) *precision_loss = chain_accuracy(lw, u) > 1e-8;
    if (!std::isfinite(lp[static_cast<size_t>(nu)])) return 0.0;
    const double sign = (nu % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(0.5 * u * u + lp[static_cast<size_t>(nu)] - lw[static_cast<size_t>(nu) + 1]);
}

double pcf_ratio_m(int nu, double u, bool* precision_loss) {
    if (nu < 0) throw std::domain_error("pcf_ratio_m: nu must be >= 0");
    if (u < 0.0) throw std::domain_error("pcf_ratio_m: u must be >= 0");
    std::vector<double> lp = pcf_log_p(std::max(nu, 1), u);
    std::vector<double> lw = pcf_log_w(nu + 1, u);
    if (precision_loss) *precision_loss = chain_accuracy(lw, u) > 1e-8;
    // numerator i^{nu+1} D'_nu(iu) = (-1)^nu e^{u^2/4} [(u/2) P_nu + nu P_{nu-1}]
    double lognum = -HUGE_VAL;
    if (u > 0.0 && std::isfinite(lp[static_cast<size_t>(nu)]))
        lognum = std::log(0.5 * u) + lp[static_cast<size_t>(nu)];
    if (nu >= 1 && std::isfinite(lp[static_cast<size_t>(nu) - 1])) {
        const double other = std::log(static_cast<double>(nu)) + lp[static_cast<size_t>(nu) - 1];
        const double hi = std::max(lognum, other);
        lognum = hi + std::log(std::exp(lognum - hi) + std::exp(other - hi));
    }
    if (!std::isfinite(lognum)) return 0.0;
    // denominator e^{u^2/4} D'_{-nu-1}(u) = (u/2) W_{nu+1} - W_nu  (< 0)
    const double ratio = 0.5 * u * std::exp(lw[static_cast<size_t>(nu) + 1] - lw[static_cast<size_t>(nu)]) - 1.0;
    const double logden = lw[static_cast<size_t>(nu)] + std::log(-ratio);
    const double sign = (nu % 2 == 0) ? -1.0 : 1.0;  // (-1)^nu / (negative denominator)
    return sign * std::exp(0.5 * u * u + lognum - logden);
}

PcfAmplitudes pcf_amplitudes(int nu_max, double u) {
    PcfAmplitudes out;
    const size_t n = static_cast<size_t>(nu_max) + 1;
    out.log_e.assign(n, -HUGE_VAL);
    out.log_m.assign(n, -HUGE_VAL);
    out.sign_e.assign(n, 0.0);
    out.sign_m.assign(n, 0.0);
    std::vector<double> lp = pcf_log_p(std::max(nu_max, 1), u);
    std::vector<double> lw = pcf_log_w(nu_max + 1, u);
    for (int nu = 0; nu <= nu_max; ++nu) {
        const size_t i = static_cast<size_t>(nu);
        const double lgam = std::lgamma(nu + 1.0);
        if (std::isfinite(lp[i])) {
            out.log_e[i] = 0.5 * u * u + lp[i] - lgam - lw[i + 1];
            out.sign_e[i] = (nu % 2 == 0) ? 1.0 : -1.0;
        }
        double lognum = -HUGE_VAL;
        if (u > 0.0 && std::isfinite(lp[i])) lognum = std::log(0.5 * u) + lp[i];
        if (nu >= 1 && std::isfinite(lp[i - 1])) {
            const double other = std::log(static_cast<double>(nu)) + lp[i - 1];
            const double hi = std::max(lognum, other);
            lognum = hi + std::log(std::exp(lognum - hi) + std::exp(other - hi));
        }
        if (std::isfinite(lognum)) {
            const double ratio = 0.5 * u * std::exp(lw[i + 1] - lw[i]) - 1.0;
            out.log_m[i] = 0.5 * u * u + lognum - lgam - (lw[i] + std::log(-ratio));
            out.sign_m[i] = (nu % 2 == 0) ? -1.0 : 1.0;
        }
    }
    return out;
}

}  // namespace casimir::specfun
