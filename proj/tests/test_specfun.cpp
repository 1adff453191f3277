#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "casimir/specfun.hpp"

using namespace casimir::specfun;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}

TEST_CASE("bessel_i spot values") {
    // series oracle for I_0(1): sum (x/2)^{2k}/(k!)^2, frozen at machine precision
    CHECK(rel(bessel_i(0, 1.0).value, 1.2660658777520083) < 1e-13);
    CHECK(rel(bessel_i(1, 1.0).value, 0.56515910399248503) < 1e-12);
    CHECK(rel(bessel_i(0, 10.0).value, 2815.7166284662545) < 1e-13);
    CHECK(rel(bessel_i(3, 7.7).value, 174.13077130105133) < 1e-13);
    CHECK(rel(bessel_i(0, 17.5).value, 3825965.2494124128) < 1e-13);
    CHECK(rel(bessel_i(2, 500.0).value, 2.4948002629213737e+215) < 1e-12);
    // leading small-argument term: I_5(x) ~ (x/2)^5/5!
    const double x = 1e-6;
    CHECK(rel(bessel_i(5, x).value, std::pow(x / 2, 5) / 120.0) < 1e-10);
}

TEST_CASE("bessel_k spot values") {
    // integral-representation oracle value, frozen
    CHECK(rel(bessel_k(0, 1.0).value, 0.42102443824070833) < 1e-13);
    CHECK(rel(bessel_k(1, 1.0).value, 0.60190723019723457) < 1e-13);
    CHECK(rel(bessel_k(0, 2.5).value, 0.062347553200366186) < 1e-13);
    CHECK(rel(bessel_k(1, 2.5).value, 0.073890816347747064) < 1e-13);
    CHECK(rel(bessel_k(0, 10.0).value, 1.7780062316167652e-5) < 1e-13);
    CHECK(rel(bessel_k(3, 7.7).value, 0.00034764599559023645) < 1e-13);
    CHECK(rel(bessel_k(2, 500.0).value, 4.0083068568719769e-219) < 1e-12);
    // underflow flagged, not fatal
    auto far = bessel_k(3, 800.0);
    CHECK(far.value == 0.0);
    CHECK(far.underflow);
}

TEST_CASE("bessel domain and overflow errors") {
    CHECK_THROWS_AS(bessel_i(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(0, 1000.0), std::overflow_error);
    CHECK_NOTHROW(bessel_ik_log(10, 1000.0));  // log form has no overflow
}

TEST_CASE("Wronskian I_n K'_n - I'_n K_n = -1/x on a log grid") {
    // (restricted to pairs where both factors are representable in a double;
    // the log-space Wronskian below covers the rest)
    for (int n : {0, 1, 2, 5, 13, 40, 100, 200}) {
        for (double x : {1e-4, 1e-2, 0.5, 1.0, 3.7, 12.0, 55.0, 340.0, 690.0}) {
            try {
                auto i = bessel_i(n, x);
                auto k = bessel_k(n, x);
                if (k.underflow || i.underflow) continue;
                const double w = i.value * k.derivative - i.derivative * k.value;
                CHECK(std::abs(w + 1.0 / x) * x < 1e-11);
            } catch (const std::overflow_error&) {
                continue;
            }
        }
    }
}

TEST_CASE("Wronskian in log space covers extreme order/argument pairs") {
    // I_n K_{n+1} + I_{n+1} K_n = 1/x, all terms positive: evaluable from logs
    for (int n : {0, 3, 60, 200}) {
        for (double x : {1e-6, 1e-3, 0.2, 7.0, 100.0, 700.0}) {
            auto logs = bessel_ik_log(n + 1, x);
            const double a = logs.log_i[n] + logs.log_k[n + 1];
            const double b = logs.log_i[n + 1] + logs.log_k[n];
            const double hi = std::max(a, b);
            const double w = std::exp(hi) * (std::exp(a - hi) + std::exp(b - hi));
            CHECK(std::abs(w - 1.0 / x) * x < 1e-11);
        }
    }
}

TEST_CASE("three-term recurrences hold to 1e-11") {
    for (int n : {1, 2, 7, 30, 120}) {
        for (double x : {0.03, 0.9, 4.2, 21.0, 180.0}) {
            auto logs = bessel_ik_log(n + 1, x);
            const double im = std::exp(logs.log_i[n - 1] - logs.log_i[n]);
            const double ip = std::exp(logs.log_i[n + 1] - logs.log_i[n]);
            CHECK(std::abs(im - ip - 2.0 * n / x) / (2.0 * n / x + 1.0) < 1e-11);
            const double km = std::exp(logs.log_k[n - 1] - logs.log_k[n]);
            const double kp = std::exp(logs.log_k[n + 1] - logs.log_k[n]);
            CHECK(std::abs(kp - km - 2.0 * n / x) / (2.0 * n / x + 1.0) < 1e-11);
        }
    }
}

TEST_CASE("derivative identity I_{n-1} + I_{n+1} = 2 I'_n") {
    for (int n : {1, 3, 10, 60}) {
        for (double x : {0.2, 2.0, 30.0}) {
            auto logs = bessel_ik_log(n + 1, x);
            const double lhs = std::exp(logs.log_i[n - 1]) + std::exp(logs.log_i[n + 1]);
            if (lhs == 0.0) continue;
            CHECK(rel(lhs, 2.0 * bessel_i(n, x).derivative) < 1e-12);
        }
    }
}

TEST_CASE("determinism: identical inputs give bit-identical outputs") {
    auto a = bessel_i(17, 33.3);
    auto b = bessel_i(17, 33.3);
    CHECK(a.value == b.value);
    CHECK(a.derivative == b.derivative);
    CHECK(pcf_ratio_e(12, 3.25) == pcf_ratio_e(12, 3.25));
}

TEST_CASE("pcf_ratio_e spot values") {
    // Gamma special value at u = 0: i^nu D_nu(0)/D_{-nu-1}(0), frozen via mpmath
    CHECK(rel(pcf_ratio_e(0, 0.0), std::sqrt(2.0 / M_PI)) < 1e-13);
    // closed forms D_0(iu) = e^{u^2/4}, D_{-1}(u) = e^{u^2/4} sqrt(pi/2) erfc(u/sqrt2)
    CHECK(rel(pcf_ratio_e(0, 1.0), 2.5145229705017238) < 1e-12);
    const double u = 0.7;
    const double direct = 1.0 / (std::sqrt(M_PI / 2.0) * std::erfc(u / std::sqrt(2.0)));
    CHECK(rel(pcf_ratio_e(0, u), direct) < 1e-12);
    // quadrature-oracle value, frozen
    CHECK(rel(pcf_ratio_e(4, 0.5), 90.3441067888056) < 1e-12);
    // odd nu vanish at u = 0
    CHECK(pcf_ratio_e(3, 0.0) == 0.0);
}

TEST_CASE("pcf_ratio_m spot values") {
    // (1, 0): D'_1(0) = 1, D'_{-2}(0) = -D_{-1}(0) = -sqrt(pi/2)
    // i^2 D'_1(0)/D'_{-2}(0) = (-1)(1)/(-sqrt(pi/2)) = sqrt(2/pi)
    CHECK(rel(pcf_ratio_m(1, 0.0), std::sqrt(2.0 / M_PI)) < 1e-13);
    CHECK(rel(pcf_ratio_m(3, 2.0), 5851.847967044781) < 1e-12);
    // (0, u->0+): numerator (u/2)e^{u^2/4} -> 0, denominator -> D'_{-1}(0) = -1
    CHECK(std::abs(pcf_ratio_m(0, 1e-8) + 0.5e-8) < 1e-16);
    CHECK(pcf_ratio_m(0, 0.0) == 0.0);
}

TEST_CASE("pcf_ratio_m matches centered finite difference of D") {
    // d/du of the scaled families reconstructed from the W chain:
    // e^{u^2/4} D'_{-k}(u) = (u/2) W_k - W_{k-1}; check against FD of W_k e^{-u^2/4}
    const int k = 6;
    const double u = 1.3, h = 1e-5;
    auto w = [&](double uu) { return std::exp(pcf_log_w(k, uu)[k] - uu * uu / 4.0); };
    const double fd = (w(u + h) - w(u - h)) / (2.0 * h);
    const double lw = pcf_log_w(k, u)[k];
    const double lwm = pcf_log_w(k, u)[k - 1];
    const double analytic = (0.5 * u * std::exp(lw) - std::exp(lwm)) * std::exp(-u * u / 4.0);
    CHECK(rel(fd, analytic) < 1e-6);
}

TEST_CASE("parabolic cylinder recurrence along both families") {
    // D_{nu+1}(z) - z D_nu(z) + nu D_{nu-1}(z) = 0
    // rotated family via P: P_{nu+1} = u P_nu + nu P_{nu-1} by construction;
    // real family via W: W_{k-1} = u W_k + k W_{k+1} must hold after the chain.
    for (double u : {0.0, 0.3, 2.0, 9.0, 22.0}) {
        auto lw = pcf_log_w(40, u);
        for (int k : {2, 7, 20, 39}) {
            const double lhs = std::exp(lw[k - 1] - lw[k]);
            const double rhs = u + k * std::exp(lw[k + 1] - lw[k]);
            CHECK(rel(lhs, rhs) < 1e-11);
        }
        // anchor: u W_1 + W_2 = W_0 = 1
        CHECK(std::abs(u * std::exp(lw[1]) + std::exp(lw[2]) - 1.0) < 1e-11);
    }
}

TEST_CASE("pcf ratios finite and sign-definite for u in [0,20], nu <= 60") {
    for (double u : {0.01, 0.5, 2.0, 8.0, 20.0}) {
        bool loss = false;
        for (int nu = 0; nu <= 60; ++nu) {
            const double fe = pcf_ratio_e(nu, u, &loss);
            const double fm = pcf_ratio_m(nu, u, &loss);
            CHECK(std::isfinite(fe));
            CHECK(std::isfinite(fm));
            CHECK(!loss);
            // sign pattern (-1)^nu for E, -(-1)^nu for M at u > 0
            CHECK(fe * ((nu % 2 == 0) ? 1.0 : -1.0) > 0.0);
            CHECK(fm * ((nu % 2 == 0) ? -1.0 : 1.0) > 0.0);
        }
    }
}

TEST_CASE("pcf_amplitudes consistency with the plain ratios") {
    const double u = 1.7;
    auto amp = pcf_amplitudes(30, u);
    for (int nu : {0, 1, 2, 11, 30}) {
        const double ge = amp.sign_e[nu] * std::exp(amp.log_e[nu] + std::lgamma(nu + 1.0));
        CHECK(rel(ge, pcf_ratio_e(nu, u)) < 1e-12);
        const double gm = amp.sign_m[nu] * std::exp(amp.log_m[nu] + std::lgamma(nu + 1.0));
        CHECK(rel(gm, pcf_ratio_m(nu, u)) < 1e-12);
    }
    // knife-edge limit: ghat = sqrt(2/pi) on the allowed parity
    auto a0 = pcf_amplitudes(8, 0.0);
    for (int nu = 0; nu <= 8; ++nu) {
        if (nu % 2 == 0) {
            CHECK(rel(a0.sign_e[nu] * std::exp(a0.log_e[nu]), std::sqrt(2.0 / M_PI)) < 1e-12);
            CHECK(a0.sign_m[nu] == 0.0);
        } else {
            CHECK(rel(a0.sign_m[nu] * std::exp(a0.log_m[nu]), std::sqrt(2.0 / M_PI)) < 1e-12);
            CHECK(a0.sign_e[nu] == 0.0);
        }
    }
}

TEST_CASE("erfcx spot values on both branches") {
    CHECK(rel(erfcx(1.3), 0.35764266908609032) < 1e-13);
    CHECK(rel(erfcx(5.9), 0.094307136148327026) < 1e-13);
    CHECK(rel(erfcx(6.1), 0.091294300368683835) < 1e-13);
    CHECK(rel(erfcx(20.0 / std::sqrt(2.0)), 0.039795231296654062) < 1e-13);
}
