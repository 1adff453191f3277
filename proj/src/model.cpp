#include "casimir/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace casimir {

namespace {

// Fritsch-Carlson monotone cubic interpolation on (x, y) with x increasing.
double monotone_cubic(const std::vector<double>& x, const std::vector<double>& y, double xq) {
    const size_t n = x.size();
    if (n == 1) return y[0];
    // tangents
    std::vector<double> h(n - 1), delta(n - 1), m(n);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
        } else {
            const double a = m[i] / delta[i], b = m[i + 1] / delta[i];
            const double s = a * a + b * b;
            if (s > 9.0) {
                const double t = 3.0 / std::sqrt(s);
                m[i] = t * a * delta[i];
                m[i + 1] = t * b * delta[i];
            }
        }
    }
    // locate interval
    size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        (x[mid] <= xq ? lo : hi) = mid;
    }
    const double t = (xq - x[lo]) / h[lo];
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y[lo] + h10 * h[lo] * m[lo] + h01 * y[lo + 1] + h11 * h[lo] * m[lo + 1];
}

}  // namespace

bool is_perfect_conductor(const MaterialModel& m) {
    return std::holds_alternative<PerfectConductor>(m);
}

void validate_material(const MaterialModel& m) {
    if (auto* c = std::get_if<ConstantMaterial>(&m)) {
        if (!(c->eps >= 0.0)) throw std::invalid_argument("material: eps must be >= 0");
        if (!(c->mu > 0.0)) throw std::invalid_argument("material: mu must be > 0");
        return;
    }
    if (auto* t = std::get_if<TabulatedMaterial>(&m)) {
        if (t->kappa.empty() || t->kappa.size() != t->eps.size() || t->kappa.size() != t->mu.size())
            throw std::invalid_argument("material table: column size mismatch");
        for (size_t i = 0; i < t->kappa.size(); ++i) {
            if (!(t->kappa[i] > 0.0)) throw std::invalid_argument("material table: kappa must be > 0");
            if (i > 0 && !(t->kappa[i] > t->kappa[i - 1]))
                throw std::invalid_argument("material table: kappa must be strictly increasing");
            if (!(t->eps[i] > 0.0) || !(t->mu[i] > 0.0))
                throw std::invalid_argument("material table: eps, mu must be > 0");
        }
    }
}

EpsMu eval_material(const MaterialModel& m, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("eval_material: kappa must be > 0");
    if (is_perfect_conductor(m))
        throw std::invalid_argument("eval_material: perfect conductor has no finite response");
    if (auto* c = std::get_if<ConstantMaterial>(&m)) return {c->eps, c->mu};
    const auto& t = std::get<TabulatedMaterial>(m);
    if (kappa < t.kappa.front() || kappa > t.kappa.back()) {
        if (!t.allow_extrapolation)
            throw std::out_of_range("eval_material: kappa outside table (set allow_extrapolation)");
        return kappa < t.kappa.front() ? EpsMu{t.eps.front(), t.mu.front()}
                                       : EpsMu{t.eps.back(), t.mu.back()};
    }
    std::vector<double> lx(t.kappa.size());
    for (size_t i = 0; i < lx.size(); ++i) lx[i] = std::log(t.kappa[i]);
    const double q = std::log(kappa);
    return {monotone_cubic(lx, t.eps, q), monotone_cubic(lx, t.mu, q)};
}

TabulatedMaterial load_material_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open material table: " + path);
    TabulatedMaterial t;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double k, e, mu;
        if (!(ss >> k >> e)) continue;
        if (!(ss >> mu)) mu = 1.0;
        t.kappa.push_back(k);
        t.eps.push_back(e);
        t.mu.push_back(mu);
    }
    validate_material(MaterialModel{t});
    return t;
}

bool Medium::is_vacuum() const {
    if (auto* c = std::get_if<ConstantMaterial>(&eps_model))
        return c->eps == 1.0 && c->mu == 1.0;
    return false;
}

EpsMu Medium::eval(double kappa) const { return eval_material(eps_model, kappa); }

double Medium::refractive_index(double kappa) const {
    const EpsMu em = eval(kappa);
    return std::sqrt(em.eps * em.mu);
}

double matsubara_kappa(int n, double temperature) {
    if (n < 0) throw std::invalid_argument("matsubara_kappa: n must be >= 0");
    return 2.0 * M_PI * n * temperature;
}

void validate_geometry(const GeometryDescriptor& g) {
    if (auto* c = std::get_if<TwoCylinders>(&g)) {
        if (!(c->R > 0.0)) throw std::invalid_argument("two cylinders: R must be > 0");
        if (!(c->d > 2.0 * c->R)) throw std::invalid_argument("two cylinders: need d > 2R");
    } else if (auto* cp = std::get_if<CylinderPlate>(&g)) {
        if (!(cp->R > 0.0)) throw std::invalid_argument("cylinder-plate: R must be > 0");
        if (!(cp->H > cp->R)) throw std::invalid_argument("cylinder-plate: need H > R");
    } else if (auto* pp = std::get_if<ParabolaPlate>(&g)) {
        if (!(pp->R >= 0.0)) throw std::invalid_argument("parabola-plate: R must be >= 0");
        if (!(pp->H() > 0.0)) throw std::invalid_argument("parabola-plate: need H = d - R/2 > 0");
        if (!(pp->theta >= 0.0 && pp->theta < M_PI / 2.0))
            throw std::invalid_argument("parabola-plate: need theta in [0, pi/2)");
    }
}

void depolarizing_factors(double R, double L, double* n12, double* n3) {
    if (!(R > 0.0) || !(L > 0.0)) throw std::invalid_argument("depolarizing_factors: R, L must be > 0");
    const double ratio = 2.0 * R / L;
    const double e2 = 1.0 - ratio * ratio;
    double nz;
    if (std::abs(e2) < 1e-6) {
        // near-sphere expansion of both branches: n3 = 1/3 - 2 e^2/15 + ...
        nz = 1.0 / 3.0 - 2.0 * e2 / 15.0 + 3.0 * e2 * e2 / 35.0;
    } else if (e2 > 0.0) {
        const double e = std::sqrt(e2);  // prolate
        nz = (1.0 - e2) / (2.0 * e2 * e) * (std::log((1.0 + e) / (1.0 - e)) - 2.0 * e);
    } else {
        const double et = std::sqrt(-e2);  // oblate: analytic continuation, arctan form
        nz = (1.0 + et * et) / (et * et * et) * (et - std::atan(et));
    }
    *n3 = nz;
    *n12 = 0.5 * (1.0 - nz);
}

PolarizabilityTensor spheroid_polarizability(double R, double L, const MaterialModel& m) {
    double n12, n3;
    depolarizing_factors(R, L, &n12, &n3);
    const double V = (4.0 * M_PI / 3.0) * R * R * (L / 2.0);
    const double pre = V / (4.0 * M_PI);
    auto entry = [&](double resp, double ni) {
        return pre * (resp - 1.0) / (1.0 + (resp - 1.0) * ni);
    };
    PolarizabilityTensor out;
    double a12, a3, b12, b3;
    if (is_perfect_conductor(m)) {
        // eps -> inf, mu -> 0 limits
        a12 = pre / n12;
        a3 = pre / n3;
        b12 = -pre / (1.0 - n12);
        b3 = -pre / (1.0 - n3);
    } else {
        const EpsMu em = std::visit(
            [&](const auto& alt) -> EpsMu {
                using T = std::decay_t<decltype(alt)>;
                if constexpr (std::is_same_v<T, ConstantMaterial>) return {alt.eps, alt.mu};
                else throw std::invalid_argument("spheroid_polarizability: static (constant) response required");
            },
            m);
        a12 = entry(em.eps, n12);
        a3 = entry(em.eps, n3);
        b12 = entry(em.mu, n12);
        b3 = entry(em.mu, n3);
    }
    out.electric = Eigen::Vector3d(a12, a12, a3).asDiagonal();
    out.magnetic = Eigen::Vector3d(b12, b12, b3).asDiagonal();
    return out;
}

}  // namespace casimir
