#include "casimir/engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace casimir {

void gauss_legendre(int n, std::vector<double>* x, std::vector<double>* w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    static std::mutex mu;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) {
            *x = it->second.first;
            *w = it->second.second;
            return;
        }
    }
    std::vector<double> xs(n), ws(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        xs[i] = -z;
        xs[n - 1 - i] = z;
        ws[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        ws[n - 1 - i] = ws[i];
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(n, std::make_pair(xs, ws));
    }
    *x = xs;
    *w = ws;
}

void infinite_nodes(const QuadratureSpec& spec, int n, std::vector<double>* kappa,
                    std::vector<double>* weight) {
    std::vector<double> x, w;
    gauss_legendre(n, &x, &w);
    kappa->resize(n);
    weight->resize(n);
    const double s = spec.scale;
    for (int i = 0; i < n; ++i) {
        const double t = 0.5 * (x[i] + 1.0);
        const double wt = 0.5 * w[i];
        if (spec.transform == QuadratureSpec::Transform::RationalStretch) {
            (*kappa)[i] = s * t / (1.0 - t);
            (*weight)[i] = wt * s / ((1.0 - t) * (1.0 - t));
        } else {
            // kappa = -s log(1-t)
            (*kappa)[i] = -s * std::log1p(-t);
            (*weight)[i] = wt * s / (1.0 - t);
        }
    }
}

double logdet_i_minus(const Eigen::MatrixXd& N) {
    if (N.rows() != N.cols()) throw std::invalid_argument("logdet_i_minus: matrix must be square");
    if (N.rows() == 0) return 0.0;
    if (!N.allFinite()) throw SingularRoundTrip("logdet_i_minus: non-finite round-trip block");
    if (N.isZero(0.0)) return 0.0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(N.rows(), N.cols()) - N;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    double logdet = 0.0;
    double sign = lu.permutationP().determinant();  // +1 or -1
    for (Eigen::Index i = 0; i < N.rows(); ++i) {
        const double u = lu.matrixLU()(i, i);
        if (u == 0.0 || !std::isfinite(u))
            throw SingularRoundTrip("logdet_i_minus: singular I - N (assembly bug?)");
        sign *= (u > 0.0) ? 1.0 : -1.0;
        logdet += std::log(std::abs(u));
    }
    if (sign <= 0.0)
        throw SingularRoundTrip("logdet_i_minus: det(I - N) <= 0 (assembly bug?)");
    return logdet;
}

EnergyResult integrate_zero_t(const std::function<double(double)>& integrand,
                              const QuadratureSpec& spec) {
    auto evaluate = [&](int n) {
        std::vector<double> kappa, weight;
        infinite_nodes(spec, n, &kappa, &weight);
        std::vector<double> vals =
            parallel_map(n, [&](int i) { return integrand(kappa[static_cast<size_t>(i)]); });
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += weight[static_cast<size_t>(i)] * vals[static_cast<size_t>(i)];
        return sum / (2.0 * M_PI);
    };
    int n = spec.nodes;
    double prev = evaluate(n);
    while (2 * n <= spec.max_nodes) {
        n *= 2;
        const double cur = evaluate(n);
        const double err = std::abs(cur - prev);
        if (err <= spec.rel_tol * std::max(std::abs(cur), 1e-300)) {
            EnergyResult r;
            r.value = cur;
            r.quadrature_error = err;
            return r;
        }
        prev = cur;
    }
    const double cur = evaluate(std::min(2 * n, spec.max_nodes));
    throw NonConvergence("integrate_zero_t: node cap reached before tolerance", cur, prev);
}

EnergyResult matsubara_sum(const std::function<double(double)>& integrand, double temperature,
                           int cutoff, double rel_tol) {
    if (!(temperature > 0.0)) throw std::invalid_argument("matsubara_sum: temperature must be > 0");
    const double kappa_min = 1e-8;
    double sum = 0.5 * integrand(kappa_min);
    int n = 1;
    double last = 0.0;
    const int cap = cutoff > 0 ? cutoff : 100000;
    for (; n <= cap; ++n) {
        last = integrand(matsubara_kappa(n, temperature));
        sum += last;
        if (cutoff == 0 && n >= 4 && std::abs(last) <= rel_tol * std::max(std::abs(sum), 1e-300))
            break;
    }
    if (cutoff == 0 && n > cap)
        throw NonConvergence("matsubara_sum: tail did not converge", temperature * sum,
                             temperature * (sum - last));
    EnergyResult r;
    r.value = temperature * sum;
    r.truncation_order = std::min(n, cap);
    r.truncation_error = temperature * std::abs(last);
    return r;
}

EnergyResult converge_truncation(const std::function<double(int)>& solver, int n_start, double tol,
                                 int order_cap, double step_factor) {
    if (!(tol > 0.0)) throw std::invalid_argument("converge_truncation: tol must be > 0");
    std::vector<double> vals;
    std::vector<int> orders;
    int order = std::max(n_start, 1);
    double prev = solver(order);
    vals.push_back(prev);
    orders.push_back(order);
    while (true) {
        int next = static_cast<int>(std::ceil(order * step_factor));
        if (next <= order) next = order + 1;
        order = next;
        if (order > order_cap)
            throw NonConvergence("converge_truncation: order cap reached", vals.back(),
                                 vals.size() > 1 ? vals[vals.size() - 2] : vals.back());
        const double cur = solver(order);
        vals.push_back(cur);
        orders.push_back(order);
        const double change = std::abs(cur - prev);
        if (change <= tol * std::max(std::abs(cur), 1e-300)) {
            EnergyResult r;
            r.value = cur;
            r.truncation_order = order;
            r.truncation_error = change;
            // Aitken delta^2 assuming geometric convergence
            if (vals.size() >= 3) {
                const double a0 = vals[vals.size() - 3], a1 = vals[vals.size() - 2], a2 = cur;
                const double den = (a2 - a1) - (a1 - a0);
                if (den != 0.0) {
                    const double extrap = a2 - (a2 - a1) * (a2 - a1) / den;
                    // accept only when the correction is itself small (monotone tail)
                    if (std::abs(extrap - a2) <= 4.0 * change) r.value = extrap;
                }
            }
            return r;
        }
        prev = cur;
    }
}

int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CASIMIR_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < static_cast<long>(hw)) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

std::vector<double> parallel_map(int n, const std::function<double(int)>& f) {
    std::vector<double> out(static_cast<size_t>(std::max(n, 0)));
    if (n <= 0) return out;
    const int workers = std::min(worker_count(), n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = f(i);
        return out;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto run = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[static_cast<size_t>(i)] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace casimir
