#include "bellfield/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bellfield {

namespace {

GaussLegendre compute_gl(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order < 1");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order) {
    const auto& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), h = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < order; ++i)
        sum += rule.weights[i] * f(mid + h * rule.nodes[i]);
    return h * sum;
}

double integrate_gl_panels(const std::function<double(double)>& f, double a,
                           double b, int panels, int order) {
    double sum = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        sum += integrate_gl(f, a + p * h, a + (p + 1) * h, order);
    return sum;
}

double wynn_epsilon(const std::vector<double>& partial_sums, double* err_est) {
    if (partial_sums.empty())
        throw std::invalid_argument("wynn_epsilon: empty sequence");
    std::vector<double> prev(partial_sums.size() + 1, 0.0);
    std::vector<double> cur = partial_sums;
    double best = partial_sums.back();
    double prev_best = best;
    int column = 1;
    while (cur.size() >= 2) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double d = cur[i + 1] - cur[i];
            next[i] = (d != 0.0) ? prev[i + 1] + 1.0 / d : prev[i + 1];
        }
        prev = std::move(cur);
        cur = std::move(next);
        ++column;
        if (column % 2 == 1 && !cur.empty()) {
            prev_best = best;
            best = cur[cur.size() / 2];
        }
    }
    if (err_est) *err_est = std::abs(best - prev_best);
    return best;
}

}  // namespace bellfield
