#ifndef WBELL_NELDER_MEAD_HPP
#define WBELL_NELDER_MEAD_HPP

// Derivative-free simplex minimizer with dimension-adaptive coefficients
// (Gao & Han), which behave better than the classic (1, 2, 1/2, 1/2) choice
// once the problem has more than a few parameters.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace wbell {

struct NelderMeadOptions {
    std::size_t max_iters = 2000;
    double tol = 1e-9;          // stop once every vertex is within tol of the best one
    double initial_step = 0.5;  // edge length of the starting simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Minimizes `f(std::span<const double>) -> double` starting from `x0`.
template <class F>
NelderMeadResult nelder_mead(F&& f, std::span<const double> x0, const NelderMeadOptions& opts = {}) {
    const std::size_t n = x0.size();
    const double dn = static_cast<double>(std::max<std::size_t>(n, 2));
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / dn;
    const double gamma = 0.75 - 1.0 / (2.0 * dn);
    const double delta = 1.0 - 1.0 / dn;

    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return f(std::span<const double>(x));
    };

    std::vector<std::vector<double>> pts(n + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };
    auto diameter = [&] {
        double d = 0.0;
        const auto& best = pts[order[0]];
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(pts[order[i]][k] - best[k]));
        return d;
    };
    auto along = [&](std::vector<double>& out, double t) {
        const auto& worst = pts[order[n]];
        for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (centroid[k] - worst[k]);
    };

    sort_simplex();
    while (true) {
        if (n == 0 || diameter() < opts.tol) {
            res.converged = true;
            break;
        }
        if (res.iterations >= opts.max_iters) break;
        ++res.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[order[i]][k];
        for (auto& c : centroid) c /= static_cast<double>(n);

        const std::size_t worst = order[n];
        const double f_best = fv[order[0]];
        const double f_second_worst = fv[order[n - 1]];
        const double f_worst = fv[worst];

        along(xr, alpha);
        const double fr = eval(xr);
        if (fr < f_best) {
            along(xe, alpha * beta);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < f_second_worst) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < f_worst;
            along(xc, outside ? alpha * gamma : -gamma);
            const double fc = eval(xc);
            if (fc < (outside ? fr : f_worst)) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                // shrink toward the best vertex
                const auto best = pts[order[0]];
                for (std::size_t i = 1; i <= n; ++i) {
                    auto& p = pts[order[i]];
                    for (std::size_t k = 0; k < n; ++k) p[k] = best[k] + delta * (p[k] - best[k]);
                    fv[order[i]] = eval(p);
                }
            }
        }
        sort_simplex();
    }

    res.x = pts[order[0]];
    res.value = fv[order[0]];
    return res;
}

} // namespace wbell

#endif // WBELL_NELDER_MEAD_HPP
