#include "lsv/numerics/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lsv::numerics {

namespace {

NelderMeadResult single_pass(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty starting point");
    const bool boxed = !opts.lower.empty();
    if (boxed && (opts.lower.size() != n || opts.upper.size() != n))
        throw std::invalid_argument("nelder_mead: box dimension mismatch");

    auto project = [&](std::vector<double>& x) {
        if (!boxed) return;
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], opts.lower[i], opts.upper[i]);
    };
    auto eval = [&](std::vector<double>& x) {
        project(x);
        double v = f(x);
        return std::isnan(v) ? HUGE_VAL : v;
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double h = opts.initial_step;
        pts[i + 1][i] += h;
        if (boxed && pts[i + 1][i] > opts.upper[i]) pts[i + 1][i] = x0[i] - h;
    }
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    int it = 0;
    bool converged = false;
    for (; it < opts.max_iterations; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

        double diam = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d) diam = std::max(diam, std::abs(pts[i][d] - pts[best][d]));
        if (std::abs(vals[worst] - vals[best]) <= opts.f_tol && diam <= opts.x_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);

        auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
            return x;
        };

        auto xr = along(-1.0);
        double fr = eval(xr);
        if (fr < vals[best]) {
            auto xe = along(-2.0);
            double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        bool outside = fr < vals[worst];
        auto xc = along(outside ? -0.5 : 0.5);
        double fc = eval(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
            vals[i] = eval(pts[i]);
        }
    }
    auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], it, converged};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
    // A simplex squashed against the box can stall; restart from the best
    // point while that still helps.
    NelderMeadResult r = single_pass(f, std::move(x0), opts);
    for (int restart = 0; restart < 3; ++restart) {
        NelderMeadResult next = single_pass(f, r.x, opts);
        next.iterations += r.iterations;
        bool improved = next.value < r.value - opts.f_tol;
        if (next.value <= r.value) r = next;
        if (!improved) break;
    }
    return r;
}

}  // namespace lsv::numerics
