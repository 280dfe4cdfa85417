#include "rtq/optimizer.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "rtq/coding.hpp"
#include "rtq/skipping.hpp"

namespace rtq::optimizer {
namespace {

double objective(const ModelParams& p, GainModel model, double theta) {
    ModelParams q = p;
    q.theta = theta;
    if (model == GainModel::skipping) return skipping::goodput(q);
    return coding::flow_goodput(q, 1) + coding::flow_goodput(q, 2);
}

// Grid points are i*h for i = 0..n, plus d itself when n*h falls short.
// The bracket around the winner is rebuilt from the index so the search is
// deterministic regardless of how h divides d.
ThresholdResult search(const ModelParams& p, GainModel model, double h,
                       std::size_t n, bool tail) {
    auto f = [&](double th) { return objective(p, model, th); };

    std::vector<double> vals;
    vals.reserve(n + 2);
    for (std::size_t i = 0; i <= n; ++i) vals.push_back(f(static_cast<double>(i) * h));
    if (tail) vals.push_back(f(p.d));

    std::size_t best = 0;
    for (std::size_t k = 1; k < vals.size(); ++k)
        if (vals[k] > vals[best]) best = k;

    const bool best_is_tail = tail && best == vals.size() - 1;
    double a, b, th_grid;
    if (best_is_tail) {
        th_grid = p.d;
        a = std::max(0.0, p.d - h);
        b = p.d;
    } else {
        const double i = static_cast<double>(best);
        th_grid = i * h;
        a = std::max(0.0, (i - 1.0) * h);
        b = std::min(p.d, (i + 1.0) * h);
    }

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = b - invphi * (b - a);
    double c2 = a + invphi * (b - a);
    double f1 = f(c1), f2 = f(c2);
    while (b - a > h * 1e-3) {
        if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + invphi * (b - a);
            f2 = f(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - invphi * (b - a);
            f1 = f(c1);
        }
    }
    double th = 0.5 * (a + b);
    double g = f(th);
    if (vals[best] >= g) {
        th = th_grid;
        g = vals[best];
    }

    const double g0 = vals[0];
    ThresholdResult r;
    r.theta_star = th;
    r.gain_at_star = g0 > 0.0 ? (g - g0) / g0 : 0.0;
    r.grid_resolution = h;
    return r;
}

}  // namespace

ThresholdResult optimal_threshold(const ModelParams& p, GainModel model,
                                  double resolution) {
    validate(p);
    if (!(resolution > 0.0))
        throw DomainError("optimal_threshold: resolution must be positive");
    if (p.d == 0.0) return {0.0, 0.0, resolution};
    const auto n = static_cast<std::size_t>(std::floor(p.d / resolution));
    const bool tail = static_cast<double>(n) * resolution < p.d;
    return search(p, model, resolution, n, tail);
}

ThresholdResult optimal_threshold(const ModelParams& p, GainModel model) {
    validate(p);
    if (p.d == 0.0) return {0.0, 0.0, 0.0};
    return search(p, model, p.d / 2000.0, 2000, false);
}

}  // namespace rtq::optimizer
