#include "rtq/skipping.hpp"

#include <cmath>

namespace rtq {

ModelParams validate(const ModelParams& p) {
    if (!std::isfinite(p.lambda1) || !std::isfinite(p.lambda2) || !std::isfinite(p.mu) ||
        !std::isfinite(p.d) || !std::isfinite(p.theta))
        throw DomainError("model parameters must be finite");
    if (p.lambda1 < 0 || p.lambda2 < 0)
        throw DomainError("arrival rates must be >= 0");
    if (p.mu <= 0)
        throw DomainError("service rate mu must be > 0");
    if (p.d < 0)
        throw DomainError("relative deadline d must be >= 0");
    if (p.theta < 0 || p.theta > p.d)
        throw DomainError("threshold theta must lie in [0, d]");
    return p;
}

}  // namespace rtq

namespace rtq::skipping {

double expected_clearance_time(const ModelParams& p) {
    const double lam = p.total_rate();
    const double D = p.d - p.theta;
    const double e = std::exp(-(lam + p.mu) * D);
    return -std::expm1(-(lam + p.mu) * D) / (p.mu + lam * e);
}

double expected_busy_period(const ModelParams& p) {
    const double lam = p.total_rate();
    return 1.0 / p.mu + (lam / p.mu) * expected_clearance_time(p);
}

double prob_empty(const ModelParams& p) {
    const double lam = p.total_rate();
    const double mu = p.mu;
    const double e = std::exp(-(lam + mu) * (p.d - p.theta));
    // Evaluates smoothly to 1 at lam = 0: the numerator vanishes.
    return 1.0 - (lam * lam + lam * mu) / (mu * mu + lam * mu * e + lam * lam + lam * mu);
}

double goodput(const ModelParams& p) {
    const double lam = p.total_rate();
    if (lam == 0)
        return 0.0;
    const double mu = p.mu;
    const double D = p.d - p.theta;
    const double p0 = prob_empty(p);
    const double succ_empty = -std::expm1(-mu * p.d);
    // Success probability of a buffered arrival: served mu*e^{-mu t} at t < D
    // with no overwriting arrival before (e^{-lam t}), finishing within d:
    //   int_0^D mu e^{-(mu+lam)t} dt - mu e^{-mu d} int_0^D e^{-lam t} dt
    const double succ_busy = (mu / (lam + mu)) * -std::expm1(-(lam + mu) * D) -
                             (mu * std::exp(-mu * p.d) / lam) * -std::expm1(-lam * D);
    return lam * p0 * succ_empty + lam * (1.0 - p0) * succ_busy;
}

double reference_goodput(RefKind kind, double lambda, double mu) {
    if (lambda < 0 || mu <= 0)
        throw DomainError("reference_goodput needs lambda >= 0 and mu > 0");
    const double rho = lambda / mu;
    switch (kind) {
        case RefKind::mm11: return lambda / (1.0 + rho);
        case RefKind::mm12: return lambda * (1.0 + rho) / (1.0 + rho + rho * rho);
    }
    throw DomainError("unknown reference kind");
}

}  // namespace rtq::skipping
