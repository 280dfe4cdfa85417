#pragma once

#include <array>
#include <stdexcept>

namespace rtq {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The (lambda1, lambda2, mu, d, theta) tuple every model consumes.
// lambda2 = 0 collapses the system to the single-flow skipping analysis;
// the single-flow formulas always use the merged rate lambda1 + lambda2.
struct ModelParams {
    double lambda1 = 0.0;  // flow-1 arrival rate, >= 0
    double lambda2 = 0.0;  // flow-2 arrival rate, >= 0
    double mu = 1.0;       // service rate, > 0
    double d = 1.0;        // relative deadline, >= 0
    double theta = 0.0;    // skip threshold on lead-time, in [0, d]

    double total_rate() const { return lambda1 + lambda2; }
    double rho() const { return total_rate() / mu; }
};

// Throws DomainError for theta outside [0,d], mu <= 0, negative rates,
// or non-finite values. Returns the params unchanged otherwise.
ModelParams validate(const ModelParams& p);

// Stationary probabilities of the five router states.
// Layout: L=0; L=1; (L=2, N=1); (L=2, N=2); (L=2, N=3).
struct StateDistribution {
    double p_empty = 0.0;
    double p_busy = 0.0;
    double p_full_type1 = 0.0;
    double p_full_type2 = 0.0;
    double p_full_coded = 0.0;
};

// t[i][j]: expected cumulative time the buffer holds a type-(i+1) unit during
// a clearance period whose first buffered arrival is type-(j+1).
// Types: 1 = flow-1 native, 2 = flow-2 native, 3 = coded.
struct ClearanceExpectations {
    std::array<std::array<double, 3>, 3> t{};
};

struct GoodputReport {
    double gamma_flow1 = 0.0;
    double gamma_flow2 = 0.0;
    double gamma_total = 0.0;
    double gamma_base = 0.0;  // merged-flow, no coding, theta = 0
    double gain = 0.0;        // (gamma_total - gamma_base) / gamma_base; 0 if base is 0
};

}  // namespace rtq
