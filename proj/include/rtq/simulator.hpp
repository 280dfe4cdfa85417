#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "rtq/params.hpp"

namespace rtq {

// BaseOverwrite/Coding ignore params.theta (they are the theta = 0 variants);
// even so, a stored unit whose deadline passes is removed, never served.
enum class Policy { BaseOverwrite, Skipping, Coding, CodingSkipping };

enum class Exec { Serial, Parallel };

// Two-sided 99% normal quantile; all confidence intervals use it.
inline constexpr double kZ99 = 2.5758293035489004;

struct SimConfig {
    static constexpr std::uint64_t kDefaultWarmup = ~0ull;  // 10% of arrivals_target

    std::uint64_t seed = 1;
    std::uint64_t arrivals_target = 100000;  // post-warm-up arrivals per replication
    std::uint64_t warmup_arrivals = kDefaultWarmup;
    int replications = 1;
};

struct FlowCounts {
    std::uint64_t arrivals = 0;
    std::uint64_t on_time = 0;     // service ended at or before own deadline
    std::uint64_t late = 0;        // served, but past own deadline
    std::uint64_t overwritten = 0;
    std::uint64_t skipped = 0;     // removed by the lead-time rule
    std::uint64_t coded = 0;       // arrivals that coded into a waiting native
    std::uint64_t in_system = 0;   // still stored when the run ended
};

// Every counted arrival lands in exactly one of on_time/late/overwritten/
// skipped/in_system, so those five sum to arrivals per flow.
struct SimEstimate {
    double goodput_flow1 = 0.0;
    double goodput_flow2 = 0.0;
    double ci_halfwidth_flow1 = 0.0;  // 99% normal half-width over replications
    double ci_halfwidth_flow2 = 0.0;
    std::array<double, 5> state_time_fractions{};  // StateDistribution layout
    std::array<FlowCounts, 2> counts{};            // summed over replications
};

struct TraceEvent {
    enum Kind { Arrival, ServiceStart, ServiceEnd, BufferStore, BufferCode,
                BufferOverwrite, BufferExpire, Idle };
    double time = 0.0;
    Kind kind = Arrival;
    int flow = 0;            // 1/2 for arrival-driven events, 0 otherwise
    int state_before = 0;    // 0..4, StateDistribution layout
    int state_after = 0;
    double lead = 0.0;       // ServiceStart: dispatched unit's lead-time
};
using TraceFn = std::function<void(const TraceEvent&)>;

// Runs config.replications independent simulations (seeds derived from
// config.seed) and aggregates. Parallel mode distributes replications over
// OpenMP threads; results are reduced in replication order either way, so the
// two modes are bit-identical.
SimEstimate run(const ModelParams& params, Policy policy, const SimConfig& config,
                Exec exec = Exec::Serial);

// Same as run but insists on replications >= 2 so the CIs are meaningful.
SimEstimate replicate(const ModelParams& params, Policy policy, const SimConfig& config,
                      Exec exec = Exec::Serial);

// Single replication (the first one run() would do), invoking hook per event.
SimEstimate run_traced(const ModelParams& params, Policy policy, const SimConfig& config,
                       const TraceFn& hook);

}  // namespace rtq
