#include "rtq/simulator.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rtq/rng.hpp"

namespace rtq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One stored unit: a native packet or a coded pair; per-constituent absolute
// deadlines and post-warm-up tags.
struct Unit {
    bool has[2] = {false, false};
    double dl[2] = {0.0, 0.0};
    bool tag[2] = {false, false};

    bool empty() const { return !has[0] && !has[1]; }
    int type() const { return (has[0] && has[1]) ? 3 : (has[0] ? 1 : 2); }
    double max_dl() const {
        if (has[0] && has[1]) return dl[0] > dl[1] ? dl[0] : dl[1];
        return has[0] ? dl[0] : dl[1];
    }
    void clear() { has[0] = has[1] = false; }
    void set_native(int f, double deadline, bool tagged) {
        clear();
        has[f] = true;
        dl[f] = deadline;
        tag[f] = tagged;
    }
};

struct RepOut {
    double goodput[2] = {0.0, 0.0};
    double frac[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    FlowCounts fc[2];
};

RepOut simulate_once(const ModelParams& p, Policy pol, std::uint64_t seed,
                     std::uint64_t target, std::uint64_t warmup, const TraceFn* hook) {
    const double rate[2] = {p.lambda1, p.lambda2};
    const bool coding = pol == Policy::Coding || pol == Policy::CodingSkipping;
    const double theta =
        (pol == Policy::Skipping || pol == Policy::CodingSkipping) ? p.theta : 0.0;

    SplitMix64 arr_rng[2] = {SplitMix64(derive_stream(seed, 0)),
                             SplitMix64(derive_stream(seed, 1))};
    SplitMix64 svc_rng(derive_stream(seed, 2));

    // The three pending-event slots; a flow with rate 0 never has arrivals
    // (and its stream is never drawn from).
    double t_arr[2] = {rate[0] > 0 ? arr_rng[0].exp_time(rate[0]) : kInf,
                       rate[1] > 0 ? arr_rng[1].exp_time(rate[1]) : kInf};
    double t_svc = kInf;
    double t_exp = kInf;

    Unit server, buffer;
    RepOut out;
    std::uint64_t n = 0;
    double now = 0.0, t_last = 0.0, t_meas = 0.0;
    bool measuring = false;

    auto state = [&]() -> int {
        if (server.empty()) return 0;
        if (buffer.empty()) return 1;
        return 1 + buffer.type();
    };
    auto emit = [&](TraceEvent::Kind k, int flow, int before, double lead) {
        if (!hook) return;
        TraceEvent ev;
        ev.time = now;
        ev.kind = k;
        ev.flow = flow;
        ev.state_before = before;
        ev.state_after = state();
        ev.lead = lead;
        (*hook)(ev);
    };
    auto score = [&](const Unit& u) {
        for (int f = 0; f < 2; ++f)
            if (u.has[f] && u.tag[f])
                ++(now <= u.dl[f] ? out.fc[f].on_time : out.fc[f].late);
    };

    while (n < warmup + target) {
        // Next event; ties resolve expiry < service < flow-1 < flow-2 arrival.
        double te = t_exp;
        int kind = 0;
        if (t_svc < te) { te = t_svc; kind = 1; }
        if (t_arr[0] < te) { te = t_arr[0]; kind = 2; }
        if (t_arr[1] < te) { te = t_arr[1]; kind = 3; }

        if (measuring) out.frac[state()] += te - t_last;
        t_last = te;
        now = te;

        if (kind == 0) {
            // Stored unit's lead-time reached theta: discard it whole.
            const int before = state();
            for (int f = 0; f < 2; ++f)
                if (buffer.has[f] && buffer.tag[f]) ++out.fc[f].skipped;
            buffer.clear();
            t_exp = kInf;
            emit(TraceEvent::BufferExpire, 0, before, 0.0);
        } else if (kind == 1) {
            // Completion and (possible) dispatch are one composite event; the
            // two trace records share state_before / state_after.
            const int before = state();
            score(server);
            server.clear();
            t_svc = kInf;
            if (!buffer.empty()) {
                // The expiry slot guarantees lead > theta here.
                const double lead = buffer.max_dl() - now;
                server = buffer;
                buffer.clear();
                t_exp = kInf;
                t_svc = now + svc_rng.exp_time(p.mu);
                emit(TraceEvent::ServiceEnd, 0, before, 0.0);
                emit(TraceEvent::ServiceStart, 0, before, lead);
            } else {
                emit(TraceEvent::ServiceEnd, 0, before, 0.0);
                emit(TraceEvent::Idle, 0, before, 0.0);
            }
        } else {
            const int f = kind - 2;
            t_arr[f] = now + arr_rng[f].exp_time(rate[f]);
            ++n;
            const bool tagged = n > warmup;
            if (tagged && !measuring) {
                measuring = true;
                t_meas = now;
                t_last = now;
            }
            if (tagged) ++out.fc[f].arrivals;
            const double dl = now + p.d;
            const int before = state();
            emit(TraceEvent::Arrival, f + 1, before, 0.0);
            if (server.empty()) {
                server.set_native(f, dl, tagged);
                t_svc = now + svc_rng.exp_time(p.mu);
                emit(TraceEvent::ServiceStart, f + 1, before, p.d);
            } else if (buffer.empty()) {
                buffer.set_native(f, dl, tagged);
                t_exp = dl - theta;
                emit(TraceEvent::BufferStore, f + 1, before, 0.0);
            } else if (coding && buffer.type() == (f == 0 ? 2 : 1)) {
                // Other-flow native waiting: code with it. The new arrival has
                // the later deadline, so it drives the unit's expiry.
                buffer.has[f] = true;
                buffer.dl[f] = dl;
                buffer.tag[f] = tagged;
                if (tagged) ++out.fc[f].coded;
                t_exp = dl - theta;
                emit(TraceEvent::BufferCode, f + 1, before, 0.0);
            } else {
                // Same flow waiting, or a coded unit: overwrite it whole.
                for (int g = 0; g < 2; ++g)
                    if (buffer.has[g] && buffer.tag[g]) ++out.fc[g].overwritten;
                buffer.set_native(f, dl, tagged);
                t_exp = dl - theta;
                emit(TraceEvent::BufferOverwrite, f + 1, before, 0.0);
            }
        }
    }

    for (const Unit* u : {&server, &buffer})
        for (int f = 0; f < 2; ++f)
            if (u->has[f] && u->tag[f]) ++out.fc[f].in_system;

    const double span = t_last - t_meas;
    if (span > 0) {
        for (int f = 0; f < 2; ++f)
            out.goodput[f] = static_cast<double>(out.fc[f].on_time) / span;
        for (double& x : out.frac) x /= span;
    }
    return out;
}

void check_inputs(const ModelParams& p, const SimConfig& c) {
    validate(p);
    if (p.total_rate() <= 0)
        throw DomainError("simulation needs lambda1 + lambda2 > 0");
    if (c.replications < 1)
        throw ConfigError("replications must be >= 1");
    if (c.arrivals_target == 0)
        throw ConfigError("arrivals_target must be >= 1");
}

std::uint64_t effective_warmup(const SimConfig& c) {
    return c.warmup_arrivals == SimConfig::kDefaultWarmup ? c.arrivals_target / 10
                                                          : c.warmup_arrivals;
}

SimEstimate aggregate(const std::vector<RepOut>& reps) {
    const int n = static_cast<int>(reps.size());
    SimEstimate est;
    double mean[2] = {0.0, 0.0};
    for (const RepOut& r : reps) {
        mean[0] += r.goodput[0];
        mean[1] += r.goodput[1];
        for (int s = 0; s < 5; ++s) est.state_time_fractions[s] += r.frac[s];
        for (int f = 0; f < 2; ++f) {
            est.counts[f].arrivals += r.fc[f].arrivals;
            est.counts[f].on_time += r.fc[f].on_time;
            est.counts[f].late += r.fc[f].late;
            est.counts[f].overwritten += r.fc[f].overwritten;
            est.counts[f].skipped += r.fc[f].skipped;
            est.counts[f].coded += r.fc[f].coded;
            est.counts[f].in_system += r.fc[f].in_system;
        }
    }
    mean[0] /= n;
    mean[1] /= n;
    for (double& s : est.state_time_fractions) s /= n;
    est.goodput_flow1 = mean[0];
    est.goodput_flow2 = mean[1];
    if (n >= 2) {
        double ss[2] = {0.0, 0.0};
        for (const RepOut& r : reps)
            for (int f = 0; f < 2; ++f) {
                const double dev = r.goodput[f] - mean[f];
                ss[f] += dev * dev;
            }
        est.ci_halfwidth_flow1 = kZ99 * std::sqrt(ss[0] / (n - 1) / n);
        est.ci_halfwidth_flow2 = kZ99 * std::sqrt(ss[1] / (n - 1) / n);
    }
    return est;
}

}  // namespace

SimEstimate run(const ModelParams& params, Policy policy, const SimConfig& config, Exec exec) {
    check_inputs(params, config);
    const std::uint64_t warmup = effective_warmup(config);
    const int n = config.replications;
    std::vector<RepOut> reps(n);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < n; ++r)
            reps[r] = simulate_once(params, policy, derive_stream(config.seed, r),
                                    config.arrivals_target, warmup, nullptr);
    } else {
        for (int r = 0; r < n; ++r)
            reps[r] = simulate_once(params, policy, derive_stream(config.seed, r),
                                    config.arrivals_target, warmup, nullptr);
    }
    return aggregate(reps);
}

SimEstimate replicate(const ModelParams& params, Policy policy, const SimConfig& config,
                      Exec exec) {
    if (config.replications < 2)
        throw ConfigError("replicate needs replications >= 2 for confidence intervals");
    return run(params, policy, config, exec);
}

SimEstimate run_traced(const ModelParams& params, Policy policy, const SimConfig& config,
                       const TraceFn& hook) {
    check_inputs(params, config);
    std::vector<RepOut> reps{simulate_once(params, policy, derive_stream(config.seed, 0),
                                           config.arrivals_target, effective_warmup(config),
                                           &hook)};
    return aggregate(reps);
}

}  // namespace rtq
