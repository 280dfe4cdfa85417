#include "rtq/sweep.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "rtq/coding.hpp"
#include "rtq/optimizer.hpp"
#include "rtq/skipping.hpp"

namespace rtq::sweep {
namespace {

double parse_num(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

long parse_long(const std::string& s) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw ConfigError("not an integer: '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

const char* policy_name(Policy p) {
    switch (p) {
        case Policy::BaseOverwrite: return "base";
        case Policy::Skipping: return "skipping";
        case Policy::Coding: return "coding";
        case Policy::CodingSkipping: return "coding+skipping";
    }
    return "?";
}

SweepRow eval_cell(Model model, double l1, double l2, double mu, double d,
                   double theta) {
    SweepRow r;
    r.lambda1 = l1;
    r.lambda2 = l2;
    r.mu = mu;
    r.d = d;
    r.theta = theta;
    ModelParams p{l1, l2, mu, d, theta};
    switch (model) {
        case Model::base:
        case Model::skipping: {
            if (model == Model::base) p.theta = 0.0;
            const double g = skipping::goodput(p);
            ModelParams p0 = p;
            p0.theta = 0.0;
            const double g0 = skipping::goodput(p0);
            const double lt = p.total_rate();
            r.gamma_flow1 = lt > 0.0 ? g * l1 / lt : 0.0;
            r.gamma_flow2 = lt > 0.0 ? g * l2 / lt : 0.0;
            r.gamma_total = g;
            r.gamma_base = g0;
            r.gain_percent = g0 > 0.0 ? 100.0 * (g - g0) / g0 : 0.0;
            break;
        }
        case Model::coding:
        case Model::joint: {
            const GoodputReport rep = coding::goodput_report(p);
            r.gamma_flow1 = rep.gamma_flow1;
            r.gamma_flow2 = rep.gamma_flow2;
            r.gamma_total = rep.gamma_total;
            r.gamma_base = rep.gamma_base;
            r.gain_percent = 100.0 * rep.gain;
            if (model == Model::joint) {
                ModelParams p0 = p;
                p0.theta = 0.0;
                const GoodputReport rep0 = coding::goodput_report(p0);
                r.additional_gain_percent = 100.0 * (rep.gain - rep0.gain);
            }
            break;
        }
    }
    return r;
}

}  // namespace

Range parse_range(const std::string& text) {
    if (text.find(':') == std::string::npos) {
        const double v = parse_num(text);
        return {v, v, 1};
    }
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        throw ConfigError("range must be start:stop:steps, got '" + text + "'");
    Range r;
    r.start = parse_num(text.substr(0, c1));
    r.stop = parse_num(text.substr(c1 + 1, c2 - c1 - 1));
    r.steps = parse_long(text.substr(c2 + 1));
    return r;
}

std::vector<double> expand(const Range& r) {
    if (r.steps < 1) throw ConfigError("range needs steps >= 1");
    if (!(r.stop >= r.start)) throw ConfigError("range needs stop >= start");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(r.steps));
    if (r.steps == 1) {
        out.push_back(r.start);
        return out;
    }
    const double h = (r.stop - r.start) / static_cast<double>(r.steps - 1);
    for (long i = 0; i < r.steps; ++i)
        out.push_back(i + 1 == r.steps ? r.stop : r.start + static_cast<double>(i) * h);
    return out;
}

Model parse_model(const std::string& name) {
    if (name == "base") return Model::base;
    if (name == "skipping") return Model::skipping;
    if (name == "coding") return Model::coding;
    if (name == "joint") return Model::joint;
    throw ConfigError("unknown model '" + name +
                      "' (expected base|skipping|coding|joint)");
}

const char* model_name(Model m) {
    switch (m) {
        case Model::base: return "base";
        case Model::skipping: return "skipping";
        case Model::coding: return "coding";
        case Model::joint: return "joint";
    }
    return "?";
}

void validate_spec(const ExperimentSpec& s) {
    if (!(s.mu > 0.0)) throw ConfigError("mu must be positive");
    for (const Range* r : {&s.lambda, &s.lambda1, &s.lambda2, &s.d, &s.theta}) {
        if (r->steps < 1) throw ConfigError("range needs steps >= 1");
        if (!(r->stop >= r->start)) throw ConfigError("range needs stop >= start");
    }
    const bool two_flow = s.model == Model::coding || s.model == Model::joint;
    if (s.use_split && !two_flow)
        throw ConfigError("lambda1/lambda2 grids apply to coding|joint only");
    if (s.use_split) {
        if (s.lambda1.start < 0.0 || s.lambda2.start < 0.0)
            throw ConfigError("rates must be nonnegative");
    } else if (s.lambda.start < 0.0) {
        throw ConfigError("rates must be nonnegative");
    }
    if (s.d.start < 0.0) throw ConfigError("d must be nonnegative");
    if (s.theta.start < 0.0) throw ConfigError("theta must be nonnegative");
    if (s.theta.stop > s.d.start)
        throw ConfigError("theta grid exceeds the smallest d in the grid");
    if ((s.model == Model::base || s.model == Model::coding) && s.theta.stop != 0.0)
        throw ConfigError("base|coding have no threshold; use theta 0 "
                          "(model joint for coding with thresholding)");
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& s, Exec exec) {
    validate_spec(s);
    std::vector<std::array<double, 2>> rates;
    if (s.use_split) {
        for (double l1 : expand(s.lambda1))
            for (double l2 : expand(s.lambda2)) rates.push_back({l1, l2});
    } else {
        const bool two_flow = s.model == Model::coding || s.model == Model::joint;
        for (double l : expand(s.lambda))
            rates.push_back(two_flow ? std::array<double, 2>{l / 2.0, l / 2.0}
                                     : std::array<double, 2>{l, 0.0});
    }
    const std::vector<double> ds = expand(s.d);
    const std::vector<double> ths = expand(s.theta);

    const std::size_t nd = ds.size(), nt = ths.size();
    std::vector<SweepRow> rows(rates.size() * nd * nt);
    const auto total = static_cast<std::ptrdiff_t>(rows.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#endif
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        const auto& rate = rates[u / (nd * nt)];
        const double d = ds[(u / nt) % nd];
        const double th = ths[u % nt];
        rows[u] = eval_cell(s.model, rate[0], rate[1], s.mu, d, th);
    }
    (void)exec;
    return rows;
}

std::string fmt6(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const ExperimentSpec& s,
                     const std::vector<SweepRow>& rows) {
    const bool joint = s.model == Model::joint;
    os << "lambda1,lambda2,mu,d,theta,gamma_flow1,gamma_flow2,gamma_total,"
          "gamma_base,gain_percent";
    if (joint) os << ",additional_gain_percent";
    os << '\n';
    for (const SweepRow& r : rows) {
        os << fmt6(r.lambda1) << ',' << fmt6(r.lambda2) << ',' << fmt6(r.mu) << ','
           << fmt6(r.d) << ',' << fmt6(r.theta) << ',' << fmt6(r.gamma_flow1) << ','
           << fmt6(r.gamma_flow2) << ',' << fmt6(r.gamma_total) << ','
           << fmt6(r.gamma_base) << ',' << fmt6(r.gain_percent);
        if (joint) os << ',' << fmt6(r.additional_gain_percent);
        os << '\n';
    }
}

void write_table1_csv(std::ostream& os) {
    os << "lambda,d,theta_star,max_gain_percent\n";
    for (double lam : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double d : {0.1, 0.2, 0.3, 0.4, 0.5}) {
            const ModelParams p{lam, 0.0, 1.0, d, 0.0};
            const auto res =
                optimizer::optimal_threshold(p, optimizer::GainModel::skipping);
            os << fmt6(lam) << ',' << fmt6(d) << ',' << fmt6(res.theta_star) << ','
               << fmt6(100.0 * res.gain_at_star) << '\n';
        }
    }
}

std::vector<ValidatePoint> default_coding_grid() {
    std::vector<ValidatePoint> pts;
    for (double lam : {0.5, 2.0, 8.0})
        for (double d : {0.2, 1.0, 5.0})
            pts.push_back({ModelParams{lam / 2.0, lam / 2.0, 1.0, d, 0.0},
                           Policy::Coding});
    return pts;
}

std::vector<ValidatePoint> skipping_theta_grid() {
    std::vector<ValidatePoint> pts;
    for (double th : {0.0, 0.3, 0.6, 0.9})
        pts.push_back({ModelParams{1.0, 0.0, 1.0, 1.0, th}, Policy::Skipping});
    return pts;
}

bool run_validation(const std::vector<ValidatePoint>& points, const SimConfig& cfg,
                    Exec exec, double bias, std::ostream& report) {
    bool all_pass = true;
    int index = 0;
    for (const ValidatePoint& vp : points) {
        const SimEstimate est = replicate(vp.params, vp.policy, cfg, exec);

        ModelParams q = vp.params;
        if (vp.policy == Policy::BaseOverwrite || vp.policy == Policy::Coding)
            q.theta = 0.0;
        double analytic[2];
        if (vp.policy == Policy::Coding || vp.policy == Policy::CodingSkipping) {
            analytic[0] = coding::flow_goodput(q, 1);
            analytic[1] = coding::flow_goodput(q, 2);
        } else {
            const double g = skipping::goodput(q);
            const double lt = q.total_rate();
            analytic[0] = lt > 0.0 ? g * q.lambda1 / lt : 0.0;
            analytic[1] = lt > 0.0 ? g * q.lambda2 / lt : 0.0;
        }

        const double lam[2] = {vp.params.lambda1, vp.params.lambda2};
        const double sim[2] = {est.goodput_flow1, est.goodput_flow2};
        const double ci[2] = {est.ci_halfwidth_flow1, est.ci_halfwidth_flow2};
        for (int f = 0; f < 2; ++f) {
            if (lam[f] <= 0.0) continue;
            const double a = analytic[f] + bias;
            const double z = ci[f] > 0.0 ? (sim[f] - a) / (ci[f] / kZ99) : 0.0;
            const bool pass = std::abs(sim[f] - a) <= ci[f];
            all_pass = all_pass && pass;
            report << "point=" << index << " policy=" << policy_name(vp.policy)
                   << " lambda1=" << fmt6(vp.params.lambda1)
                   << " lambda2=" << fmt6(vp.params.lambda2)
                   << " mu=" << fmt6(vp.params.mu) << " d=" << fmt6(vp.params.d)
                   << " theta=" << fmt6(vp.params.theta) << " flow=" << (f + 1)
                   << " analytic=" << fmt6(a) << " sim=" << fmt6(sim[f])
                   << " ci=" << fmt6(ci[f]) << " z=" << fmt6(z) << ' '
                   << (pass ? "PASS" : "FAIL") << '\n';
        }
        ++index;
    }
    return all_pass;
}

std::vector<std::pair<std::string, std::string>> parse_kv_file(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("spec line " + std::to_string(lineno) +
                              ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("spec line " + std::to_string(lineno) +
                              ": empty key or value");
        out.emplace_back(key, value);
    }
    return out;
}

void apply_key(ExperimentSpec& s, const std::string& key, const std::string& value) {
    if (key == "model") {
        s.model = parse_model(value);
    } else if (key == "lambda") {
        s.lambda = parse_range(value);
    } else if (key == "lambda1") {
        s.lambda1 = parse_range(value);
        s.use_split = true;
    } else if (key == "lambda2") {
        s.lambda2 = parse_range(value);
        s.use_split = true;
    } else if (key == "mu") {
        s.mu = parse_num(value);
    } else if (key == "d") {
        s.d = parse_range(value);
    } else if (key == "theta") {
        s.theta = parse_range(value);
    } else if (key == "out") {
        s.out = value;
    } else if (key == "seed") {
        s.sim.seed = static_cast<std::uint64_t>(parse_long(value));
    } else if (key == "arrivals") {
        s.sim.arrivals_target = static_cast<std::uint64_t>(parse_long(value));
    } else if (key == "replications") {
        s.sim.replications = static_cast<int>(parse_long(value));
    } else {
        throw ConfigError("unknown spec key '" + key + "'");
    }
}

}  // namespace rtq::sweep
