#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rtq/params.hpp"
#include "rtq/simulator.hpp"

namespace rtq::sweep {

// Inclusive linear range with `steps` points (steps = 1 -> just start).
struct Range {
    double start = 0.0;
    double stop = 0.0;
    long steps = 1;
};

// "start:stop:steps" or a bare scalar. ConfigError on malformed text.
Range parse_range(const std::string& text);
std::vector<double> expand(const Range& r);  // ConfigError on bad range

// base     — merged flow, no coding, no threshold (theta must be 0)
// skipping — merged flow with thresholding
// coding   — two flows with XOR coding, no threshold (theta must be 0)
// joint    — coding + thresholding; rows gain an additional-gain column
//            measured against coding alone at the same rates and deadline
enum class Model { base, skipping, coding, joint };

Model parse_model(const std::string& name);  // ConfigError on unknown name
const char* model_name(Model m);

struct ExperimentSpec {
    Model model = Model::skipping;
    // Rates either as a total (symmetric split for coding/joint) or as an
    // explicit lambda1 x lambda2 grid when use_split is set.
    bool use_split = false;
    Range lambda{1.0, 1.0, 1};
    Range lambda1{0.0, 0.0, 1};
    Range lambda2{0.0, 0.0, 1};
    Range d{1.0, 1.0, 1};
    Range theta{0.0, 0.0, 1};
    double mu = 1.0;
    std::string out;  // output path; empty = stdout
    SimConfig sim;    // carried for flag parity; sweeps are analytic-only
};

// ConfigError on: bad ranges, mu <= 0, theta exceeding the smallest d in the
// grid, nonzero theta for the base model, split ranges for single-flow models.
void validate_spec(const ExperimentSpec& s);

struct SweepRow {
    double lambda1 = 0, lambda2 = 0, mu = 1, d = 1, theta = 0;
    double gamma_flow1 = 0, gamma_flow2 = 0, gamma_total = 0, gamma_base = 0;
    double gain_percent = 0;
    double additional_gain_percent = 0;  // joint model only
};

// One row per grid cell in deterministic order: rates outer, then d, then
// theta. Parallel mode splits cells over OpenMP threads; each cell writes its
// own slot, so both modes produce identical rows.
std::vector<SweepRow> run_sweep(const ExperimentSpec& s, Exec exec = Exec::Serial);

void write_sweep_csv(std::ostream& os, const ExperimentSpec& s,
                     const std::vector<SweepRow>& rows);

// Fixed grid lambda in {0.5,1,2,4,8} x d in {0.1..0.5}, mu = 1, skipping
// model, optimizer at default resolution.
// Header: lambda,d,theta_star,max_gain_percent
void write_table1_csv(std::ostream& os);

// Six significant digits ("%.6g"), the one number format all CSV/CLI output uses.
std::string fmt6(double v);

// --- simulation-vs-analytic cross-validation -------------------------------

struct ValidatePoint {
    ModelParams params;
    Policy policy = Policy::Coding;
};

std::vector<ValidatePoint> default_coding_grid();  // 9 points, theta = 0
std::vector<ValidatePoint> skipping_theta_grid();  // lambda = mu = 1, 4 thetas

// Runs the DES at every point and checks that each flow's analytic goodput
// (plus `bias`, a deliberate-corruption hook for testing the harness) lies
// inside the simulation's 99% confidence interval. One report line per flow
// with the z-score; returns true when every check passes.
bool run_validation(const std::vector<ValidatePoint>& points, const SimConfig& cfg,
                    Exec exec, double bias, std::ostream& report);

// --- flat key=value spec files ---------------------------------------------

// Lines of `key=value`; blank lines and #-comments ignored. ConfigError on a
// line without '='. Keys mirror the CLI flags; later CLI flags override.
std::vector<std::pair<std::string, std::string>> parse_kv_file(std::istream& in);

// ConfigError on unknown key or unparsable value.
void apply_key(ExperimentSpec& s, const std::string& key, const std::string& value);

}  // namespace rtq::sweep
