#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "frozen.hpp"
#include "rtq/coding.hpp"
#include "rtq/skipping.hpp"
#include "rtq/sweep.hpp"

using namespace rtq::sweep;

TEST_CASE("range text parses to scalars and triples") {
    Range r = parse_range("0:5:41");
    CHECK(r.start == 0.0);
    CHECK(r.stop == 5.0);
    CHECK(r.steps == 41);

    Range s = parse_range("2.5");
    CHECK(s.start == 2.5);
    CHECK(s.stop == 2.5);
    CHECK(s.steps == 1);

    CHECK_THROWS_AS(parse_range("1:2"), rtq::ConfigError);
    CHECK_THROWS_AS(parse_range("1:2:3:4"), rtq::ConfigError);
    CHECK_THROWS_AS(parse_range("a:b:c"), rtq::ConfigError);
    CHECK_THROWS_AS(parse_range(""), rtq::ConfigError);
    CHECK_THROWS_AS(parse_range("1:2:zz"), rtq::ConfigError);
}

TEST_CASE("range expansion hits both endpoints exactly") {
    const std::vector<double> g = expand({0, 5, 41});
    REQUIRE(g.size() == 41);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 5.0);
    CHECK(g[20] == doctest::Approx(2.5).epsilon(1e-15));

    const std::vector<double> one = expand({3, 3, 1});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 3.0);

    CHECK_THROWS_AS(expand({0, 1, 0}), rtq::ConfigError);
    CHECK_THROWS_AS(expand({1, 0, 5}), rtq::ConfigError);
}

TEST_CASE("model names round-trip") {
    for (Model m : {Model::base, Model::skipping, Model::coding, Model::joint})
        CHECK(parse_model(model_name(m)) == m);
    CHECK_THROWS_AS(parse_model("turbo"), rtq::ConfigError);
}

TEST_CASE("spec validation rejects inconsistent grids") {
    ExperimentSpec s;
    s.model = Model::skipping;
    s.lambda = {1, 2, 3};
    s.d = {1, 1, 1};
    s.theta = {0, 0.5, 4};
    validate_spec(s);  // sane baseline

    ExperimentSpec bad = s;
    bad.mu = 0;
    CHECK_THROWS_AS(validate_spec(bad), rtq::ConfigError);

    bad = s;
    bad.theta = {0, 1.5, 3};  // exceeds smallest d
    CHECK_THROWS_AS(validate_spec(bad), rtq::ConfigError);

    bad = s;
    bad.model = Model::base;
    bad.theta = {0, 0.5, 4};  // base model admits no threshold
    CHECK_THROWS_AS(validate_spec(bad), rtq::ConfigError);

    bad = s;
    bad.model = Model::coding;
    bad.theta = {0.2, 0.2, 1};  // coding model is the theta = 0 case
    CHECK_THROWS_AS(validate_spec(bad), rtq::ConfigError);

    bad = s;
    bad.use_split = true;  // split rates only make sense with two flows
    bad.lambda1 = {1, 1, 1};
    bad.lambda2 = {1, 1, 1};
    CHECK_THROWS_AS(validate_spec(bad), rtq::ConfigError);

    bad = s;
    bad.lambda = {2, 1, 5};  // decreasing range
    CHECK_THROWS_AS(validate_spec(bad), rtq::ConfigError);
}

TEST_CASE("sweep rows come out in rate-major order with exact cell values") {
    ExperimentSpec s;
    s.model = Model::skipping;
    s.lambda = {1, 2, 2};
    s.d = {0.5, 1, 2};
    s.theta = {0, 0.25, 2};
    const std::vector<SweepRow> rows = run_sweep(s);
    REQUIRE(rows.size() == 8);
    // rates outer, then d, then theta
    CHECK(rows[0].lambda1 == 1.0);
    CHECK(rows[0].d == 0.5);
    CHECK(rows[0].theta == 0.0);
    CHECK(rows[1].theta == 0.25);
    CHECK(rows[2].d == 1.0);
    CHECK(rows[4].lambda1 == 2.0);
    for (const SweepRow& r : rows) {
        const rtq::ModelParams p{r.lambda1, r.lambda2, r.mu, r.d, r.theta};
        CHECK(r.gamma_total == rtq::skipping::goodput(p));
        CHECK(r.gamma_base ==
              rtq::skipping::goodput({r.lambda1, r.lambda2, r.mu, r.d, 0}));
        if (r.theta == 0.0) CHECK(r.gain_percent == 0.0);
    }
}

TEST_CASE("coding sweeps split a total rate symmetrically") {
    ExperimentSpec s;
    s.model = Model::coding;
    s.lambda = {15, 15, 1};
    s.d = {5, 5, 1};
    const std::vector<SweepRow> rows = run_sweep(s);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].lambda1 == 7.5);
    CHECK(rows[0].lambda2 == 7.5);
    CHECK(std::abs(rows[0].gain_percent - frozen::kGainPct_75_75_1_5) < 1e-9);
    CHECK(rows[0].gamma_total ==
          doctest::Approx(rows[0].gamma_flow1 + rows[0].gamma_flow2).epsilon(1e-15));
}

TEST_CASE("joint sweeps report gain on top of coding alone") {
    ExperimentSpec s;
    s.model = Model::joint;
    s.use_split = true;
    s.lambda1 = {2, 2, 1};
    s.lambda2 = {2, 2, 1};
    s.d = {1, 1, 1};
    s.theta = {0.2896754549055493, 0.2896754549055493, 1};
    const std::vector<SweepRow> rows = run_sweep(s);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0].additional_gain_percent - frozen::kJointAddPp_2_2_1_1) < 1e-6);
}

TEST_CASE("parallel sweeps replicate the serial rows bitwise") {
    ExperimentSpec s;
    s.model = Model::joint;
    s.lambda = {1, 8, 5};
    s.d = {0.3, 2, 4};
    s.theta = {0, 0.25, 3};
    const std::vector<SweepRow> a = run_sweep(s, rtq::Exec::Serial);
    const std::vector<SweepRow> b = run_sweep(s, rtq::Exec::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].gamma_flow1 == b[i].gamma_flow1);
        CHECK(a[i].gamma_flow2 == b[i].gamma_flow2);
        CHECK(a[i].gamma_total == b[i].gamma_total);
        CHECK(a[i].gamma_base == b[i].gamma_base);
        CHECK(a[i].gain_percent == b[i].gain_percent);
        CHECK(a[i].additional_gain_percent == b[i].additional_gain_percent);
    }
}

TEST_CASE("number formatting is compact and stable") {
    CHECK(fmt6(2.0 / 3.0) == "0.666667");
    CHECK(fmt6(0.0) == "0");
    CHECK(fmt6(-0.0) == "0");
    CHECK(fmt6(29.904927275268943) == "29.9049");
    CHECK(fmt6(1e-300) == "1e-300");
    CHECK(fmt6(3.0) == "3");
}

TEST_CASE("csv output is deterministic and carries the joint column") {
    ExperimentSpec s;
    s.model = Model::joint;
    s.lambda = {2, 4, 2};
    s.d = {1, 1, 1};
    s.theta = {0, 0.2, 2};
    const std::vector<SweepRow> rows = run_sweep(s);
    std::ostringstream a, b;
    write_sweep_csv(a, s, rows);
    write_sweep_csv(b, s, rows);
    CHECK(a.str() == b.str());
    const std::string head = a.str().substr(0, a.str().find('\n'));
    CHECK(head ==
          "lambda1,lambda2,mu,d,theta,gamma_flow1,gamma_flow2,gamma_total,"
          "gamma_base,gain_percent,additional_gain_percent");

    ExperimentSpec plain;
    plain.model = Model::skipping;
    std::ostringstream c;
    write_sweep_csv(c, plain, run_sweep(plain));
    const std::string phead = c.str().substr(0, c.str().find('\n'));
    CHECK(phead ==
          "lambda1,lambda2,mu,d,theta,gamma_flow1,gamma_flow2,gamma_total,"
          "gamma_base,gain_percent");
}

TEST_CASE("threshold table covers the 5x5 grid and regenerates bitwise") {
    std::ostringstream a, b;
    write_table1_csv(a);
    write_table1_csv(b);
    CHECK(a.str() == b.str());
    std::istringstream lines(a.str());
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    REQUIRE(all.size() == 26);
    CHECK(all[0] == "lambda,d,theta_star,max_gain_percent");
    CHECK(all[1].rfind("0.5,0.1,", 0) == 0);
    CHECK(all[25].rfind("8,0.5,", 0) == 0);
}

TEST_CASE("key=value spec files parse with comments and helpful errors") {
    std::istringstream in(
        "# goodput sweep\n"
        "model = joint\n"
        "\n"
        "lambda=0:8:5\n"
        "  d = 1  \n"
        "theta=0:0.5:3\n");
    const auto pairs = parse_kv_file(in);
    REQUIRE(pairs.size() == 4);
    CHECK(pairs[0].first == "model");
    CHECK(pairs[0].second == "joint");
    CHECK(pairs[2].first == "d");
    CHECK(pairs[2].second == "1");

    ExperimentSpec s;
    for (const auto& [k, v] : pairs) apply_key(s, k, v);
    CHECK(s.model == Model::joint);
    CHECK(s.lambda.stop == 8.0);
    CHECK(s.lambda.steps == 5);
    CHECK(s.theta.steps == 3);
    validate_spec(s);

    std::istringstream bad("model=joint\nno equals sign here\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_kv_file(bad)),
                         doctest::Contains("line 2"), rtq::ConfigError);
}

TEST_CASE("spec keys cover the cli surface and reject strangers") {
    ExperimentSpec s;
    apply_key(s, "model", "coding");
    apply_key(s, "lambda1", "1:2:2");
    apply_key(s, "lambda2", "2");
    CHECK(s.use_split);
    apply_key(s, "mu", "2");
    apply_key(s, "d", "0.5:1:2");
    apply_key(s, "out", "grid.csv");
    apply_key(s, "seed", "7");
    apply_key(s, "arrivals", "5000");
    apply_key(s, "replications", "3");
    CHECK(s.mu == 2.0);
    CHECK(s.out == "grid.csv");
    CHECK(s.sim.seed == 7);
    CHECK(s.sim.arrivals_target == 5000);
    CHECK(s.sim.replications == 3);
    CHECK_THROWS_AS(apply_key(s, "turbo", "1"), rtq::ConfigError);
    CHECK_THROWS_AS(apply_key(s, "mu", "fast"), rtq::ConfigError);
    // a later scalar overrides an earlier range, mirroring flag precedence
    apply_key(s, "lambda1", "4");
    CHECK(s.lambda1.start == 4.0);
    CHECK(s.lambda1.steps == 1);
}

TEST_CASE("stock validation grids exist and the bias hook trips the harness") {
    CHECK(default_coding_grid().size() == 9);
    CHECK(skipping_theta_grid().size() == 4);
    for (const ValidatePoint& pt : default_coding_grid()) {
        CHECK(pt.params.theta == 0.0);
        CHECK(pt.policy == rtq::Policy::Coding);
    }

    rtq::SimConfig cfg;
    cfg.seed = 2;
    cfg.arrivals_target = 20000;
    cfg.replications = 4;
    std::ostringstream rep;
    const bool clean =
        run_validation(skipping_theta_grid(), cfg, rtq::Exec::Serial, 0.0, rep);
    CHECK(clean);
    CHECK(rep.str().find("PASS") != std::string::npos);

    std::ostringstream rep2;
    const bool biased =
        run_validation(skipping_theta_grid(), cfg, rtq::Exec::Serial, 0.05, rep2);
    CHECK(!biased);
    CHECK(rep2.str().find("FAIL") != std::string::npos);
}
