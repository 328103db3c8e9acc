#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ctmax/experiments.hpp"
#include "ctmax/exponents.hpp"

using namespace ctmax;

TEST_CASE("critical exponents") {
    CHECK(critical_exponent(2.0, 2.0) == 0.25);
    CHECK(critical_exponent(2.0, 0.5) == 0.0);
    CHECK(critical_exponent(2.0, 1.0) == 0.0);
    CHECK(critical_exponent(2.0, 4.0) == 0.375);
    CHECK(critical_exponent(2.0, 4.0) == 0.5 - 1.0 / 8.0);
    CHECK(local_critical_exponent(2.0, 4.0) == 0.25);
    CHECK(local_critical_exponent(2.0, 2.0) == 0.25);
    CHECK(local_critical_exponent(3.0, 1.2) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(critical_gamma(2.0) == 2.0);
    CHECK(critical_gamma(3.0) == 1.5);
    CHECK_THROWS_AS(critical_exponent(1.0, 2.0), DomainError);
    CHECK_THROWS_AS(critical_exponent(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(local_critical_exponent(0.5, 2.0), DomainError);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double a = 1.05 + 0.2 * i, g = 0.1 + 0.3 * j;
            CHECK(local_critical_exponent(a, g) == std::min(critical_exponent(a, g), 0.25));
        }
}

TEST_CASE("config defaults, overrides and errors") {
    RunConfig cfg;
    for (const auto& k : config_keys()) CHECK(cfg.text(k.name) == k.default_value);
    CHECK(cfg.number("a") == 2.0);
    CHECK(cfg.integer("ladder.count") == 512);
    CHECK(cfg.flag("dom.refine"));
    CHECK(cfg.numbers("scan.vs") == std::vector<double>{0.2, 0.1, 0.05});
    CHECK(cfg.numbers("scan.s_values").empty());

    cfg.assign("a = 3");
    CHECK(cfg.number("a") == 3.0);
    CHECK_THROWS_AS(cfg.assign("nope=1"), ConfigError);
    CHECK_THROWS_AS(cfg.assign("a"), ConfigError);
    cfg.set("gamma", "x1");
    CHECK_THROWS_AS(cfg.number("gamma"), ConfigError);
    cfg.set("ladder.count", "2.5");
    CHECK_THROWS_AS(cfg.integer("ladder.count"), ConfigError);
    cfg.set("dom.refine", "maybe");
    CHECK_THROWS_AS(cfg.flag("dom.refine"), ConfigError);

    RunConfig file;
    file.load_text("# comment\n\nscan.vs = 0.1, 0.05  # two scales\ngamma=1.5\n");
    CHECK(file.numbers("scan.vs") == std::vector<double>{0.1, 0.05});
    CHECK(file.number("gamma") == 1.5);
    try {
        file.load_text("a=2\nbogus=1\n", "run.cfg");
        FAIL("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("run.cfg:2") != std::string::npos);
    }
    CHECK_THROWS_AS(file.load_file("/nonexistent/ctmax.cfg"), ConfigError);
}

TEST_CASE("number formatting and table output") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");

    Table t;
    t.columns = {"x", "n", "ok", "note"};
    t.add({0.5, 3LL, true, std::string("a,b")});
    t.add({NAN, -1LL, false, std::string()});
    CHECK_THROWS_AS(t.add({1.0}), Error);
    std::ostringstream csv;
    write_csv(csv, t);
    CHECK(csv.str() == "x,n,ok,note\n0.5,3,1,\"a,b\"\nnan,-1,0,\n");
    const auto j = to_json(t);
    CHECK(j[0]["x"] == 0.5);
    CHECK(j[1]["x"].is_null());
    CHECK(j[0]["ok"] == true);
}

TEST_CASE("path parsing") {
    CHECK(parse_path("0").g(0.7) == 0.0);
    CHECK(parse_path("t").g(0.7) == 0.7);
    CHECK(parse_path("t^3").g(0.5) == 0.125);
    CHECK(parse_path(" 0.5 * t^2 ").g(0.5) == 0.125);
    CHECK_THROWS_AS(parse_path("sin(t)"), ConfigError);
    CHECK_THROWS_AS(parse_path("t^x"), ConfigError);
    CHECK_THROWS_AS(parse_path("c*t"), ConfigError);
}

TEST_CASE("log-log slope fit") {
    CHECK(fitted_loglog_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::isnan(fitted_loglog_slope({1}, {1})));
    CHECK(std::isnan(fitted_loglog_slope({1, 2}, {0, 1})));
}

TEST_CASE("scan indices") {
    RunConfig cfg;
    const auto s = scan_s_values(cfg, 2.0, 2.0);
    CHECK(s == std::vector<double>{0.0, 0.0625, 0.125, 0.1875, 0.25, 0.3});
    cfg.set("scan.s_above", "-1");
    CHECK(scan_s_values(cfg, 2.0, 2.0).size() == 5);
    cfg.set("scan.s_values", "0.1");
    CHECK(scan_s_values(cfg, 2.0, 2.0) == std::vector<double>{0.1});
}

TEST_CASE("exponent and phase diagram commands") {
    RunConfig cfg;
    const auto e = cmd_exponent(cfg);
    CHECK(render(e, "csv") == "a,gamma,s_crit,s_crit_local,gamma_critical\n2,2,0.25,0.25,2\n");

    cfg.set("phase.as", "2,3");
    cfg.set("phase.gammas", "1.5,2,1000000");
    const auto p = cmd_phase_diagram(cfg);
    REQUIRE(p.table.rows.size() == 6);
    CHECK(std::get<double>(p.table.rows[2][2]) < 0.5);
    CHECK(std::get<double>(p.table.rows[2][2]) > 0.4999);
    CHECK(std::get<double>(p.table.rows[3][2]) == 0.25);
    CHECK(std::get<double>(p.table.rows[3][3]) == 0.25);
    CHECK(std::get<double>(p.table.rows[3][4]) == 1.5);
    cfg.set("phase.gammas", "0");
    CHECK_THROWS_AS(cmd_phase_diagram(cfg), DomainError);
}

TEST_CASE("sharpness scan edge cases") {
    RunConfig cfg;
    cfg.set("scan.vs", "");
    const auto empty = cmd_sharpness_scan(cfg);
    CHECK(empty.exit_code == 0);
    CHECK(empty.table.rows.empty());
    const std::string csv = render(empty, "csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);

    cfg.set("gamma", "1");
    CHECK_THROWS_AS(cmd_sharpness_scan(cfg), PreconditionError);
}

TEST_CASE("sharpness scan rows are recomputable and infeasible rows do not abort") {
    RunConfig cfg;
    cfg.set("scan.vs", "0.6,0.2");
    cfg.set("scan.s_values", "0,0.25");
    cfg.set("ladder.count", "64");
    const auto res = cmd_sharpness_scan(cfg);
    REQUIRE(res.table.rows.size() == 4);
    const auto& cols = res.table.columns;
    auto col = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
    };
    int infeasible = 0;
    for (const auto& row : res.table.rows) {
        if (!std::get<bool>(row[col("feasible")])) {
            ++infeasible;
            CHECK(std::get<double>(row[col("v")]) == 0.6);
            CHECK(!std::get<std::string>(row[col("error")]).empty());
            continue;
        }
        const double ratio = std::get<double>(row[col("ratio")]);
        CHECK(ratio == std::get<double>(row[col("maximal_l2")]) / std::get<double>(row[col("sobolev_norm")]));
        CHECK(std::get<bool>(row[col("checks_passed")]));
    }
    CHECK(infeasible == 2);
    CHECK(res.exit_code == kChecksFailed);
}

TEST_CASE("smooth convergence") {
    RunConfig cfg;
    const auto res = cmd_convergence(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.summary["monotone"] == true);
    CHECK(res.summary["relative_at_target"].get<double>() < 1e-3);
    cfg.set("conv.mode", "other");
    CHECK_THROWS_AS(cmd_convergence(cfg), ConfigError);
}

TEST_CASE("family convergence below and above the local exponent") {
    RunConfig cfg;
    cfg.set("conv.mode", "family");
    cfg.set("conv.vs", "0.1,0.05,0.025");
    const auto res = cmd_convergence(cfg);
    REQUIRE(res.summary["trends"].size() == 2);
    CHECK(res.summary["trends"][0]["growth"] == true);
    CHECK(res.summary["trends"][1]["spread"].get<double>() <= 2.0);
    CHECK(res.exit_code == 0);
}

TEST_CASE("domination command with equal paths") {
    RunConfig cfg;
    cfg.set("dom.h", "t^3");
    cfg.set("dom.dilate_count", "8");
    cfg.set("dom.refine", "false");
    const auto res = cmd_domination(cfg);
    CHECK(res.summary["ratio"].get<double>() <= 1.0 + 1e-12);
    CHECK(res.summary["convolution_max_deviation"].get<double>() == 0.0);
    CHECK(res.exit_code == 0);
    cfg.set("dom.g", "t^2");
    cfg.set("dom.h", "t^3");
    CHECK_THROWS_AS(cmd_domination(cfg), PreconditionError);
}

TEST_CASE("kernel probe flags the hypothesis") {
    RunConfig cfg;
    cfg.set("probe.Ns", "1,4");
    cfg.set("probe.times", "0.001,0.1,0.5");
    cfg.set("probe.x_count", "8");
    cfg.set("gamma", "3");
    cfg.set("probe.alpha", "0.2");
    const auto low = cmd_kernel_probe(cfg);
    CHECK(low.summary["hypothesis_satisfied"] == false);
    CHECK(low.summary["k_exceeds_one"] == false);
    cfg.set("probe.alpha", "0.9");
    const auto high = cmd_kernel_probe(cfg);
    CHECK(high.summary["hypothesis_satisfied"] == true);
    CHECK(high.summary["k_exceeds_one"] == true);
    CHECK(high.table.rows.size() == 8);
}

TEST_CASE("rendering is deterministic") {
    RunConfig cfg;
    cfg.set("scan.vs", "0.2");
    cfg.set("ladder.count", "32");
    const auto one = render(run_command("sharpness-scan", cfg), "json");
    const auto two = render(run_command("sharpness-scan", cfg), "json");
    CHECK(one == two);
    CHECK_THROWS_AS(run_command("bogus", cfg), ConfigError);
    CHECK_THROWS_AS(render(cmd_exponent(cfg), "xml"), ConfigError);
}
