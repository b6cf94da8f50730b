#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "sdgame/sweep.hpp"

using namespace sdgame;

TEST_CASE("log-uniform schedule") {
    Schedule sch;
    sch.kind = ScheduleKind::LogUniform;
    sch.lambda_min = 1e-6;
    sch.lambda_max = 1e-2;
    sch.count = 9;
    const std::vector<double> ls = sch.lambdas();
    REQUIRE(ls.size() == 9);
    CHECK(ls.front() == doctest::Approx(1e-2).epsilon(1e-14));
    CHECK(ls.back() == doctest::Approx(1e-6).epsilon(1e-14));
    const double gap = (std::log(ls.back()) - std::log(ls.front())) / 8.0;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        CHECK(ls[i] < ls[i - 1]);  // descending
        CHECK(std::abs(std::log(ls[i]) - std::log(ls[i - 1]) - gap) <= 1e-9);
    }
}

TEST_CASE("log-log-uniform schedule is uniform in ln(-ln lambda)") {
    Schedule sch;
    sch.kind = ScheduleKind::LogLogUniform;
    sch.lambda_min = 1e-300;
    sch.lambda_max = 1e-2;
    sch.count = 100;
    const std::vector<double> ls = sch.lambdas();
    REQUIRE(ls.size() == 100);
    std::vector<double> u;
    for (double l : ls) u.push_back(std::log(-std::log(l)));
    CHECK(u.front() == doctest::Approx(1.52726).epsilon(1e-4));
    CHECK(u.back() == doctest::Approx(6.53782).epsilon(1e-4));
    const double gap = (u.back() - u.front()) / 99.0;
    for (std::size_t i = 1; i < u.size(); ++i) {
        CHECK(ls[i] < ls[i - 1]);
        CHECK(std::abs(u[i] - u[i - 1] - gap) <= 1e-9);
    }
}

TEST_CASE("explicit schedule sorts, deduplicates, and clamps") {
    Schedule sch;
    sch.kind = ScheduleKind::Explicit;
    sch.explicit_values = {0.01, 0.05, 0.01, 1.0, 1e-320};
    const std::vector<double> ls = sch.lambdas();
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == kActionBound);  // 1.0 clamped down
    CHECK(ls[1] == 0.05);
    CHECK(ls[2] == 0.01);
    CHECK(ls[3] == kLambdaFloor);  // subnormal clamped up

    Schedule bad = sch;
    bad.explicit_values = {0.01, -0.5};
    CHECK_THROWS_AS((void)bad.lambdas(), std::invalid_argument);
    bad.explicit_values = {};
    CHECK_THROWS_AS((void)bad.lambdas(), std::invalid_argument);
}

TEST_CASE("schedule validation") {
    Schedule sch;
    sch.count = 1;
    CHECK_THROWS_AS((void)sch.lambdas(), std::invalid_argument);
    sch.count = 10;
    sch.lambda_min = 0.01;
    sch.lambda_max = 0.01;
    CHECK_THROWS_AS((void)sch.lambdas(), std::invalid_argument);
}

TEST_CASE("value sweep with the solver enabled") {
    Schedule sch;
    sch.kind = ScheduleKind::LogUniform;
    sch.lambda_min = 1e-6;
    sch.lambda_max = 1e-2;
    sch.count = 5;
    const SweepResult res = sweep_values(SDProfile::zero(), sch, true, 65, 1e-10);
    CHECK(res.solver_used);
    REQUIRE(res.rows.size() == 5);
    for (const auto& row : res.rows) {
        const double rl = std::sqrt(row.lambda);
        CHECK(row.closed_form.plus == doctest::Approx(rl).epsilon(1e-14));
        CHECK(row.closed_form.minus == doctest::Approx(-rl).epsilon(1e-14));
        CHECK(row.solver_error <= 1e-8);
        CHECK(row.duality_gap <= 1e-12);
        CHECK(row.derivative_plus == doctest::Approx(0.5 / rl).epsilon(1e-12));
        CHECK(row.derivative_minus == doctest::Approx(-0.5 / rl).epsilon(1e-12));
    }
}

TEST_CASE("value sweep without solver marks the solver columns as NaN") {
    Schedule sch;
    sch.kind = ScheduleKind::Explicit;
    sch.explicit_values = {1e-3, 1e-4};
    const SDProfile no_dprime = SDProfile::zero().with_custom_d(
        [](double x) { return std::sqrt(x); });
    const SweepResult res = sweep_values(no_dprime, sch, false, 65, 1e-10);
    CHECK_FALSE(res.solver_used);
    REQUIRE(res.rows.size() == 2);
    for (const auto& row : res.rows) {
        CHECK(std::isnan(row.solver_error));
        CHECK(std::isnan(row.duality_gap));
        CHECK(std::isnan(row.derivative_plus));
        CHECK(std::isnan(row.derivative_minus));
    }
}

TEST_CASE("oscillation survives to arbitrarily small discounts") {
    Schedule sch;
    sch.kind = ScheduleKind::LogUniform;
    sch.lambda_min = 1e-10;
    sch.lambda_max = 1e-2;
    sch.count = 200;
    const OscillationReport rep = oscillation_report(SDProfile::sinlog(), sch);
    CHECK(rep.spread_plus >= 0.120);
    CHECK(rep.spread_minus >= 0.120);
    CHECK(rep.spread_plus <= 0.125 + 1e-9);  // never exceeds 2A
    CHECK(rep.sign_changes >= 4);
    CHECK(rep.lambda_at_min_plus >= 1e-10);
    CHECK(rep.lambda_at_max_plus <= 1e-2);
    CHECK(rep.min_plus < 0.0);
    CHECK(rep.max_plus > 0.0);

    const OscillationReport flat = oscillation_report(SDProfile::zero(), sch);
    CHECK(flat.spread_plus <= 1e-12);
    CHECK(flat.sign_changes == 0);

    Schedule empty;
    empty.kind = ScheduleKind::Explicit;
    CHECK_THROWS_AS((void)oscillation_report(SDProfile::zero(), empty),
                    std::invalid_argument);
}

TEST_CASE("csv output is deterministic and hashed") {
    const std::map<std::string, std::string> config = {
        {"op", "test"}, {"alpha", "1"}, {"zeta", "2"}};
    const std::vector<std::string> cols = {"a", "b"};

    auto render = [&](double tweak) {
        std::ostringstream os;
        CsvWriter w(os, config, cols);
        w.write_row({1.0, 2.5});
        w.write_row({std::sqrt(2.0), tweak});
        w.finish();
        w.finish();  // idempotent
        return os.str();
    };

    const std::string one = render(0.125);
    const std::string two = render(0.125);
    CHECK(one == two);
    CHECK(one.find("# alpha=1\n") != std::string::npos);
    CHECK(one.find("# content_hash=") != std::string::npos);
    CHECK(one.find("a,b\n") != std::string::npos);
    CHECK(one.find("1,2.5\n") != std::string::npos);
    // Comment keys come out sorted, before the header and data.
    CHECK(one.find("# alpha=1") < one.find("# op=test"));
    CHECK(one.find("# op=test") < one.find("# zeta=2"));
    CHECK(one.find("# content_hash=") < one.find("a,b\n"));

    const std::string three = render(0.25);
    CHECK(one != three);
    CHECK(one.substr(one.find("# content_hash="), 31) !=
          three.substr(three.find("# content_hash="), 31));

    std::ostringstream os;
    CsvWriter w(os, config, cols);
    w.finish();
    CHECK_THROWS_AS(w.write_row({1.0}), std::logic_error);
}

TEST_CASE("17-digit formatting round-trips") {
    for (double v : {3.141592653589793, 1.0 / 3.0, 1e-300, 0.0625, -0.0,
                     123456789.123456789}) {
        const std::string s = format_double_17(v);
        const double back = std::stod(s);
        CHECK(back == v);
    }
    CHECK(format_double_17(0.0625) == "0.0625");
    const std::string nan_s = format_double_17(std::nan(""));
    CHECK((nan_s == "nan" || nan_s == "-nan"));
}

TEST_CASE("fnv-1a 64 reference vectors") {
    CHECK(fnv1a64("") == UINT64_C(14695981039346656037));
    CHECK(fnv1a64("a") == UINT64_C(0xaf63dc4c8601ec8c));
    CHECK(fnv1a64("ab") != fnv1a64("ba"));
}
