#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sdgame/solver.hpp"

using namespace sdgame;

TEST_CASE("discounted solver reproduces the closed form when lambda is a grid point") {
    const std::vector<SDProfile> profiles = {
        SDProfile::zero(), SDProfile::sinlog(), SDProfile::sinloglog()};
    for (const auto& pr : profiles) {
        const TransitionKernel k = kernel_sqrt(pr);
        for (double l : {1e-3, 1e-6, 1e-9}) {
            CAPTURE(pr.describe());
            CAPTURE(l);
            const GridGame g = make_grid_game(k, Discount(l), 129);
            const DiscountedSolution sol = solve_discounted(g);
            const ValuePair w = closed_form_value(pr, Discount(l));
            CHECK(linf_distance(sol.value, w) <= 1e-8);
            CHECK(sol.final_gap <= 1e-12);
            CHECK(sol.last_step <= std::max(1e-10 * l, 4e-15));
            CHECK(sol.iterations > 0);
        }
    }
}

TEST_CASE("discounted solver still converges when lambda is off the grid") {
    const SDProfile pr = SDProfile::zero();
    const TransitionKernel k = kernel_sqrt(pr);
    const std::vector<double> grid = base_action_grid(65);

    // A discount that happens to be a grid point needs no insertion and still
    // reproduces the closed form.
    double on_grid = 0.0;
    for (double a : grid)
        if (a >= 1e-4 && a <= 1e-2) on_grid = a;
    REQUIRE(on_grid > 0.0);
    const GridGame g_on(k, Discount(on_grid), grid);
    REQUIRE(g_on.lambda_index() >= 0);
    CHECK(linf_distance(solve_discounted(g_on).value,
                        closed_form_value(pr, Discount(on_grid))) <= 1e-8);

    // Off the grid the iteration still reaches the fixed point of the grid
    // operator; that point carries an O(grid) pessimistic bias (the opponent
    // cannot play near lambda), so only a loose proximity claim holds.
    const double l = 1e-3;
    const GridGame g_off(k, Discount(l), grid);
    REQUIRE(g_off.lambda_index() == -1);
    const DiscountedSolution sol = solve_discounted(g_off);
    CHECK(sol.last_step <= std::max(1e-10 * l, 4e-15));
    CHECK(linf_distance(sol.value, closed_form_value(pr, Discount(l))) <= 0.2);
    // The reported fixed point really is fixed under the operator.
    CHECK(linf_distance(g_off.apply(sol.value), sol.value) <= 1e-12);
}

TEST_CASE("discounted solver argument validation and non-convergence") {
    const TransitionKernel k = kernel_sqrt(SDProfile::zero());
    const GridGame no_lambda = make_grid_game(k, 17);
    CHECK_THROWS_AS((void)solve_discounted(no_lambda), std::logic_error);

    const GridGame g = make_grid_game(k, Discount(0.01), 33);
    CHECK_THROWS_AS((void)solve_discounted(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_discounted(g, 1e-10, 1), NonConvergenceError);
    try {
        (void)solve_discounted(g, 1e-10, 1);
        FAIL("expected NonConvergenceError");
    } catch (const NonConvergenceError& e) {
        CHECK(e.last_step() > 0.0);
        CHECK(std::abs(e.last_iterate().plus) <= 1.0 + 1e-9);
    }
}

TEST_CASE("one- and two-stage values by hand for s == 0") {
    const TransitionKernel k = kernel_sqrt(SDProfile::zero());

    const GridGame g17 = make_grid_game(k, 17);
    const NStageSolution s1 = solve_nstage(g17, 1);
    CHECK(s1.value.plus == 1.0);
    CHECK(s1.value.minus == -1.0);
    CHECK(s1.stages == 1);

    // On {0, 1/64, 1/16} the stage-2 matrix is 2 - 2 p+, whose saddle sits at
    // (0, 1/16) with p+ = 0.1, so v_2(omega+) = 0.9.
    const GridGame g3(k, std::nullopt, {0.0, 1.0 / 64, 1.0 / 16});
    const NStageSolution s2 = solve_nstage(g3, 2);
    CHECK(std::abs(s2.value.plus - 0.9) <= 1e-10);
    CHECK(std::abs(s2.value.minus + 0.9) <= 1e-10);
    CHECK(s2.max_stage_gap <= 1e-12);

    CHECK_THROWS_AS((void)solve_nstage(g17, 0), std::invalid_argument);
}

TEST_CASE("n-stage minmax bias is one-sided for s == 0") {
    // Backward induction takes the minmax (upper) value at both states, so on
    // a grid whose stage matrices have positive duality gaps the symmetric
    // game loses exact antisymmetry -- but only upward, and only within the
    // accumulated per-stage gap.
    const GridGame g = make_grid_game(kernel_sqrt(SDProfile::zero()), 33);
    for (int n : {5, 40, 200}) {
        const NStageSolution sol = solve_nstage(g, n);
        CAPTURE(n);
        CHECK(std::abs(sol.value.plus) <= 1.0);
        CHECK(std::abs(sol.value.minus) <= 1.0);
        CHECK(sol.value.plus >= sol.value.minus);  // omega+ is the good state
        const double bias = sol.value.plus + sol.value.minus;
        CHECK(bias >= -1e-12);
        CHECK(bias <= double(n) * sol.max_stage_gap + 1e-12);
    }
}

TEST_CASE("transfer bound holds for the flat profile") {
    const TransferReport report =
        check_transfer(SDProfile::zero(), {16, 64, 256}, 33);
    CHECK(report.derivative_screen_passed);
    CHECK(report.derivative_screen_max <= 1e-3);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.all_within);
    // First row: no closed-form increments yet, only the blanket early mass.
    CHECK(report.rows[0].n == 16);
    CHECK(report.rows[0].bound == 240.0 / 16.0);
    for (const auto& row : report.rows) {
        CHECK(row.within_bound);
        CHECK(row.distance <= row.bound + row.slack);
        CHECK(row.slack >= 0.0);
    }
    // Bounds shrink as n grows: the early mass amortizes away.
    CHECK(report.rows[2].bound < report.rows[0].bound);
}

TEST_CASE("transfer rows outside the closed-form domain are skipped") {
    const TransferReport report = check_transfer(SDProfile::zero(), {4, 16}, 33);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].n == 16);
}

TEST_CASE("derivative screen rejects the fast oscillation") {
    // lambda dv/dlambda = A cos(ln lambda) +- sqrt(lambda)/2 does not vanish
    // as lambda -> 0, so the transfer hypothesis fails for this profile.
    const TransferReport report = check_transfer(SDProfile::sinlog(), {16}, 33);
    CHECK_FALSE(report.derivative_screen_passed);
    CHECK(report.derivative_screen_max > 1e-3);
}
