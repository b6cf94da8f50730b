#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "sdgame/game.hpp"
#include "sdgame/montecarlo.hpp"

using namespace sdgame;

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next_u64() == UINT64_C(0xE220A8397B1DCDAF));
    CHECK(rng.next_u64() == UINT64_C(0x6E789E6AA1B965F4));
    CHECK(rng.next_u64() == UINT64_C(0x06C45D188009454F));

    SplitMix64 rng2(0x123456789abcdef0ULL);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng2.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("absorbing start pays the truncated annuity exactly") {
    const TransitionKernel k = kernel_sqrt(SDProfile::zero());
    const double l = 1.0 / 16;
    const SimulationResult r =
        simulate_discounted(k, Discount(l), GameState::AbsPlus,
                            constant_policy(l), constant_policy(l), 200, 7);
    CHECK(r.horizon == 357);  // ceil(ln 1e-10 / ln(15/16))
    const double annuity = 1.0 - std::pow(1.0 - l, r.horizon);
    CHECK(r.mean == doctest::Approx(annuity).epsilon(1e-12));
    CHECK(r.std_error <= 1e-7);  // identical samples up to summation roundoff
    // No transition ever absorbed it; the start state was already absorbing.
    CHECK(r.absorbed_fraction == 0.0);
    CHECK(r.mean_absorption_time == 0.0);
    CHECK(r.occupation_plus_fraction == 0.0);
}

TEST_CASE("simulation is reproducible and bounded") {
    const TransitionKernel k = kernel_sqrt(SDProfile::sinlog());
    const double l = 1.0 / 16;
    const SimulationResult a =
        simulate_discounted(k, Discount(l), GameState::OmegaPlus,
                            constant_policy(l), constant_policy(0.01), 3000, 42);
    const SimulationResult b =
        simulate_discounted(k, Discount(l), GameState::OmegaPlus,
                            constant_policy(l), constant_policy(0.01), 3000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.absorbed_fraction == b.absorbed_fraction);
    CHECK(a.mean_absorption_time == b.mean_absorption_time);
    CHECK(std::abs(a.mean) <= 1.0);
    CHECK(a.std_error > 0.0);
    CHECK(a.trajectories == 3000);

    const SimulationResult c =
        simulate_discounted(k, Discount(l), GameState::OmegaPlus,
                            constant_policy(l), constant_policy(0.01), 3000, 43);
    CHECK(a.mean != c.mean);  // different seed, different sample
}

TEST_CASE("estimate agrees with the closed form at the equalizing profile") {
    // s == 0, lambda = 1/16: value at omega+ is 1/4 whatever the opponent does.
    const TransitionKernel k = kernel_sqrt(SDProfile::zero());
    const double l = 1.0 / 16;
    const EqualizingCheck chk = check_equalizing_mc(
        k, Discount(l), {0.0, 0.001, 0.01, 0.03, 1.0 / 16}, 20000, 2024, 5.0);
    REQUIRE(chk.rows.size() == 5);
    for (const auto& row : chk.rows) {
        CHECK(row.predicted == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(row.std_error > 0.0);
        CHECK(row.sigma_distance ==
              doctest::Approx(std::abs(row.estimate - row.predicted) / row.std_error)
                  .epsilon(1e-12));
    }
    CHECK(chk.all_within);
    CHECK(chk.max_sigma_distance <= 5.0);
}

TEST_CASE("occupation matches the invariant measure once mixed") {
    const TransitionKernel k = kernel_sqrt(SDProfile::zero());
    const OccupationResult r =
        occupation_check(k, Discount(1e-4), GameState::OmegaPlus, 2000, 99);
    CHECK(r.window == 465);  // ceil(lambda^{-2/3})
    CHECK(r.predicted == doctest::Approx(0.5).epsilon(1e-12));
    // The transient discard removes the start-state bias (about 0.055 at
    // this lambda), so the estimate sits at the invariant measure up to
    // sampling noise (sigma about 0.005 here).
    CHECK(std::abs(r.fraction_plus - 0.5) <= 0.03);
    CHECK(r.absorbed_fraction < 0.10);
    CHECK_FALSE(r.absorption_warning);

    // Same seed from the opposite start: mixing erases the start state.
    const OccupationResult rm =
        occupation_check(k, Discount(1e-4), GameState::OmegaMinus, 2000, 99);
    CHECK(std::abs(rm.fraction_plus - 0.5) <= 0.03);
}

TEST_CASE("occupation check warns when absorption breaks the regime") {
    const TransitionKernel k = kernel_sqrt(SDProfile::zero());
    // At lambda = 0.01 roughly one in six trajectories absorbs inside the
    // measured window, well past the 10% heuristic budget.
    const OccupationResult r =
        occupation_check(k, Discount(0.01), GameState::OmegaPlus, 2000, 7);
    CHECK(r.window == 22);
    CHECK(r.absorbed_fraction > 0.10);
    CHECK(r.absorption_warning);

    // An absorbing start leaves nothing to measure at all.
    const OccupationResult ra =
        occupation_check(k, Discount(1e-4), GameState::AbsPlus, 10, 1);
    CHECK(ra.absorption_warning);
    CHECK(ra.fraction_plus == 0.0);
}
