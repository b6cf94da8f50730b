#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sdgame/kernel.hpp"
#include "sdgame/types.hpp"

namespace sdgame {

/// Deterministic 64-bit generator (splitmix64). Each trajectory gets its own
/// stream seeded with seed ^ index, so runs are reproducible and trajectory
/// order does not matter.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

  private:
    std::uint64_t state_;
};

using Policy = std::function<double(GameState, int stage)>;

Policy constant_policy(double action);

struct SimulationResult {
    double mean = 0.0;          // average discounted payoff across trajectories
    double std_error = 0.0;     // sample standard error of the mean
    long trajectories = 0;
    int horizon = 0;            // truncation stage; tail handled analytically
    double absorbed_fraction = 0.0;
    double mean_absorption_time = 0.0;  // among absorbed trajectories; 0 if none
    double occupation_plus_fraction = 0.0;  // omega+ share of nonabsorbed stages
};

/// Discounted payoff estimate under fixed stationary (or stage-dependent)
/// policies. The trajectory is truncated at the stage where the remaining
/// discounted tail falls below tail_tol; absorption ends a trajectory early
/// with the exact tail added analytically.
SimulationResult simulate_discounted(const TransitionKernel& kernel, Discount lambda,
                                     GameState start, const Policy& p1,
                                     const Policy& p2, long trajectories,
                                     std::uint64_t seed, double tail_tol = 1e-10);

struct EqualizingCheckRow {
    double opponent_action = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double predicted = 0.0;
    double sigma_distance = 0.0;  // |estimate - predicted| / std_error
};

struct EqualizingCheck {
    std::vector<EqualizingCheckRow> rows;
    double max_sigma_distance = 0.0;
    bool all_within = false;  // every row within the sigma budget
};

/// Empirical counterpart of the equalizing property: player 1 fixes the
/// kernel action lambda at omega+ while the opponent sweeps a list of
/// actions; every estimate should sit within sigmas * std_error of the
/// closed-form value.
EqualizingCheck check_equalizing_mc(const TransitionKernel& kernel, Discount lambda,
                                    const std::vector<double>& opponent_actions,
                                    long trajectories, std::uint64_t seed,
                                    double sigmas = 4.0);

struct OccupationResult {
    double fraction_plus = 0.0;   // omega+ share of measured nonabsorbed stages
    double predicted = 0.0;       // p- / (p- + p+) at (lambda, lambda)
    int window = 0;               // ceil(lambda^{-2/3}) stages
    double absorbed_fraction = 0.0;   // absorbed inside the measured window
    bool absorption_warning = false;  // > 10% absorbed, or no survivors to measure
};

/// Share of time spent at omega+ under the stationary profile (lambda,
/// lambda), against the swap-chain invariant measure p- / (p- + p+).
/// Each trajectory runs for two windows of ceil(lambda^{-2/3}) stages:
/// the first is discarded as a mixing transient (the swap chain mixes in
/// about lambda^{-1/2} stages, so the start state would otherwise bias
/// the estimate) and the second is measured. The window is short enough
/// that absorption stays rare inside it; a warning flags when more than
/// 10% of the measured trajectories absorb, or when none survive the
/// transient.
OccupationResult occupation_check(const TransitionKernel& kernel, Discount lambda,
                                  GameState start, long trajectories,
                                  std::uint64_t seed);

}  // namespace sdgame
