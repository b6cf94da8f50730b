#include "sdgame/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "sdgame/game.hpp"

namespace sdgame {

std::uint64_t SplitMix64::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

Policy constant_policy(double action) {
    return [action](GameState, int) { return action; };
}

namespace {

std::uint64_t mix64(std::uint64_t v) { return SplitMix64(v).next_u64(); }

int horizon_for(double lambda, double tail_tol) {
    const double h = std::ceil(std::log(tail_tol) / std::log1p(-lambda));
    if (!(h >= 1.0)) return 1;
    if (h > 2.1e9) throw std::invalid_argument("simulation horizon too large");
    return int(h);
}

// Core trajectory loop shared by every Monte Carlo entry point, so that a
// cached-probability caller and a per-stage-evaluation caller produce bit
// identical results from the same seed. probs(state, stage) returns the
// (absorb, swap) pair for the current stage; exactly one uniform draw is
// consumed per nonabsorbing stage, in (absorb, swap, stay) order.
template <class ProbFn>
SimulationResult run_simulation(ProbFn&& probs, double lambda, GameState start,
                                long trajectories, std::uint64_t seed,
                                double tail_tol) {
    if (trajectories < 1) throw std::invalid_argument("trajectories must be >= 1");
    const int H = horizon_for(lambda, tail_tol);
    const double q = 1.0 - lambda;

    double sum = 0.0, sumsq = 0.0;
    long absorbed = 0;
    double absorb_time_sum = 0.0;
    long long plus_stages = 0, nonabs_stages = 0;

    for (long t = 0; t < trajectories; ++t) {
        SplitMix64 rng(seed ^ std::uint64_t(t));
        GameState state = start;
        double pay = 0.0;
        double pw = 1.0;  // (1 - lambda)^(stage - 1)
        try {
            for (int stage = 1; stage <= H; ++stage) {
                if (is_absorbing(state)) {
                    // Constant payoff through the truncated horizon, summed in
                    // closed form: sum_{t=stage}^{H} lambda q^{t-1} g.
                    pay += payoff(state) * pw * (1.0 - std::pow(q, H - stage + 1));
                    break;
                }
                ++nonabs_stages;
                if (state == GameState::OmegaPlus) ++plus_stages;
                pay += lambda * pw * payoff(state);
                pw *= q;
                const auto [pa, ps] = probs(state, stage);
                const double u = rng.next_double();
                if (u < pa) {
                    ++absorbed;
                    absorb_time_sum += stage;
                    state = state == GameState::OmegaPlus ? GameState::AbsPlus
                                                         : GameState::AbsMinus;
                } else if (u < pa + ps) {
                    state = state == GameState::OmegaPlus ? GameState::OmegaMinus
                                                         : GameState::OmegaPlus;
                }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("trajectory " + std::to_string(t) + ": " +
                                     e.what());
        }
        sum += pay;
        sumsq += pay * pay;
    }

    SimulationResult out;
    out.trajectories = trajectories;
    out.horizon = H;
    out.mean = sum / double(trajectories);
    if (trajectories > 1) {
        const double var =
            std::max(0.0, (sumsq - double(trajectories) * out.mean * out.mean) /
                              double(trajectories - 1));
        out.std_error = std::sqrt(var / double(trajectories));
    }
    out.absorbed_fraction = double(absorbed) / double(trajectories);
    out.mean_absorption_time = absorbed > 0 ? absorb_time_sum / double(absorbed) : 0.0;
    out.occupation_plus_fraction =
        nonabs_stages > 0 ? double(plus_stages) / double(nonabs_stages) : 0.0;
    return out;
}

struct StatePair {
    double absorb, swap;
};

// Per-state probabilities under constant actions, evaluated once.
struct ConstantProbs {
    StatePair plus, minus;

    ConstantProbs(const TransitionKernel& k, double x, double y)
        : plus{k.p_star_plus(x, y), k.p_plus(x, y)},
          minus{k.p_star_minus(x, y), k.p_minus(x, y)} {}

    std::pair<double, double> operator()(GameState s, int) const {
        const StatePair& p = s == GameState::OmegaPlus ? plus : minus;
        return {p.absorb, p.swap};
    }
};

}  // namespace

SimulationResult simulate_discounted(const TransitionKernel& kernel, Discount lambda,
                                     GameState start, const Policy& p1,
                                     const Policy& p2, long trajectories,
                                     std::uint64_t seed, double tail_tol) {
    auto probs = [&](GameState s, int stage) -> std::pair<double, double> {
        const double x = p1(s, stage), y = p2(s, stage);
        if (s == GameState::OmegaPlus)
            return {kernel.p_star_plus(x, y), kernel.p_plus(x, y)};
        return {kernel.p_star_minus(x, y), kernel.p_minus(x, y)};
    };
    return run_simulation(probs, lambda.value(), start, trajectories, seed, tail_tol);
}

EqualizingCheck check_equalizing_mc(const TransitionKernel& kernel, Discount lambda,
                                    const std::vector<double>& opponent_actions,
                                    long trajectories, std::uint64_t seed,
                                    double sigmas) {
    const double v = closed_form_value(kernel.profile(), lambda).plus;
    EqualizingCheck check;
    check.all_within = true;
    for (std::size_t r = 0; r < opponent_actions.size(); ++r) {
        const double y = opponent_actions[r];
        const ConstantProbs probs(kernel, lambda.value(), y);
        const std::uint64_t row_seed = seed ^ mix64(std::uint64_t(r) + 1);
        const SimulationResult sim = run_simulation(
            probs, lambda.value(), GameState::OmegaPlus, trajectories, row_seed, 1e-10);
        EqualizingCheckRow row;
        row.opponent_action = y;
        row.estimate = sim.mean;
        row.std_error = sim.std_error;
        row.predicted = v;
        row.sigma_distance = sim.std_error > 0.0
                                 ? std::abs(sim.mean - v) / sim.std_error
                                 : (std::abs(sim.mean - v) <= 1e-12 ? 0.0 : 1e300);
        check.max_sigma_distance =
            std::max(check.max_sigma_distance, row.sigma_distance);
        check.all_within = check.all_within && row.sigma_distance <= sigmas;
        check.rows.push_back(row);
    }
    return check;
}

OccupationResult occupation_check(const TransitionKernel& kernel, Discount lambda,
                                  GameState start, long trajectories,
                                  std::uint64_t seed) {
    if (trajectories < 1) throw std::invalid_argument("trajectories must be >= 1");
    const double l = lambda.value();
    const int window = int(std::ceil(std::pow(l, -2.0 / 3.0)));
    const ConstantProbs probs(kernel, l, l);

    // Two windows per trajectory: stages 1..window are a mixing transient
    // (discarded so the start state does not bias the estimate), stages
    // window+1..2*window are measured.
    long long plus_stages = 0, nonabs_stages = 0;
    long entered = 0, absorbed_in_window = 0;
    for (long t = 0; t < trajectories; ++t) {
        SplitMix64 rng(seed ^ std::uint64_t(t));
        GameState state = start;
        bool alive = !is_absorbing(state);
        for (int stage = 1; alive && stage <= 2 * window; ++stage) {
            if (stage == window + 1) ++entered;
            if (stage > window) {
                ++nonabs_stages;
                if (state == GameState::OmegaPlus) ++plus_stages;
            }
            const auto [pa, ps] = probs(state, stage);
            const double u = rng.next_double();
            if (u < pa) {
                if (stage > window) ++absorbed_in_window;
                alive = false;
            } else if (u < pa + ps) {
                state = state == GameState::OmegaPlus ? GameState::OmegaMinus
                                                      : GameState::OmegaPlus;
            }
        }
    }

    OccupationResult out;
    out.window = window;
    out.fraction_plus =
        nonabs_stages > 0 ? double(plus_stages) / double(nonabs_stages) : 0.0;
    const double swap_plus = probs.plus.swap, swap_minus = probs.minus.swap;
    out.predicted = swap_plus + swap_minus > 0.0
                        ? swap_minus / (swap_plus + swap_minus)
                        : std::nan("");
    out.absorbed_fraction =
        entered > 0 ? double(absorbed_in_window) / double(entered) : 0.0;
    out.absorption_warning = entered == 0 || out.absorbed_fraction > 0.10;
    return out;
}

}  // namespace sdgame
