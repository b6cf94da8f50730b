#pragma once

#include <stdexcept>
#include <vector>

#include "sdgame/game.hpp"

namespace sdgame {

struct DiscountedSolution {
    ValuePair value;
    long iterations = 0;
    double last_step = 0.0;    // sup norm of the final Picard step
    double error_bound = 0.0;  // a-priori bound (1 - lambda)/lambda * last_step
    double final_gap = 0.0;    // max pure-saddle gap of the two games at the output
};

class NonConvergenceError : public std::runtime_error {
  public:
    NonConvergenceError(ValuePair last, double step, long iterations);
    ValuePair last_iterate() const { return last_; }
    double last_step() const { return step_; }

  private:
    ValuePair last_;
    double step_;
};

/// Fixed point of the discounted operator by Picard iteration from (0, 0)
/// with a safeguarded acceleration: each sweep takes one operator step, then
/// solves the 2x2 affine model induced by the active saddle cells and keeps
/// that candidate only if it shrinks the residual. Stops when a genuine
/// operator step is at most max(tol * lambda, step floor); the a-priori
/// contraction bound then certifies the result. Requires an attached lambda.
DiscountedSolution solve_discounted(const GridGame& game, double tol = 1e-10,
                                    long max_iterations = 2000000);

struct NStageSolution {
    ValuePair value;             // v_n = U_n / n
    int stages = 0;
    double max_stage_gap = 0.0;  // worst pure-saddle gap across the recursion
};

/// Unnormalized backward recursion U_0 = 0, U_k = g + val[E U_{k-1}],
/// absorbing states accumulating +-k; returns U_n / n. Ignores any attached
/// discount on the game.
NStageSolution solve_nstage(const GridGame& game, int n);

struct TransferRow {
    int n = 0;
    ValuePair v_n;             // computed n-stage value
    ValuePair w_n;             // closed form at lambda = 1/n
    double distance = 0.0;     // sup distance between them
    double bound = 0.0;        // (1/n) sum_{i=16}^{n-1} i * ||w_{i+1} - w_i||
    double slack = 0.0;        // 10x observed discretization error at lambda = 1/n
    bool within_bound = false; // distance <= bound + slack
};

struct TransferReport {
    std::vector<TransferRow> rows;
    bool derivative_screen_passed = false;
    double derivative_screen_max = 0.0;  // max |lambda dv/dlambda| probed near 0
    bool all_within = false;
};

/// Compares v_n against w_n = v_{1/n} for each requested n (all >= 16, the
/// smallest n with 1/n in the discount domain) and checks the telescoping
/// bound linking them. The slack per row is measured by solving the
/// discounted game at lambda = 1/n on the same grid without inserting
/// lambda, since the bound concerns the compact game, not its
/// discretization. Also screens the profile for lambda * dv/dlambda -> 0,
/// the hypothesis behind the transfer; failing profiles are reported, not
/// rejected.
TransferReport check_transfer(const SDProfile& profile, const std::vector<int>& ns,
                              int grid_size);

}  // namespace sdgame
