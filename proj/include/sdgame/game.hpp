#pragma once

#include <optional>
#include <vector>

#include "sdgame/kernel.hpp"
#include "sdgame/types.hpp"

namespace sdgame {

/// Closed form v_lambda = (s(lambda) + d(lambda), s(lambda) - d(lambda)).
ValuePair closed_form_value(const SDProfile& profile, Discount lambda);

/// The full game: a transition kernel (which carries its generating profile)
/// over the fixed action square [0, 1/16]^2.
struct CompactGame {
    TransitionKernel kernel;
    double action_bound = kActionBound;

    const SDProfile& profile() const { return kernel.profile(); }
};

/// Max absolute residual of the four one-stage identities that make the pure
/// action lambda equalizing: at omega+ and omega-, with the deviating
/// opponent ranging over the grid on either side. Uses the closed-form value.
double equalizing_residuals(const CompactGame& game, Discount lambda,
                            const std::vector<double>& opponent_grid);

/// Action grid on [0, 1/16]: first half uniform, second half geometric with
/// points clustered toward 0, sorted and deduplicated. Optimal actions scale
/// like sqrt(lambda) or lambda, so uniform-only grids starve the small end.
std::vector<double> base_action_grid(int size);

/// Pure-strategy scan of a finite matrix game with the row player maximizing:
/// minmax = min_j max_i, maxmin = max_i min_j, gap = minmax - maxmin >= 0.
struct MatrixSaddle {
    double minmax = 0.0;
    double maxmin = 0.0;
    double gap = 0.0;
    int row = 0;  // row attaining the max in the minmax column
    int col = 0;  // the minmax column
};

MatrixSaddle pure_saddle(const std::vector<std::vector<double>>& m);

/// One-shot operator for the two nonabsorbing states on a fixed action grid.
/// Transition probabilities are evaluated once at construction and cached.
class GridGame {
  public:
    /// Grid must be sorted, deduplicated, inside [0, 1/16]. When a discount
    /// is attached it should be a grid point (make_grid_game inserts it);
    /// accuracy guarantees hold only in that case.
    GridGame(TransitionKernel kernel, std::optional<Discount> lambda,
             std::vector<double> grid);

    /// Applies the discounted one-stage operator to f at both states and
    /// returns the minmax values. Requires an attached discount.
    ValuePair apply(const ValuePair& f) const;

    struct ApplyStats {
        ValuePair value;
        double gap_plus = 0.0;
        double gap_minus = 0.0;
        int row_plus = 0, col_plus = 0;    // active saddle cell at omega+
        int row_minus = 0, col_minus = 0;  // and at omega-
    };
    ApplyStats apply_with_stats(const ValuePair& f) const;

    /// Same operator with stage weight 1 and absorbing continuations
    /// abs_plus / abs_minus instead of +-1: the n-stage backward step
    /// U_k = g + val[E U_{k-1}] with U_{k-1}(1*) = abs_plus. Works on raw
    /// doubles because the unnormalized U_k leave [-1, 1].
    std::pair<double, double> apply_stage(double u_plus, double u_minus,
                                          double abs_plus, double abs_minus,
                                          double* max_gap = nullptr) const;

    std::optional<Discount> lambda() const { return lambda_; }
    const std::vector<double>& grid() const { return grid_; }
    const TransitionKernel& kernel() const { return kernel_; }
    int lambda_index() const { return lambda_index_; }  // -1 when not a grid point

    double cached_swap(bool plus_state, int i, int j) const;
    double cached_absorb(bool plus_state, int i, int j) const;

  private:
    MatrixSaddle state_saddle(bool plus_state, double stage_weight,
                              double continuation_weight, double absorb_value,
                              double stay_value, double swap_value) const;

    TransitionKernel kernel_;
    std::optional<Discount> lambda_;
    std::vector<double> grid_;
    int lambda_index_ = -1;
    std::vector<double> swap_[2], absorb_[2];  // [plus? 0 : 1], row-major
};

/// Grid game with lambda inserted (if absent) into base_action_grid(size).
GridGame make_grid_game(const TransitionKernel& kernel, Discount lambda, int size);

/// Grid game over base_action_grid(size) with no discount attached.
GridGame make_grid_game(const TransitionKernel& kernel, int size);

}  // namespace sdgame
