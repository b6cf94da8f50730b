#include "sdgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdgame {

ValuePair closed_form_value(const SDProfile& profile, Discount lambda) {
    const double s = profile.s(lambda.value());
    const double d = profile.d(lambda.value());
    return ValuePair(s + d, s - d);
}

double equalizing_residuals(const CompactGame& game, Discount lambda,
                            const std::vector<double>& opponent_grid) {
    const TransitionKernel& k = game.kernel;
    const double l = lambda.value();
    const ValuePair v = closed_form_value(game.profile(), lambda);
    double worst = 0.0;
    auto plus_side = [&](double x, double y) {
        const double ps = k.p_star_plus(x, y), pw = k.p_plus(x, y);
        const double rhs =
            l + (1.0 - l) * (ps + pw * v.minus + (1.0 - ps - pw) * v.plus);
        return std::abs(v.plus - rhs);
    };
    auto minus_side = [&](double x, double y) {
        const double ps = k.p_star_minus(x, y), pw = k.p_minus(x, y);
        const double rhs =
            -l + (1.0 - l) * (-ps + pw * v.plus + (1.0 - ps - pw) * v.minus);
        return std::abs(v.minus - rhs);
    };
    for (double a : opponent_grid) {
        worst = std::max({worst, plus_side(l, a), plus_side(a, l),
                          minus_side(l, a), minus_side(a, l)});
    }
    return worst;
}

std::vector<double> base_action_grid(int size) {
    if (size < 2) throw std::invalid_argument("action grid needs >= 2 points");
    const int n_geo = size / 2;
    const int n_uni = size - n_geo;
    std::vector<double> grid;
    grid.reserve(size);
    for (int i = 0; i < n_uni; ++i)
        grid.push_back(kActionBound * double(i) / double(n_uni - 1));
    // Geometric tail from just below 1/16 down to ~1e-10; optimal actions
    // shrink with lambda, so the low end needs the resolution.
    const double lo = 1e-10;
    for (int g = 1; g <= n_geo; ++g)
        grid.push_back(kActionBound *
                       std::exp(std::log(lo / kActionBound) * double(g) / double(n_geo)));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

MatrixSaddle pure_saddle(const std::vector<std::vector<double>>& m) {
    if (m.empty() || m[0].empty()) throw std::invalid_argument("empty matrix");
    const int rows = int(m.size()), cols = int(m[0].size());
    MatrixSaddle out;
    out.minmax = 1e300;
    out.maxmin = -1e300;
    for (int j = 0; j < cols; ++j) {
        double colmax = -1e300;
        int arg = 0;
        for (int i = 0; i < rows; ++i)
            if (m[i][j] > colmax) {
                colmax = m[i][j];
                arg = i;
            }
        if (colmax < out.minmax) {
            out.minmax = colmax;
            out.col = j;
            out.row = arg;
        }
    }
    for (int i = 0; i < rows; ++i) {
        double rowmin = 1e300;
        for (int j = 0; j < cols; ++j) rowmin = std::min(rowmin, m[i][j]);
        out.maxmin = std::max(out.maxmin, rowmin);
    }
    out.gap = out.minmax - out.maxmin;
    return out;
}

GridGame::GridGame(TransitionKernel kernel, std::optional<Discount> lambda,
                   std::vector<double> grid)
    : kernel_(std::move(kernel)), lambda_(lambda), grid_(std::move(grid)) {
    if (grid_.empty()) throw std::invalid_argument("empty action grid");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!(grid_[i] >= 0.0 && grid_[i] <= kActionBound))
            throw std::domain_error("grid action outside [0, 1/16]");
        if (i > 0 && !(grid_[i] > grid_[i - 1]))
            throw std::invalid_argument("grid not strictly increasing");
    }
    if (lambda_) {
        auto it = std::find(grid_.begin(), grid_.end(), lambda_->value());
        lambda_index_ = it == grid_.end() ? -1 : int(it - grid_.begin());
    }
    const int m = int(grid_.size());
    for (int side = 0; side < 2; ++side) {
        swap_[side].resize(std::size_t(m) * m);
        absorb_[side].resize(std::size_t(m) * m);
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double x = grid_[i], y = grid_[j];
            swap_[0][std::size_t(i) * m + j] = kernel_.p_plus(x, y);
            absorb_[0][std::size_t(i) * m + j] = kernel_.p_star_plus(x, y);
            swap_[1][std::size_t(i) * m + j] = kernel_.p_minus(x, y);
            absorb_[1][std::size_t(i) * m + j] = kernel_.p_star_minus(x, y);
        }
    }
}

double GridGame::cached_swap(bool plus_state, int i, int j) const {
    return swap_[plus_state ? 0 : 1][std::size_t(i) * grid_.size() + j];
}

double GridGame::cached_absorb(bool plus_state, int i, int j) const {
    return absorb_[plus_state ? 0 : 1][std::size_t(i) * grid_.size() + j];
}

MatrixSaddle GridGame::state_saddle(bool plus_state, double stage_weight,
                                    double continuation_weight, double absorb_value,
                                    double stay_value, double swap_value) const {
    const int m = int(grid_.size());
    const std::vector<double>& pw = swap_[plus_state ? 0 : 1];
    const std::vector<double>& pa = absorb_[plus_state ? 0 : 1];
    auto cell = [&](int i, int j) {
        const std::size_t idx = std::size_t(i) * m + j;
        const double a = pa[idx], w = pw[idx];
        return stage_weight +
               continuation_weight *
                   (a * absorb_value + w * swap_value + (1.0 - a - w) * stay_value);
    };
    MatrixSaddle out;
    out.minmax = 1e300;
    out.maxmin = -1e300;
    for (int j = 0; j < m; ++j) {
        double colmax = -1e300;
        int arg = 0;
        for (int i = 0; i < m; ++i) {
            const double v = cell(i, j);
            if (v > colmax) {
                colmax = v;
                arg = i;
            }
        }
        if (colmax < out.minmax) {
            out.minmax = colmax;
            out.col = j;
            out.row = arg;
        }
    }
    for (int i = 0; i < m; ++i) {
        double rowmin = 1e300;
        for (int j = 0; j < m; ++j) rowmin = std::min(rowmin, cell(i, j));
        out.maxmin = std::max(out.maxmin, rowmin);
    }
    out.gap = out.minmax - out.maxmin;
    return out;
}

GridGame::ApplyStats GridGame::apply_with_stats(const ValuePair& f) const {
    if (!lambda_) throw std::logic_error("apply requires an attached discount");
    const double l = lambda_->value();
    const MatrixSaddle plus =
        state_saddle(true, l, 1.0 - l, +1.0, f.plus, f.minus);
    const MatrixSaddle minus =
        state_saddle(false, -l, 1.0 - l, -1.0, f.minus, f.plus);
    ApplyStats out;
    out.value = ValuePair(plus.minmax, minus.minmax);
    out.gap_plus = plus.gap;
    out.gap_minus = minus.gap;
    out.row_plus = plus.row;
    out.col_plus = plus.col;
    out.row_minus = minus.row;
    out.col_minus = minus.col;
    return out;
}

ValuePair GridGame::apply(const ValuePair& f) const { return apply_with_stats(f).value; }

std::pair<double, double> GridGame::apply_stage(double u_plus, double u_minus,
                                                double abs_plus, double abs_minus,
                                                double* max_gap) const {
    const MatrixSaddle plus = state_saddle(true, 1.0, 1.0, abs_plus, u_plus, u_minus);
    const MatrixSaddle minus =
        state_saddle(false, -1.0, 1.0, abs_minus, u_minus, u_plus);
    if (max_gap) *max_gap = std::max(plus.gap, minus.gap);
    return {plus.minmax, minus.minmax};
}

GridGame make_grid_game(const TransitionKernel& kernel, Discount lambda, int size) {
    std::vector<double> grid = base_action_grid(size - 1);
    const double l = lambda.value();
    auto it = std::lower_bound(grid.begin(), grid.end(), l);
    if (it == grid.end() || *it != l) grid.insert(it, l);
    return GridGame(kernel, lambda, std::move(grid));
}

GridGame make_grid_game(const TransitionKernel& kernel, int size) {
    return GridGame(kernel, std::nullopt, base_action_grid(size));
}

}  // namespace sdgame
