#include "sdgame/finite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdgame {

FiniteGameSpec::FiniteGameSpec(double pp, double pm)
    : p_star_plus(pp), p_star_minus(pm) {
    if (!(pp >= 0.0 && pp <= 1.0 && pm >= 0.0 && pm <= 1.0))
        throw std::domain_error("Stay/Quit absorption parameters must be in [0, 1]");
}

namespace {

struct Matrix2 {
    // Row player maximizes; rows and columns ordered (Stay, Quit).
    double a, b, c, d;  // a = (S,S), b = (S,Q), c = (Q,S), d = (Q,Q)
};

struct GameValue2 {
    double value = 0.0;
    double row_quit = 0.0;  // optimal probability on Quit for the row player
    double col_quit = 0.0;
};

// Exact value of the mixed extension of a 2x2 game. The value function
// p -> min(column payoffs) is piecewise linear and concave in the row
// player's mixture, so the maximum is at 0, 1, or the crossing point.
GameValue2 solve_2x2(const Matrix2& m) {
    const double denom = m.a - m.b - m.c + m.d;
    GameValue2 out;
    if (denom != 0.0) {
        const double p = (m.d - m.c) / denom;  // weight on row Stay
        if (p > 0.0 && p < 1.0) {
            const double q = (m.d - m.b) / denom;  // weight on column Stay
            if (q > 0.0 && q < 1.0) {
                out.value = (m.a * m.d - m.b * m.c) / denom;
                out.row_quit = 1.0 - p;
                out.col_quit = 1.0 - q;
                return out;
            }
        }
    }
    // A pure saddle exists; fall back to minmax = maxmin over pure actions.
    const double maxmin = std::max(std::min(m.a, m.b), std::min(m.c, m.d));
    out.value = maxmin;
    out.row_quit = std::min(m.c, m.d) > std::min(m.a, m.b) ? 1.0 : 0.0;
    out.col_quit = std::max(m.a, m.c) > std::max(m.b, m.d) ? 1.0 : 0.0;
    return out;
}

struct StageResult {
    double v_plus, v_minus;
    GameValue2 plus, minus;
};

// One step of the discounted operator for the Stay/Quit game.
StageResult stage_operator(const FiniteGameSpec& spec, double l, double vp,
                           double vm) {
    // omega+: Stay/Stay keeps the state, a single Quit swaps it, Quit/Quit
    // absorbs to +1 with probability p+*.
    const Matrix2 mp{
        l + (1.0 - l) * vp,
        l + (1.0 - l) * vm,
        l + (1.0 - l) * vm,
        l + (1.0 - l) * (spec.p_star_plus + (1.0 - spec.p_star_plus) * vp),
    };
    const Matrix2 mm{
        -l + (1.0 - l) * vm,
        -l + (1.0 - l) * vp,
        -l + (1.0 - l) * vp,
        -l + (1.0 - l) * (-spec.p_star_minus + (1.0 - spec.p_star_minus) * vm),
    };
    StageResult out;
    out.plus = solve_2x2(mp);
    out.minus = solve_2x2(mm);
    out.v_plus = out.plus.value;
    out.v_minus = out.minus.value;
    return out;
}

}  // namespace

FiniteSolution solve_finite(const FiniteGameSpec& spec, double lambda, double tol,
                            long max_iterations) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::domain_error("Stay/Quit discount outside (0, 1]");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const double l = lambda;

    double vp = 0.0, vm = 0.0;
    long it = 0;
    double step = 1.0;
    while (true) {
        StageResult next = stage_operator(spec, l, vp, vm);
        ++it;
        step = std::max(std::abs(next.v_plus - vp), std::abs(next.v_minus - vm));
        vp = next.v_plus;
        vm = next.v_minus;
        if (step <= std::max(tol * l, 1e-16)) break;
        if (it >= max_iterations) break;
        // Accelerate: with the mixtures frozen, the operator is affine in
        // (vp, vm); leap to the fixed point of that model, keep it only if
        // the genuine step shrinks (envelope argument: the frozen-mixture
        // fixed point is exact once the mixtures stop moving).
        const double h = 1e-9;
        StageResult np = stage_operator(spec, l, vp + h, vm);
        StageResult nm = stage_operator(spec, l, vp, vm + h);
        StageResult base = stage_operator(spec, l, vp, vm);
        const double j11 = (np.v_plus - base.v_plus) / h;
        const double j12 = (nm.v_plus - base.v_plus) / h;
        const double j21 = (np.v_minus - base.v_minus) / h;
        const double j22 = (nm.v_minus - base.v_minus) / h;
        // Solve (I - J) dv = T(v) - v.
        const double r1 = base.v_plus - vp, r2 = base.v_minus - vm;
        const double a11 = 1.0 - j11, a12 = -j12, a21 = -j21, a22 = 1.0 - j22;
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) > 1e-12) {
            const double dvp = (r1 * a22 - r2 * a12) / det;
            const double dvm = (r2 * a11 - r1 * a21) / det;
            const double cp = std::clamp(vp + dvp, -1.0, 1.0);
            const double cm = std::clamp(vm + dvm, -1.0, 1.0);
            StageResult cand = stage_operator(spec, l, cp, cm);
            const double cand_step =
                std::max(std::abs(cand.v_plus - cp), std::abs(cand.v_minus - cm));
            if (cand_step < step) {
                vp = cand.v_plus;
                vm = cand.v_minus;
                step = cand_step;
                if (step <= std::max(tol * l, 1e-16)) break;
            }
        }
        if (it >= max_iterations) break;
    }

    const StageResult last = stage_operator(spec, l, vp, vm);
    FiniteSolution sol;
    sol.value = ValuePair(std::clamp(last.v_plus, -1.0, 1.0),
                          std::clamp(last.v_minus, -1.0, 1.0));
    sol.iterations = it;
    sol.residual = step;
    sol.converged = step <= std::max(tol * l, 1e-16);
    sol.quit_plus_row = last.plus.row_quit;
    sol.quit_plus_col = last.plus.col_quit;
    sol.quit_minus_row = last.minus.row_quit;
    sol.quit_minus_col = last.minus.col_quit;
    return sol;
}

std::optional<ValuePair> finite_limit_value(const FiniteGameSpec& spec) {
    if (!(spec.p_star_plus > 0.0 && spec.p_star_minus > 0.0)) return std::nullopt;
    const double rp = std::sqrt(spec.p_star_plus), rm = std::sqrt(spec.p_star_minus);
    const double v = (rp - rm) / (rp + rm);
    return ValuePair(v, v);
}

}  // namespace sdgame
