#pragma once

#include <optional>

#include "sdgame/types.hpp"

namespace sdgame {

/// Two-action Stay/Quit game with fixed absorption probabilities: each
/// player either stays or quits toward the favorable absorbing state with
/// probability p_star on a quit. Mixed extensions of the 2x2 stage games.
struct FiniteGameSpec {
    double p_star_plus = 0.0;   // absorption chance when the maximizer quits
    double p_star_minus = 0.0;  // absorption chance when the minimizer quits

    FiniteGameSpec(double pp, double pm);
};

struct FiniteSolution {
    ValuePair value;
    long iterations = 0;
    double residual = 0.0;
    bool converged = false;
    /// Optimal Quit weights of the final stage games. For small lambda both
    /// players' weights at state k approach sqrt(lambda / p_star_k).
    double quit_plus_row = 0.0;   // maximizer at omega+
    double quit_plus_col = 0.0;   // minimizer at omega+
    double quit_minus_row = 0.0;  // maximizer at omega-
    double quit_minus_col = 0.0;  // minimizer at omega-
};

/// Discounted value of the Stay/Quit game by value iteration with a
/// Newton-accelerated outer loop. The 2x2 mixed values are exact (piecewise
/// linear concave maximization, candidate set {0, 1, crossing}). Unlike the
/// compact game, lambda ranges over all of (0, 1].
FiniteSolution solve_finite(const FiniteGameSpec& spec, double lambda,
                            double tol = 1e-12, long max_iterations = 100000000);

/// Limit of the discounted value as lambda -> 0: at both nonabsorbing states
/// v = (sqrt(p+*) - sqrt(p-*)) / (sqrt(p+*) + sqrt(p-*)); the states merge in
/// the limit. Unavailable when either probability vanishes.
std::optional<ValuePair> finite_limit_value(const FiniteGameSpec& spec);

}  // namespace sdgame
