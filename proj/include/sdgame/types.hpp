#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdgame {

/// Action interval is [0, 1/16] for both players.
inline constexpr double kActionBound = 1.0 / 16.0;

/// Discount factors below this are clamped before evaluation; keeps
/// ln(-ln(lambda)) inside the 64-bit range.
inline constexpr double kLambdaFloor = 1e-300;

/// Two nonabsorbing states (OmegaPlus, OmegaMinus) and two absorbing ones
/// (AbsPlus, AbsMinus) with constant payoff +1 / -1.
enum class GameState { OmegaPlus, OmegaMinus, AbsPlus, AbsMinus };

constexpr bool is_absorbing(GameState s) {
    return s == GameState::AbsPlus || s == GameState::AbsMinus;
}

/// Stage payoff; a function of the state only.
constexpr double payoff(GameState s) {
    return (s == GameState::OmegaPlus || s == GameState::AbsPlus) ? 1.0 : -1.0;
}

const char* to_string(GameState s);

/// A pure action in [0, 1/16]; construction rejects out-of-range values.
class Action {
  public:
    explicit Action(double value) : value_(value) {
        if (!(value >= 0.0 && value <= kActionBound))
            throw std::domain_error("Action outside [0, 1/16]: " + std::to_string(value));
    }
    double value() const { return value_; }

  private:
    double value_;
};

/// A discount factor in (0, 1/16].
class Discount {
  public:
    explicit Discount(double lambda) : lambda_(lambda) {
        if (!(lambda > 0.0 && lambda <= kActionBound))
            throw std::domain_error("Discount outside (0, 1/16]: " + std::to_string(lambda));
    }
    double value() const { return lambda_; }

  private:
    double lambda_;
};

/// Values at the two nonabsorbing states. Absorbing values are the constants
/// +1 and -1 for every discount factor and horizon, so they are never stored.
struct ValuePair {
    double plus = 0.0;
    double minus = 0.0;

    ValuePair() = default;
    ValuePair(double p, double m) : plus(p), minus(m) {
        if (!(std::abs(p) <= 1.0 + 1e-9) || !(std::abs(m) <= 1.0 + 1e-9))
            throw std::domain_error("ValuePair component outside [-1, 1]");
    }
};

inline double linf_distance(const ValuePair& a, const ValuePair& b) {
    return std::max(std::abs(a.plus - b.plus), std::abs(a.minus - b.minus));
}

}  // namespace sdgame
