#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "sdgame/profile.hpp"

namespace sdgame {

enum class KernelSource { SpecializedSqrt, GeneralTwoPoint };

/// Switch to the diagonal formulas when |sqrt(x) - sqrt(y)| drops below this;
/// the divided-difference quotients lose about seven digits there while the
/// diagonal formulas are exact for differentiable s.
inline constexpr double kDiagDelta = 1e-7;

/// f1(x,y) = (sqrt(x) s(x) - sqrt(y) s(y)) / (sqrt(x) - sqrt(y)) off the
/// diagonal, 2x s'(x) + s(x) on it. Bounded by 3C when |s|, |x s'| <= C.
double f1(double x, double y, const SDProfile& profile);

/// f2(x,y) = (sqrt(y) s(x) - sqrt(x) s(y)) / (sqrt(x) - sqrt(y)) off the
/// diagonal, 2x s'(x) - s(x) on it.
double f2(double x, double y, const SDProfile& profile);

/// Raised by the general two-point kernel when the 2x2 system behind it is
/// singular at an off-diagonal pair.
class DegenerateSystemError : public std::runtime_error {
  public:
    DegenerateSystemError(double x, double y, double bracket);
    double bracket() const { return bracket_; }

  private:
    double bracket_;
};

/// The four transition probabilities p+, p+*, p-, p-* on [0, 1/16]^2.
///
/// The minus side is the plus side with s replaced by its opposite, evaluated
/// through the same code path, so p_minus[s] == p_plus[-s] holds bit for bit.
class TransitionKernel {
  public:
    double p_plus(double x, double y) const { return swap_prob(x, y, +1); }
    double p_minus(double x, double y) const { return swap_prob(x, y, -1); }
    double p_star_plus(double x, double y) const { return absorb_prob(x, y, +1); }
    double p_star_minus(double x, double y) const { return absorb_prob(x, y, -1); }

    KernelSource source() const { return source_; }
    const SDProfile& profile() const { return profile_; }

  private:
    friend TransitionKernel kernel_sqrt(const SDProfile& profile);
    friend TransitionKernel kernel_general(const SDProfile& profile);

    TransitionKernel(SDProfile profile, KernelSource source)
        : profile_(std::move(profile)), source_(source) {}

    double swap_prob(double x, double y, int sign) const;
    double absorb_prob(double x, double y, int sign) const;

    SDProfile profile_;
    KernelSource source_;
};

/// Specialized kernel for d = sqrt: interior values through f1/f2, explicit
/// completions on the axes and at the origin. Requires d_kind == SquareRoot.
TransitionKernel kernel_sqrt(const SDProfile& profile);

/// Two-point solution for arbitrary continuous (s, d) with d > 0. Off the
/// diagonal the closed formulas apply; within |x - y| < kDiagDelta of the
/// diagonal, values are averaged from a symmetric straddle (approximate).
TransitionKernel kernel_general(const SDProfile& profile);

struct PFunctionStats {
    std::string name;
    double min = 0.0, max = 0.0;
    std::array<double, 2> argmin{0.0, 0.0}, argmax{0.0, 0.0};
    double max_diag_jump = 0.0;  // worst |p(x,x) - p(x, x_off)| across the band
};

/// Grid scan of the four p-functions over [0, 1/16]^2.
struct FeasibilityReport {
    std::array<PFunctionStats, 4> stats;  // order: p+*, p+, p-*, p-
    /// max over the grid of p* - (4912/2925) sqrt(xy), and of
    /// p - (2312/2925)(sqrt x + sqrt y); nonpositive when the envelopes hold.
    double max_star_envelope_excess = 0.0;
    double max_swap_envelope_excess = 0.0;
    long evaluation_errors = 0;
    bool feasible = false;

    std::string to_table() const;
};

/// Evaluates all four p on a grid_size x grid_size lattice including the
/// boundary rows, plus straddle points around the diagonal. Feasible means
/// every value lies in [-1e-12, 1/2 + 1e-12], no evaluation failed, and the
/// jump across the diagonal band stays within the continuity tolerance.
/// Reports, never throws, for in-range grids.
FeasibilityReport scan_feasibility(const TransitionKernel& kernel, int grid_size);

}  // namespace sdgame
