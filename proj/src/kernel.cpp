#include "sdgame/kernel.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sdgame {

namespace {

constexpr double kBracketFloor = 1e-14;
constexpr double kStarEnvelopeSlope = 4912.0 / 2925.0;
constexpr double kSwapEnvelopeSlope = 2312.0 / 2925.0;

void check_square(double x, double y, const char* who) {
    if (!(x >= 0.0 && x <= kActionBound && y >= 0.0 && y <= kActionBound))
        throw std::domain_error(std::string(who) + " outside [0, 1/16]^2: (" +
                                std::to_string(x) + ", " + std::to_string(y) + ")");
}

enum class FRoute { Auto, Diagonal, OffDiagonal };

struct F12 {
    double f1 = 0.0;
    double f2 = 0.0;
};

// Both divided differences, with s multiplied by `sign` (the minus-side
// kernel is the plus side of -s). The diagonal formula is evaluated at the
// sqrt-midpoint so that near-diagonal pairs stay consistent with it.
F12 eval_f12(const SDProfile& pr, double x, double y, int sign, FRoute route) {
    const double rx = std::sqrt(x), ry = std::sqrt(y);
    const bool diagonal =
        route == FRoute::Diagonal ||
        (route == FRoute::Auto && std::abs(rx - ry) < kDiagDelta);
    if (diagonal) {
        const double rm = 0.5 * (rx + ry);
        const double m = rm * rm;
        const double sm = sign * pr.s(m);
        const double xsp = m * (sign * pr.s_prime(m));
        return {2.0 * xsp + sm, 2.0 * xsp - sm};
    }
    const double sx = sign * pr.s(x), sy = sign * pr.s(y);
    const double den = rx - ry;
    return {(rx * sx - ry * sy) / den, (ry * sx - rx * sy) / den};
}

// p+ boundary row of the sqrt kernel: sqrt(x)(1 - sqrt(x) - s(x)) / (2(1-x)).
double sqrt_swap_edge(const SDProfile& pr, double x, int sign) {
    const double rx = std::sqrt(x);
    return rx * (1.0 - rx - sign * pr.s(x)) / (2.0 * (1.0 - x));
}

double sqrt_swap_interior(const SDProfile& pr, double x, double y, int sign,
                          FRoute route) {
    const double rx = std::sqrt(x), ry = std::sqrt(y);
    const F12 f = eval_f12(pr, x, y, sign, route);
    const double nx = 1.0 - rx - sign * pr.s(x);
    const double ny = 1.0 - ry - sign * pr.s(y);
    // nx * ny is grouped first so that swapping x and y reassociates nothing
    // and p(x, y) == p(y, x) holds bit for bit.
    return (rx + ry) * (nx * ny) / (2.0 * (1.0 - x) * (1.0 - y) * (1.0 + f.f2));
}

double sqrt_absorb_interior(const SDProfile& pr, double x, double y, int sign,
                            FRoute route) {
    const double rx = std::sqrt(x), ry = std::sqrt(y);
    const F12 f = eval_f12(pr, x, y, sign, route);
    const double rxy = rx * ry;
    return rxy * ((1.0 - rx) * (1.0 - ry) - f.f1 + rxy * f.f2) /
           ((1.0 - x) * (1.0 - y) * (1.0 + f.f2));
}

double sqrt_eval(const SDProfile& pr, double x, double y, int sign, bool absorb,
                 FRoute route) {
    if (x == 0.0 && y == 0.0) return 0.0;
    if (absorb) {
        if (x == 0.0 || y == 0.0) return 0.0;
        return sqrt_absorb_interior(pr, x, y, sign, route);
    }
    if (y == 0.0) return sqrt_swap_edge(pr, x, sign);
    if (x == 0.0) return sqrt_swap_edge(pr, y, sign);
    return sqrt_swap_interior(pr, x, y, sign, route);
}

// Two-point solution off the diagonal; throws when the linear system behind
// it is singular.
double general_off_diag(const SDProfile& pr, double x, double y, int sign,
                        bool absorb) {
    const double sx = sign * pr.s(x), sy = sign * pr.s(y);
    const double dx = pr.d(x), dy = pr.d(y);
    const double bracket = dx * (1.0 - sy) - dy * (1.0 - sx);
    if (std::abs(bracket) < kBracketFloor) throw DegenerateSystemError(x, y, bracket);
    if (absorb) {
        const double num = x * (1.0 - y) * dy * (1.0 - sx - dx) -
                           y * (1.0 - x) * dx * (1.0 - sy - dy);
        return num / ((1.0 - x) * (1.0 - y) * bracket);
    }
    // The two (1 - s - d) factors are grouped first so that swapping x and y
    // only negates numerator and denominator and the quotient is unchanged
    // bit for bit.
    return (x - y) * ((1.0 - sx - dx) * (1.0 - sy - dy)) /
           (2.0 * (1.0 - x) * (1.0 - y) * bracket);
}

// Near-diagonal pairs are averaged from a symmetric straddle just outside
// the band; the straddle is shifted when it would leave (0, 1/16].
double general_straddle(const SDProfile& pr, double x, double y, int sign,
                        bool absorb) {
    const double m = 0.5 * (x + y);
    double lo = m - kDiagDelta, hi = m + kDiagDelta;
    if (lo <= 0.0) {
        lo = 0.5 * m;
        hi = 1.5 * m;
    } else if (hi > kActionBound) {
        hi = kActionBound;
        lo = 2.0 * m - kActionBound;
    }
    return 0.5 * (general_off_diag(pr, lo, hi, sign, absorb) +
                  general_off_diag(pr, hi, lo, sign, absorb));
}

double general_eval(const SDProfile& pr, double x, double y, int sign, bool absorb,
                    FRoute route) {
    if (x == 0.0 && y == 0.0) return 0.0;
    if (absorb && (x == 0.0 || y == 0.0)) return 0.0;
    // Swap boundary rows: the mu -> 0 limit of the two-point formula, in
    // which s(mu) cancels: x (1 - s(x) - d(x)) / (2 (1-x) d(x)).
    if (!absorb && y == 0.0)
        return x * (1.0 - sign * pr.s(x) - pr.d(x)) / (2.0 * (1.0 - x) * pr.d(x));
    if (!absorb && x == 0.0)
        return y * (1.0 - sign * pr.s(y) - pr.d(y)) / (2.0 * (1.0 - y) * pr.d(y));
    const bool near_diag =
        route == FRoute::Diagonal ||
        (route == FRoute::Auto && std::abs(x - y) < kDiagDelta);
    if (near_diag) return general_straddle(pr, x, y, sign, absorb);
    return general_off_diag(pr, x, y, sign, absorb);
}

double eval_p(const SDProfile& pr, KernelSource source, double x, double y,
              int sign, bool absorb, FRoute route) {
    if (source == KernelSource::SpecializedSqrt)
        return sqrt_eval(pr, x, y, sign, absorb, route);
    return general_eval(pr, x, y, sign, absorb, route);
}

}  // namespace

double f1(double x, double y, const SDProfile& profile) {
    check_square(x, y, "f1 argument");
    if (x == 0.0 || y == 0.0)
        throw std::domain_error("f1 requires x, y > 0");
    return eval_f12(profile, x, y, +1, FRoute::Auto).f1;
}

double f2(double x, double y, const SDProfile& profile) {
    check_square(x, y, "f2 argument");
    if (x == 0.0 || y == 0.0)
        throw std::domain_error("f2 requires x, y > 0");
    return eval_f12(profile, x, y, +1, FRoute::Auto).f2;
}

DegenerateSystemError::DegenerateSystemError(double x, double y, double bracket)
    : std::runtime_error("degenerate two-point system at (" + std::to_string(x) +
                         ", " + std::to_string(y) +
                         "): bracket = " + std::to_string(bracket)),
      bracket_(bracket) {}

double TransitionKernel::swap_prob(double x, double y, int sign) const {
    check_square(x, y, "kernel argument");
    return eval_p(profile_, source_, x, y, sign, false, FRoute::Auto);
}

double TransitionKernel::absorb_prob(double x, double y, int sign) const {
    check_square(x, y, "kernel argument");
    return eval_p(profile_, source_, x, y, sign, true, FRoute::Auto);
}

TransitionKernel kernel_sqrt(const SDProfile& profile) {
    if (profile.d_kind() != DKind::SquareRoot)
        throw std::invalid_argument("kernel_sqrt requires d = sqrt");
    return TransitionKernel(profile, KernelSource::SpecializedSqrt);
}

TransitionKernel kernel_general(const SDProfile& profile) {
    return TransitionKernel(profile, KernelSource::GeneralTwoPoint);
}

namespace {

struct PSpec {
    const char* name;
    int sign;
    bool absorb;
};

constexpr PSpec kPSpecs[4] = {
    {"p+*", +1, true},
    {"p+", +1, false},
    {"p-*", -1, true},
    {"p-", -1, false},
};

}  // namespace

std::string FeasibilityReport::to_table() const {
    std::ostringstream os;
    os << std::setprecision(9);
    os << "function        min                  max          "
       << "argmin        argmax      diag_jump\n";
    for (const auto& st : stats) {
        os << std::left << std::setw(8) << st.name << std::right << std::setw(13)
           << st.min << std::setw(21) << st.max << "   (" << st.argmin[0] << ", "
           << st.argmin[1] << ")  (" << st.argmax[0] << ", " << st.argmax[1] << ")  "
           << st.max_diag_jump << "\n";
    }
    os << "star envelope excess (vs 4912/2925 sqrt(xy)):      "
       << max_star_envelope_excess << "\n";
    os << "swap envelope excess (vs 2312/2925 (sqrt x + sqrt y)): "
       << max_swap_envelope_excess << "\n";
    os << "evaluation errors: " << evaluation_errors << "\n";
    os << "feasible: " << (feasible ? "yes" : "no") << "\n";
    return os.str();
}

FeasibilityReport scan_feasibility(const TransitionKernel& kernel, int grid_size) {
    if (grid_size < 16) throw std::invalid_argument("feasibility grid_size < 16");
    const SDProfile& pr = kernel.profile();
    const KernelSource source = kernel.source();

    FeasibilityReport report;
    bool in_range = true;
    bool jumps_ok = true;
    bool any_value = false;
    report.max_star_envelope_excess = -1.0;
    report.max_swap_envelope_excess = -1.0;

    for (int k = 0; k < 4; ++k) {
        report.stats[k].name = kPSpecs[k].name;
        report.stats[k].min = 1e300;
        report.stats[k].max = -1e300;
    }

    std::vector<double> grid(grid_size);
    for (int i = 0; i < grid_size; ++i)
        grid[i] = kActionBound * double(i) / double(grid_size - 1);

    for (int i = 0; i < grid_size; ++i) {
        for (int j = 0; j < grid_size; ++j) {
            const double x = grid[i], y = grid[j];
            for (int k = 0; k < 4; ++k) {
                double v;
                try {
                    v = eval_p(pr, source, x, y, kPSpecs[k].sign, kPSpecs[k].absorb,
                               FRoute::Auto);
                } catch (const std::exception&) {
                    ++report.evaluation_errors;
                    continue;
                }
                any_value = true;
                auto& st = report.stats[k];
                if (v < st.min) {
                    st.min = v;
                    st.argmin = {x, y};
                }
                if (v > st.max) {
                    st.max = v;
                    st.argmax = {x, y};
                }
                if (!(v >= -1e-12 && v <= 0.5 + 1e-12)) in_range = false;
                if (kPSpecs[k].absorb) {
                    report.max_star_envelope_excess =
                        std::max(report.max_star_envelope_excess,
                                 v - kStarEnvelopeSlope * std::sqrt(x * y));
                } else {
                    report.max_swap_envelope_excess =
                        std::max(report.max_swap_envelope_excess,
                                 v - kSwapEnvelopeSlope * (std::sqrt(x) + std::sqrt(y)));
                }
            }
        }
    }

    // Route discrepancy across the diagonal switch: evaluate each p at a pair
    // sitting on the band edge through both the diagonal and the off-diagonal
    // formulas. The true values coincide, so any gap is numerical artifact;
    // it must stay below 1e-3 of the local scale.
    for (int i = 1; i < grid_size; ++i) {
        const double x = grid[i];
        double y_edge;
        if (source == KernelSource::SpecializedSqrt) {
            double ry = std::sqrt(x) + kDiagDelta;
            if (ry * ry > kActionBound) ry = std::sqrt(x) - kDiagDelta;
            y_edge = ry * ry;
        } else {
            y_edge = x + kDiagDelta <= kActionBound ? x + kDiagDelta : x - kDiagDelta;
        }
        if (!(y_edge > 0.0 && y_edge <= kActionBound)) continue;
        for (int k = 0; k < 4; ++k) {
            double a, b;
            try {
                a = eval_p(pr, source, x, y_edge, kPSpecs[k].sign, kPSpecs[k].absorb,
                           FRoute::Diagonal);
                b = eval_p(pr, source, x, y_edge, kPSpecs[k].sign, kPSpecs[k].absorb,
                           FRoute::OffDiagonal);
            } catch (const std::exception&) {
                ++report.evaluation_errors;
                continue;
            }
            const double jump = std::abs(a - b);
            auto& st = report.stats[k];
            st.max_diag_jump = std::max(st.max_diag_jump, jump);
            if (jump > 1e-3 * std::max(std::abs(a), std::abs(b)) + 1e-15)
                jumps_ok = false;
        }
    }

    report.feasible =
        any_value && in_range && jumps_ok && report.evaluation_errors == 0;
    return report;
}

}  // namespace sdgame
