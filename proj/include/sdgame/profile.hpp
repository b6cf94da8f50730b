#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sdgame/types.hpp"

namespace sdgame {

enum class SFamily { Zero, SinLog, SinLogLog, Const, Custom };
enum class DKind { SquareRoot, Custom };

const char* to_string(SFamily f);

/// Evidence that sup|s| and sup|x s'(x)| stay within the feasibility budget.
/// `analytic` is set when the suprema are closed-form; sampled profiles only
/// ever get grid evidence.
struct BoundCertificate {
    double sup_abs_s = 0.0;
    double sup_abs_xsprime = 0.0;
    bool analytic = false;
};

/// The pair of scalar functions (s, d) on (0, 1/16] that a game is built to
/// realize as v(omega+) = s + d and v(omega-) = s - d. Built-in s families
/// carry analytic derivatives; sampled profiles fall back to finite
/// differences. d is sqrt unless replaced via with_custom_d.
class SDProfile {
  public:
    static SDProfile zero();
    static SDProfile sinlog(double amplitude = kActionBound);
    static SDProfile sinloglog(double amplitude = kActionBound);
    static SDProfile constant(double c);

    /// Sampled s: two columns (x, s(x)), x strictly increasing in (0, 1/16].
    /// Piecewise-linear values, central-difference derivatives at the nodes.
    static SDProfile custom(std::vector<double> xs, std::vector<double> ss);

    /// Replace d = sqrt by an arbitrary positive function. d_prime may be
    /// empty, in which case value_derivative refuses the profile.
    SDProfile with_custom_d(std::function<double(double)> d,
                            std::function<double(double)> d_prime = {},
                            std::string label = "custom") const;

    double s(double x) const;
    double s_prime(double x) const;
    double d(double x) const;
    double d_prime(double x) const;
    bool has_d_prime() const;

    SFamily family() const { return family_; }
    DKind d_kind() const { return d_kind_; }
    double amplitude() const { return amplitude_; }

    /// Interval certifiably covered by evaluation: the sample span for
    /// sampled profiles, (lambda floor, 1/16] otherwise.
    std::pair<double, double> sample_range() const;

    /// One-line description for report and CSV headers.
    std::string describe() const;

  private:
    SDProfile() = default;

    double check_domain(double x, const char* who) const;

    SFamily family_ = SFamily::Zero;
    double amplitude_ = 0.0;  // scale A of the base family, or the Const value
    std::vector<double> xs_, ss_, slopes_;
    DKind d_kind_ = DKind::SquareRoot;
    std::function<double(double)> d_fn_, d_prime_fn_;
    std::string d_label_;
};

/// Analytic suprema for the built-in families; for sampled profiles, suprema
/// over a log-spaced grid of `grid_size` points (and the flag is clear).
BoundCertificate bound_certificate(const SDProfile& profile, int grid_size);

/// d v_lambda / d lambda at (omega+, omega-): s'(lambda) +- d'(lambda).
std::pair<double, double> value_derivative(const SDProfile& profile, Discount lambda);

}  // namespace sdgame
