#include "sdgame/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdgame {

const char* to_string(SFamily f) {
    switch (f) {
        case SFamily::Zero: return "zero";
        case SFamily::SinLog: return "sinlog";
        case SFamily::SinLogLog: return "sinloglog";
        case SFamily::Const: return "const";
        case SFamily::Custom: return "custom";
    }
    return "?";
}

SDProfile SDProfile::zero() {
    SDProfile p;
    p.family_ = SFamily::Zero;
    return p;
}

SDProfile SDProfile::sinlog(double amplitude) {
    SDProfile p;
    p.family_ = SFamily::SinLog;
    p.amplitude_ = amplitude;
    return p;
}

SDProfile SDProfile::sinloglog(double amplitude) {
    SDProfile p;
    p.family_ = SFamily::SinLogLog;
    p.amplitude_ = amplitude;
    return p;
}

SDProfile SDProfile::constant(double c) {
    SDProfile p;
    p.family_ = SFamily::Const;
    p.amplitude_ = c;
    return p;
}

SDProfile SDProfile::custom(std::vector<double> xs, std::vector<double> ss) {
    if (xs.size() != ss.size() || xs.size() < 2)
        throw std::invalid_argument("custom profile needs >= 2 sample pairs");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0 && xs[i] <= kActionBound))
            throw std::domain_error("custom sample x outside (0, 1/16]: " +
                                    std::to_string(xs[i]));
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw std::invalid_argument("custom sample x not strictly increasing");
    }
    SDProfile p;
    p.family_ = SFamily::Custom;
    p.xs_ = std::move(xs);
    p.ss_ = std::move(ss);
    const std::size_t n = p.xs_.size();
    p.slopes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i == n - 1 ? n - 1 : i + 1;
        p.slopes_[i] = (p.ss_[hi] - p.ss_[lo]) / (p.xs_[hi] - p.xs_[lo]);
    }
    return p;
}

SDProfile SDProfile::with_custom_d(std::function<double(double)> d,
                                   std::function<double(double)> d_prime,
                                   std::string label) const {
    if (!d) throw std::invalid_argument("with_custom_d requires a d function");
    SDProfile p = *this;
    p.d_kind_ = DKind::Custom;
    p.d_fn_ = std::move(d);
    p.d_prime_fn_ = std::move(d_prime);
    p.d_label_ = std::move(label);
    return p;
}

double SDProfile::check_domain(double x, const char* who) const {
    if (!(x > 0.0 && x <= kActionBound))
        throw std::domain_error(std::string(who) + " outside (0, 1/16]: " +
                                std::to_string(x));
    return x;
}

namespace {

// Piecewise-linear interpolation with linear extrapolation off the ends.
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = it == xs.end() ? xs.size() - 1 : std::size_t(it - xs.begin());
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

double SDProfile::s(double x) const {
    check_domain(x, "s argument");
    switch (family_) {
        case SFamily::Zero: return 0.0;
        case SFamily::SinLog: return amplitude_ * std::sin(std::log(x));
        case SFamily::SinLogLog:
            return amplitude_ * std::sin(std::log(-std::log(x)));
        case SFamily::Const: return amplitude_;
        case SFamily::Custom: return interp(xs_, ss_, x);
    }
    return 0.0;
}

double SDProfile::s_prime(double x) const {
    check_domain(x, "s' argument");
    switch (family_) {
        case SFamily::Zero: return 0.0;
        case SFamily::SinLog: return amplitude_ * std::cos(std::log(x)) / x;
        case SFamily::SinLogLog:
            // d/dx ln(-ln x) = 1 / (x ln x), negative on (0, 1).
            return amplitude_ * std::cos(std::log(-std::log(x))) / (x * std::log(x));
        case SFamily::Const: return 0.0;
        case SFamily::Custom: return interp(xs_, slopes_, x);
    }
    return 0.0;
}

double SDProfile::d(double x) const {
    check_domain(x, "d argument");
    return d_kind_ == DKind::SquareRoot ? std::sqrt(x) : d_fn_(x);
}

double SDProfile::d_prime(double x) const {
    check_domain(x, "d' argument");
    if (d_kind_ == DKind::SquareRoot) return 0.5 / std::sqrt(x);
    if (!d_prime_fn_) throw std::logic_error("custom d has no derivative");
    return d_prime_fn_(x);
}

bool SDProfile::has_d_prime() const {
    return d_kind_ == DKind::SquareRoot || static_cast<bool>(d_prime_fn_);
}

std::pair<double, double> SDProfile::sample_range() const {
    if (family_ == SFamily::Custom) return {xs_.front(), xs_.back()};
    return {kLambdaFloor, kActionBound};
}

std::string SDProfile::describe() const {
    std::ostringstream os;
    os << "s=" << to_string(family_);
    if (family_ == SFamily::SinLog || family_ == SFamily::SinLogLog)
        os << "(A=" << amplitude_ << ")";
    else if (family_ == SFamily::Const)
        os << "(c=" << amplitude_ << ")";
    else if (family_ == SFamily::Custom)
        os << "(" << xs_.size() << " samples)";
    os << ", d=" << (d_kind_ == DKind::SquareRoot ? "sqrt" : d_label_.c_str());
    return os.str();
}

BoundCertificate bound_certificate(const SDProfile& profile, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
    const double a = std::abs(profile.amplitude());
    switch (profile.family()) {
        case SFamily::Zero: return {0.0, 0.0, true};
        case SFamily::SinLog: return {a, a, true};
        case SFamily::SinLogLog:
            // |x s'| = |cos(ln(-ln x))| * A / |ln x| peaks at x = 1/16.
            return {a, a / (4.0 * std::log(2.0)), true};
        case SFamily::Const: return {a, 0.0, true};
        case SFamily::Custom: break;
    }
    BoundCertificate cert;
    cert.analytic = false;
    const auto [range_lo, range_hi] = profile.sample_range();
    const double lo = std::log(range_lo), hi = std::log(range_hi);
    for (int i = 0; i < grid_size; ++i) {
        const double x = std::exp(lo + (hi - lo) * i / (grid_size - 1));
        cert.sup_abs_s = std::max(cert.sup_abs_s, std::abs(profile.s(x)));
        cert.sup_abs_xsprime =
            std::max(cert.sup_abs_xsprime, std::abs(x * profile.s_prime(x)));
    }
    return cert;
}

std::pair<double, double> value_derivative(const SDProfile& profile, Discount lambda) {
    if (!profile.has_d_prime())
        throw std::logic_error("value_derivative needs d'; custom d lacks one");
    const double sp = profile.s_prime(lambda.value());
    const double dp = profile.d_prime(lambda.value());
    return {sp + dp, sp - dp};
}

}  // namespace sdgame
