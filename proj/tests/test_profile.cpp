#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sdgame/profile.hpp"

using namespace sdgame;

namespace {

// Central difference with a step proportional to x, so the probe stays
// inside (0, 1/16] even at tiny arguments.
double fd_slope(const SDProfile& p, double x) {
    const double h = 1e-6 * x;
    return (p.s(x + h) - p.s(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("zero profile is identically zero with sqrt d") {
    const SDProfile p = SDProfile::zero();
    CHECK(p.s(1e-5) == 0.0);
    CHECK(p.s_prime(0.03) == 0.0);
    CHECK(p.d(0.25 * 0.25) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.d_prime(0.0625) == doctest::Approx(0.5 / 0.25).epsilon(1e-15));
    CHECK(p.has_d_prime());
    CHECK(p.family() == SFamily::Zero);
}

TEST_CASE("sinlog evaluates A sin(ln x) and is log-periodic") {
    const double a = 1.0 / 16.0;
    const SDProfile p = SDProfile::sinlog(a);
    const double x = 1e-3;
    CHECK(p.s(x) == doctest::Approx(a * std::sin(std::log(x))).epsilon(1e-15));
    // Period e^{2 pi} in x: s(x e^{-2 pi}) = s(x).
    const double shifted = x * std::exp(-2.0 * M_PI);
    CHECK(p.s(shifted) == doctest::Approx(p.s(x)).epsilon(1e-10));
    for (double t : {1e-2, 1e-4, 1e-6})
        CHECK(p.s_prime(t) == doctest::Approx(fd_slope(p, t)).epsilon(1e-6));
}

TEST_CASE("sinloglog evaluates A sin(ln(-ln x))") {
    const double a = 1.0 / 16.0;
    const SDProfile p = SDProfile::sinloglog(a);
    const double x = 1e-8;
    CHECK(p.s(x) ==
          doctest::Approx(a * std::sin(std::log(-std::log(x)))).epsilon(1e-15));
    for (double t : {1e-2, 1e-5, 1e-9})
        CHECK(p.s_prime(t) == doctest::Approx(fd_slope(p, t)).epsilon(1e-6));
    // x s'(x) stays tiny: the whole point of the family.
    CHECK(std::abs(1e-9 * p.s_prime(1e-9)) < 4e-3);
}

TEST_CASE("constant profile") {
    const SDProfile p = SDProfile::constant(0.01);
    CHECK(p.s(1e-7) == 0.01);
    CHECK(p.s_prime(1e-7) == 0.0);
    CHECK(p.family() == SFamily::Const);
}

TEST_CASE("custom profile interpolates samples piecewise linearly") {
    // Sample a line, so interpolation is exact everywhere.
    std::vector<double> xs, ss;
    for (int i = 1; i <= 9; ++i) {
        xs.push_back(i / 160.0);
        ss.push_back(0.5 * xs.back() - 0.001);
    }
    const SDProfile p = SDProfile::custom(xs, ss);
    CHECK(p.s(xs[3]) == doctest::Approx(ss[3]).epsilon(1e-15));
    CHECK(p.s(0.5 * (xs[2] + xs[3])) ==
          doctest::Approx(0.5 * (ss[2] + ss[3])).epsilon(1e-13));
    CHECK(p.s_prime(xs[4]) == doctest::Approx(0.5).epsilon(1e-9));
    // Linear extrapolation below the first sample.
    CHECK(p.s(xs[0] / 2) == doctest::Approx(0.5 * xs[0] / 2 - 0.001).epsilon(1e-9));
    const auto [lo, hi] = p.sample_range();
    CHECK(lo == xs.front());
    CHECK(hi == xs.back());
}

TEST_CASE("custom profile rejects bad samples") {
    CHECK_THROWS_AS(SDProfile::custom({0.01}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SDProfile::custom({0.02, 0.01}, {0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SDProfile::custom({0.0, 0.01}, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(SDProfile::custom({0.01, 0.2}, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(SDProfile::custom({0.01, 0.02}, {0.0}), std::invalid_argument);
}

TEST_CASE("custom d replaces sqrt") {
    const SDProfile p = SDProfile::zero().with_custom_d(
        [](double x) { return 2.0 * x; }, [](double) { return 2.0; }, "linear");
    CHECK(p.d_kind() == DKind::Custom);
    CHECK(p.d(0.01) == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(p.d_prime(0.01) == 2.0);
    CHECK(p.has_d_prime());

    const SDProfile q =
        SDProfile::zero().with_custom_d([](double x) { return 2.0 * x; });
    CHECK_FALSE(q.has_d_prime());
    CHECK_THROWS_AS(q.d_prime(0.01), std::logic_error);
}

TEST_CASE("bound certificates") {
    const BoundCertificate z = bound_certificate(SDProfile::zero(), 64);
    CHECK(z.analytic);
    CHECK(z.sup_abs_s == 0.0);
    CHECK(z.sup_abs_xsprime == 0.0);

    const BoundCertificate sl = bound_certificate(SDProfile::sinlog(1.0 / 16), 64);
    CHECK(sl.analytic);
    CHECK(sl.sup_abs_s == doctest::Approx(1.0 / 16).epsilon(1e-15));
    CHECK(sl.sup_abs_xsprime == doctest::Approx(1.0 / 16).epsilon(1e-15));

    // |x s'| = |cos(ln(-ln x))| A / |ln x| peaks at the right endpoint where
    // |ln x| = ln 16, giving A / (4 ln 2).
    const BoundCertificate sll =
        bound_certificate(SDProfile::sinloglog(1.0 / 16), 64);
    CHECK(sll.analytic);
    CHECK(sll.sup_abs_xsprime ==
          doctest::Approx(1.0 / (64.0 * std::log(2.0))).epsilon(1e-12));

    std::vector<double> xs, ss;
    for (int i = 1; i <= 32; ++i) {
        xs.push_back(i / 512.0);
        ss.push_back(std::sin(std::log(xs.back())) / 16.0);
    }
    const BoundCertificate c = bound_certificate(SDProfile::custom(xs, ss), 256);
    CHECK_FALSE(c.analytic);
    CHECK(c.sup_abs_s <= 1.0 / 16 + 1e-9);
    CHECK(c.sup_abs_s > 0.0);
}

TEST_CASE("value derivative is s' +- d'") {
    const auto [dp, dm] = value_derivative(SDProfile::zero(), Discount(1.0 / 16));
    CHECK(dp == doctest::Approx(2.0).epsilon(1e-15));   // d' = 1/(2 sqrt(1/16))
    CHECK(dm == doctest::Approx(-2.0).epsilon(1e-15));

    const SDProfile sl = SDProfile::sinlog(1.0 / 16);
    const double l = 1e-4;
    const auto [p2, m2] = value_derivative(sl, Discount(l));
    const double sp = std::cos(std::log(l)) / (16.0 * l);
    const double dd = 0.5 / std::sqrt(l);
    CHECK(p2 == doctest::Approx(sp + dd).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(sp - dd).epsilon(1e-12));

    const SDProfile nd =
        SDProfile::zero().with_custom_d([](double x) { return x; });
    CHECK_THROWS_AS(value_derivative(nd, Discount(0.01)), std::logic_error);
}

TEST_CASE("domain validation on evaluation") {
    const SDProfile p = SDProfile::sinlog();
    CHECK_THROWS_AS(p.s(0.0), std::domain_error);
    CHECK_THROWS_AS(p.s(0.07), std::domain_error);
    CHECK_THROWS_AS(p.d(-0.01), std::domain_error);
}
