#include "lofit/family.hpp"

#include <cmath>

#include "doctest.h"
#include "lofit/errors.hpp"

using namespace lofit;

namespace {

// Central finite difference of f at t.
template <typename F>
double fd(F f, double t, double h = 1e-5) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("cumulant derivatives are consistent with finite differences") {
    for (const auto& fam : {gaussian_family(), poisson_family(), bernoulli_family()}) {
        CAPTURE(fam.name);
        for (double t : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
            CHECK(fam.b1(t) == doctest::Approx(fd(fam.b, t)).epsilon(1e-6));
            CHECK(fam.b2(t) == doctest::Approx(fd(fam.b1, t)).epsilon(1e-6));
            CHECK(fam.b3(t) == doctest::Approx(fd(fam.b2, t)).epsilon(1e-5));
        }
    }
}

TEST_CASE("gaussian family pieces") {
    const auto g = gaussian_family();
    CHECK(g.b(2.0) == doctest::Approx(2.0));
    CHECK(g.a(0.25) == doctest::Approx(0.25));
    CHECK_THROWS_AS(g.a(0.0), domain_error);
    CHECK_THROWS_AS(g.a(-1.0), domain_error);
    CHECK(g.has_dispersion);
    // Standard normal log-density at y=0: -log(2 pi)/2.
    CHECK(g.c(0.0, 1.0) == doctest::Approx(-0.9189385).epsilon(1e-6));
    CHECK_THROWS_AS(g.validate_response(std::nan("")), domain_error);
}

TEST_CASE("poisson family pieces") {
    const auto p = poisson_family();
    CHECK(p.b(0.0) == doctest::Approx(1.0));
    CHECK(p.a(123.0) == doctest::Approx(1.0));
    CHECK_FALSE(p.has_dispersion);
    // log f(1; theta=0) = 1*0 - exp(0) - log(1!) = -1.
    CHECK(1.0 * 0.0 - p.b(0.0) + p.c(1.0, 1.0) == doctest::Approx(-1.0));
    CHECK_NOTHROW(p.validate_response(3.0));
    CHECK_THROWS_AS(p.validate_response(2.5), domain_error);
    CHECK_THROWS_AS(p.validate_response(-1.0), domain_error);
}

TEST_CASE("bernoulli family pieces") {
    const auto b = bernoulli_family();
    CHECK(b.b(0.0) == doctest::Approx(std::log(2.0)));
    // Softplus must not overflow and must vanish in the left tail.
    CHECK(b.b(800.0) == doctest::Approx(800.0));
    CHECK(b.b(-800.0) == doctest::Approx(0.0));
    CHECK(b.b1(0.0) == doctest::Approx(0.5));
    CHECK(b.b1(40.0) == doctest::Approx(1.0));
    CHECK(b.b2(0.0) == doctest::Approx(0.25));
    CHECK_NOTHROW(b.validate_response(0.0));
    CHECK_NOTHROW(b.validate_response(1.0));
    CHECK_THROWS_AS(b.validate_response(0.5), domain_error);
}

TEST_CASE("family lookup by name") {
    CHECK(family_by_name("gaussian").name == "gaussian");
    CHECK(family_by_name("poisson").name == "poisson");
    CHECK(family_by_name("bernoulli").name == "bernoulli");
    CHECK_THROWS_AS(family_by_name("gamma"), usage_error);
}
