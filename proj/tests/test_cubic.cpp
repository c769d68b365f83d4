#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "mp3/cubic.hpp"

using namespace mp3;

TEST_CASE("quadratic roots") {
    double r[2];

    SUBCASE("two real roots, ascending") {
        // x^2 - 3x + 2 = (x-1)(x-2)
        REQUIRE(solve_quadratic(1.0, -3.0, 2.0, r) == 2);
        CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-14));
    }

    SUBCASE("no real roots") {
        CHECK(solve_quadratic(1.0, 0.0, 1.0, r) == 0);
    }

    SUBCASE("linear fallback") {
        REQUIRE(solve_quadratic(0.0, 2.0, -8.0, r) == 1);
        CHECK(r[0] == doctest::Approx(4.0));
    }

    SUBCASE("cancellation-prone pair") {
        // x^2 - 1e8 x + 1 has roots ~1e8 and ~1e-8; the naive formula
        // loses the small one entirely.
        REQUIRE(solve_quadratic(1.0, -1e8, 1.0, r) == 2);
        CHECK(r[0] == doctest::Approx(1e-8).epsilon(1e-12));
        CHECK(r[1] == doctest::Approx(1e8).epsilon(1e-12));
    }
}

TEST_CASE("cubic with three real roots") {
    double r[3];
    // (x-1)(x-2)(x-3)
    REQUIRE(solve_cubic(1.0, -6.0, 11.0, -6.0, r) == 3);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r[2] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(cubic_discriminant(1.0, -6.0, 11.0, -6.0) > 0.0);
}

TEST_CASE("cubic with one real root") {
    double r[3];
    // x^3 + x + 1: single real root near -0.6823
    REQUIRE(solve_cubic(1.0, 0.0, 1.0, 1.0, r) == 1);
    CHECK(r[0] == doctest::Approx(-0.68232780382801933).epsilon(1e-13));
    CHECK(cubic_discriminant(1.0, 0.0, 1.0, 1.0) < 0.0);
}

TEST_CASE("cubic with a double root") {
    double r[3];
    // (x-1)^2 (x-4) = x^3 - 6x^2 + 9x - 4
    int n = solve_cubic(1.0, -6.0, 9.0, -4.0, r);
    REQUIRE(n == 3);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r[2] == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("widely spread roots keep the cubic a cubic") {
    // 4 (x + 2.5e7)(x - 2000)(x - 24000): the leading coefficient is
    // tiny next to the constant term, but the polynomial is still a
    // genuine cubic and all three roots must come back.
    double r1 = -2.5e7, r2 = 2000.0, r3 = 24000.0;
    double c3 = 4.0;
    double c2 = -c3 * (r1 + r2 + r3);
    double c1 = c3 * (r1 * r2 + r1 * r3 + r2 * r3);
    double c0 = -c3 * r1 * r2 * r3;
    double r[3];
    REQUIRE(solve_cubic(c3, c2, c1, c0, r) == 3);
    CHECK(r[0] == doctest::Approx(r1).epsilon(1e-9));
    CHECK(r[1] == doctest::Approx(r2).epsilon(1e-9));
    CHECK(r[2] == doctest::Approx(r3).epsilon(1e-9));
}

TEST_CASE("degenerate leading coefficient falls through") {
    double r[3];
    REQUIRE(solve_cubic(0.0, 1.0, -3.0, 2.0, r) == 2);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(2.0));
}

TEST_CASE("complex root triple") {
    auto roots = cubic_roots(1.0, 0.0, 1.0, 1.0);
    // One real root, then a conjugate pair.
    CHECK(std::abs(roots[0].imag()) < 1e-14);
    CHECK(roots[1].imag() == doctest::Approx(-roots[2].imag()));
    CHECK(roots[1].real() == doctest::Approx(roots[2].real()));
    // Vieta: sum = -c2/c3 = 0, product = -c0/c3 = -1.
    std::complex<double> sum = roots[0] + roots[1] + roots[2];
    std::complex<double> prod = roots[0] * roots[1] * roots[2];
    CHECK(std::abs(sum) < 1e-12);
    CHECK(std::abs(prod + 1.0) < 1e-12);
}

TEST_CASE("residuals vanish after polish") {
    // A batch of random-ish cubics: every reported root must satisfy
    // the polynomial to near machine precision relative to term size.
    const double cases[][4] = {
        {2.0, -7.0, 3.5, 0.25},
        {-1.0, 0.3, 12.0, -5.0},
        {1e-3, 1.0, -1.0, -1e3},
        {5.0, 0.0, -20.0, 1.0},
    };
    for (const auto& c : cases) {
        double r[3];
        int n = solve_cubic(c[0], c[1], c[2], c[3], r);
        REQUIRE(n >= 1);
        for (int i = 0; i < n; ++i) {
            double x = r[i];
            double val = eval_poly3(c[0], c[1], c[2], c[3], x);
            double scale = std::abs(c[0] * x * x * x) + std::abs(c[1] * x * x) +
                           std::abs(c[2] * x) + std::abs(c[3]);
            CHECK(std::abs(val) <= 1e-12 * scale);
        }
    }
}
