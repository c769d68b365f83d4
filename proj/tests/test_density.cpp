#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mp3/density.hpp"
#include "mp3/quadrature.hpp"

using namespace mp3;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cubic satisfied by phi (derived once from the defining cubic of R via
// phi = 2x(rtR - 1)); used here as an implementation-independent check.
double phi_cubic(double phi, double x, const Params& p) {
    double r = p.r, t = p.t, a = p.a;
    return phi * phi * phi + 2.0 * (x - (r - 1.0) * t) * phi * phi +
           (x * x + ((-2.0 * r + 3.0) * t - a) * x +
            (r - 1.0) * (r - 1.0) * t * t) *
               phi +
           t * x * (x + (r - 1.0) * (a - t));
}

const Params kLattice[] = {
    {0.1, 0.2, 0.0}, {0.1, 1.0, 0.5}, {0.1, 5.0, 3.0}, {0.3, 0.5, 1.0},
    {0.3, 1.0, 0.0}, {0.3, 1.0, 1.0}, {0.3, 2.0, 0.5}, {0.7, 0.2, 3.0},
    {0.7, 2.0, 1.0}, {0.7, 5.0, 0.0}, {1.0, 0.5, 1.0}, {1.0, 1.0, 1.0},
    {1.0, 2.0, 1.0}, {1.0, 1.0, 0.0}, {1.0, 5.0, 3.0},
};

}  // namespace

TEST_CASE("support cubic values") {
    CHECK(eval_s(4.0, Params(1, 1, 0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eval_s(6.75, Params(1, 1, 1)) ==
          doctest::Approx(0.0).scale(1e3).epsilon(1e-13));
    CHECK(eval_s(0.0, Params(0.5, 1, 1)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("support edges") {
    SUBCASE("a = 0 closed form") {
        Support s = support(Params(0.3, 1, 0));
        CHECK(s.n_roots == 2);
        CHECK(s.x_left == doctest::Approx(0.20455488498966781).epsilon(1e-14));
        CHECK(s.x_right == doctest::Approx(2.395445115010332).epsilon(1e-14));

        Support s2 = support(Params(0.3, 2, 0));
        CHECK(s2.x_left == doctest::Approx(2.0 * 0.20455488498966781).epsilon(1e-14));
        CHECK(s2.x_right == doctest::Approx(2.0 * 2.395445115010332).epsilon(1e-14));
    }

    SUBCASE("r = 1 below the critical time") {
        Support s = support(Params(1, 0.5, 1));
        REQUIRE(s.n_roots == 3);
        CHECK(s.roots[0] == 0.0);
        CHECK(s.x_left == doctest::Approx(0.028350136390617831).epsilon(1e-14));
        CHECK(s.x_right == doctest::Approx(4.4091498636093824).epsilon(1e-14));
    }

    SUBCASE("r = 1 at and above the critical time") {
        Support s = support(Params(1, 1, 1));
        CHECK(s.x_left == 0.0);
        CHECK(s.x_right == doctest::Approx(6.75).epsilon(1e-14));

        Support s2 = support(Params(1, 2, 1));
        CHECK(s2.roots[0] == doctest::Approx(-0.090169943749474235).epsilon(1e-13));
        CHECK(s2.x_left == 0.0);
        CHECK(s2.x_right == doctest::Approx(11.090169943749475).epsilon(1e-13));
    }

    SUBCASE("general cubic path") {
        Support s = support(Params(0.3, 1, 1));
        REQUIRE(s.n_roots == 3);
        CHECK(s.roots[0] == doctest::Approx(-0.15490274305776816).epsilon(1e-12));
        CHECK(s.x_left == doctest::Approx(0.51632306795683613).epsilon(1e-12));
        CHECK(s.x_right == doctest::Approx(4.2885796751009346).epsilon(1e-12));
        // Bulk sign structure: S < 0 strictly inside, > 0 outside.
        CHECK(eval_s(1.0, Params(0.3, 1, 1)) < 0.0);
        CHECK(eval_s(5.0, Params(0.3, 1, 1)) > 0.0);
    }

    SUBCASE("t = 0 collapses to the initial point mass position") {
        Support s = support(Params(0.5, 0, 2));
        CHECK(s.degenerate);
        CHECK(s.x_left == 2.0);
        CHECK(s.x_right == 2.0);
    }

    SUBCASE("large-t support tracks the dilated classic edges") {
        Support s = support(Params(0.3, 1e4, 1));
        REQUIRE(s.n_roots == 3);
        CHECK(s.x_left / 1e4 == doctest::Approx(0.20455488498966781).epsilon(2e-2));
        CHECK(s.x_right / 1e4 == doctest::Approx(2.395445115010332).epsilon(2e-2));
    }

    SUBCASE("three real roots across the parameter lattice") {
        for (const Params& p : kLattice) {
            if (p.a == 0.0) continue;
            Support s = support(p);
            CHECK(s.n_roots == 3);
            CHECK(s.x_left < s.x_right);
            CHECK(s.x_left >= 0.0);
        }
    }
}

TEST_CASE("phi evaluation") {
    SUBCASE("a = 0 limit") {
        CHECK(eval_phi(1.0, Params(1, 1, 0)).phi == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(eval_phi(1.5, Params(0.3, 2, 0)).phi ==
              doctest::Approx(-1.5 + (0.3 - 1.0) * 2.0).epsilon(1e-12));
    }

    SUBCASE("interior value frozen from the R-side cubic") {
        CHECK(eval_phi(1.0, Params(1, 2, 1)).phi ==
              doctest::Approx(-1.5436890126920761).epsilon(1e-12));
        CHECK(eval_phi(1.0, Params(0.3, 1, 1)).phi ==
              doctest::Approx(-2.3520444959272333).epsilon(1e-12));
        // R vanishes exactly at x = 1/2 of the critical (1, 1, 1) family,
        // so phi = 2x(rtR - 1) = -1 there.
        CHECK(eval_phi(0.5, Params(1, 1, 1)).phi == doctest::Approx(-1.0).epsilon(1e-13));
    }

    SUBCASE("defining cubic residual across the lattice") {
        for (const Params& p : kLattice) {
            Support s = support(p);
            if (s.degenerate) continue;
            for (int i = 0; i < 9; ++i) {
                double x = s.x_left + (s.x_right - s.x_left) * (i + 0.5) / 9.0;
                double phi = eval_phi(x, p).phi;
                double res = phi_cubic(phi, x, p);
                double scale = std::max(std::abs(phi * phi * phi), 1.0);
                CHECK(std::abs(res) <= 1e-8 * scale);
            }
        }
    }

    SUBCASE("left-edge value scales as the squared distance to criticality") {
        // phi(x_left) ~ -(4/9a) eps^2 as t -> a from below.
        double a = 1.0;
        for (double eps : {0.05, 0.02, 0.01}) {
            Params p(1.0, a - eps, a);
            double xl = support(p).x_left;
            // At the edge itself S crosses zero, so seed the branch choice
            // with the expected leading term.
            double hint = -4.0 * eps * eps / (9.0 * a);
            double phi = eval_phi(xl, p, &hint).phi;
            CHECK(phi * (-9.0 * a / (4.0 * eps * eps)) ==
                  doctest::Approx(1.0).epsilon(6.0 * eps));
        }
    }

    SUBCASE("outside the bulk: ambiguous without a hint, decided with one") {
        Params p(1, 0.5, 1);
        Support s = support(p);
        double x_out = s.x_left - 1e-3;
        CHECK_THROWS_AS(eval_phi(x_out, p), BranchAmbiguity);

        double phi_in = eval_phi(s.x_left + 1e-3, p).phi;
        double phi_out = eval_phi(x_out, p, &phi_in).phi;
        CHECK(std::abs(phi_out - phi_in) < 0.05 * (1.0 + std::abs(phi_in)));
    }
}

TEST_CASE("hilbert transform") {
    SUBCASE("a = 0 closed forms") {
        CHECK(hilbert_r(2.0, Params(1, 1, 0)) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(hilbert_r(1.0, Params(0.3, 1, 0)) == doctest::Approx(0.5).epsilon(1e-14));
    }

    SUBCASE("frozen interior values") {
        CHECK(hilbert_r(1.0, Params(1, 2, 1)) ==
              doctest::Approx(0.11407774682698096).epsilon(1e-11));
        CHECK(hilbert_r(1.0, Params(0.3, 1, 1)) ==
              doctest::Approx(-0.58674082654538906).epsilon(1e-11));
        CHECK(hilbert_r(0.5, Params(1, 1, 1)) ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }

    SUBCASE("continuity as a -> 0") {
        for (double r : {0.3, 0.7, 1.0}) {
            for (double x : {0.8, 1.5}) {
                double closed = (x + (r - 1.0) * 1.0) / (2.0 * r * 1.0 * x);
                CHECK(std::abs(hilbert_r(x, Params(r, 1.0, 1e-8)) - closed) < 1e-5);
            }
        }
    }
}

TEST_CASE("density values") {
    SUBCASE("classic family") {
        CHECK(density(1.0, Params(1, 1, 0)) ==
              doctest::Approx(0.27566444771089604).epsilon(1e-14));
        CHECK(density(1.0, Params(0.3, 1, 0)) ==
              doctest::Approx(0.55893379115706376).epsilon(1e-14));
        CHECK(density_mp_classic(1.0, 1.0) ==
              doctest::Approx(0.27566444771089604).epsilon(1e-14));
        CHECK(density_mp_classic(1.0, 0.3) ==
              doctest::Approx(0.55893379115706376).epsilon(1e-14));
        // Edge zero.
        double xl = (1.0 - std::sqrt(0.3)) * (1.0 - std::sqrt(0.3));
        CHECK(density_mp_classic(xl, 0.3) == 0.0);
        CHECK(density(3.0, Params(0.3, 1, 0)) == 0.0);
    }

    SUBCASE("three-parameter values frozen from the R-side cubic") {
        CHECK(density(1.0, Params(1, 2, 1)) ==
              doctest::Approx(0.17748044240644967).epsilon(1e-11));
        CHECK(density(1.0, Params(0.3, 1, 1)) ==
              doctest::Approx(0.41177011656227486).epsilon(1e-11));
        // Exact interior point: rho(1/2; 1,1,1) = 1/pi.
        CHECK(density(0.5, Params(1, 1, 1)) ==
              doctest::Approx(0.31830988618379069).epsilon(1e-12));
    }

    SUBCASE("origin power law of the critical family") {
        // rho ~ (sqrt(3)/2pi) x^{-1/3} at t = a = 1 (subleading terms
        // present at x = 1e-3, hence the loose tolerance).
        double rho = density(1e-3, Params(1, 1, 1));
        CHECK(rho == doctest::Approx(0.27566444771089604 * std::pow(1e-3, -1.0 / 3.0))
                         .epsilon(0.05));
    }

    SUBCASE("domain checks") {
        CHECK_THROWS_AS(density(-0.5, Params(0.3, 1, 1)), DomainError);
        CHECK_THROWS_AS(density(1.0, Params(0.3, 0, 1)), DomainError);
        CHECK_THROWS_AS(density_mp_classic(1.0, 1.5), DomainError);
        CHECK_THROWS_AS(density_mp_classic(1.0, 0.0), DomainError);
        CHECK_THROWS_AS(Params(0.3, -1, 0), DomainError);
        CHECK_THROWS_AS(Params(0.3, 1, -0.1), DomainError);
        CHECK_THROWS_AS(Params(0.0, 1, 0), DomainError);
    }

    SUBCASE("zero outside the bulk, finite positive inside") {
        for (const Params& p : kLattice) {
            Support s = support(p);
            if (s.degenerate) continue;
            CHECK(density(s.x_right + 0.5, p) == 0.0);
            if (s.x_left > 0.0) CHECK(density(0.5 * s.x_left, p) == 0.0);
            for (int i = 0; i < 7; ++i) {
                double x = s.x_left + (s.x_right - s.x_left) * (i + 0.5) / 7.0;
                double rho = density(x, p);
                CHECK(std::isfinite(rho));
                CHECK(rho > 0.0);
            }
        }
    }
}

TEST_CASE("factored form agrees with the radicand form") {
    SUBCASE("a = 0: factors are the support edges") {
        FactoredDensity f = density_via_f(1.0, Params(0.3, 1, 0));
        CHECK(f.f_left == doctest::Approx(0.20455488498966781).epsilon(1e-10));
        CHECK(f.f_right == doctest::Approx(2.395445115010332).epsilon(1e-10));
        CHECK(f.rho == doctest::Approx(0.55893379115706376).epsilon(1e-12));
    }

    SUBCASE("interior agreement to 1e-9 relative") {
        for (const Params& p : kLattice) {
            Support s = support(p);
            if (s.degenerate) continue;
            for (int i = 0; i < 9; ++i) {
                double x = s.x_left + (s.x_right - s.x_left) * (i + 0.5) / 9.0;
                double a_path = density(x, p);
                double b_path = density_via_f(x, p).rho;
                CHECK(std::abs(a_path - b_path) <= 1e-9 * std::max(a_path, 1e-3));
            }
        }
    }

    SUBCASE("small positive just inside a detached left edge") {
        Params p(1, 0.5, 1);
        double xl = support(p).x_left;
        double rho = density_via_f(xl + 1e-6, p).rho;
        CHECK(rho > 0.0);
        CHECK(rho < 1e-1);
    }
}

TEST_CASE("scaling homogeneity") {
    for (double kappa : {0.1, 2.0, 10.0}) {
        for (const Params& p : {Params(0.3, 1, 1), Params(1, 1, 1),
                                Params(0.7, 2, 0.5), Params(0.3, 1, 0)}) {
            Params ps(p.r, kappa * p.t, kappa * p.a);
            Support s = support(p);
            for (int i = 0; i < 11; ++i) {
                double x = s.x_left + (s.x_right - s.x_left) * (i + 0.5) / 11.0;
                CHECK(std::abs(kappa * density(kappa * x, ps) - density(x, p)) < 1e-9);
            }
        }
    }
}

TEST_CASE("moments") {
    CHECK(moment(0, Params(0.7, 2, 3)) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(moment(1, Params(0.3, 1, 1)) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(moment(1, Params(1, 1, 0)) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(moment(1, Params(1, 0.5, 1)) == doctest::Approx(1.5).epsilon(1e-8));
    CHECK_THROWS_AS(moment(-1, Params(1, 1, 0)), DomainError);
}

TEST_CASE("chiral density") {
    SUBCASE("even symmetry and the square-of-x pullback") {
        Params p(0.3, 1, 1);
        for (double x : {0.25, 0.8, 1.3}) {
            CHECK(density_chiral(x, p) == density_chiral(-x, p));
            CHECK(density_chiral(x, p) ==
                  doctest::Approx(2.0 * x * density(x * x, Params(0.3, 1, 1))));
        }
        // The source parameter enters the squared-variable law as a^2.
        CHECK(density_chiral(1.2, Params(1, 2, 0.5)) ==
              doctest::Approx(2.4 * density(1.44, Params(1, 2, 0.25))));
    }

    SUBCASE("origin value across the chiral transition") {
        CHECK(density_chiral(0.0, Params(1, 0.5, 1)) == 0.0);
        CHECK(density_chiral(0.0, Params(1, 1, 1)) == 0.0);
        // Above the transition: 2 sqrt(t - a^2) / (pi r t).
        CHECK(density_chiral(0.0, Params(1, 2, 1)) ==
              doctest::Approx(0.31830988618379069).epsilon(1e-12));
        // The x -> 0 limit of the bulk form agrees with the closed value.
        CHECK(density_chiral(1e-5, Params(1, 2, 1)) ==
              doctest::Approx(density_chiral(0.0, Params(1, 2, 1))).epsilon(1e-3));
        // Onset scaling just above the transition at t_c = a^2.
        double tc = 1.0, dt = 1e-4;
        CHECK(density_chiral(0.0, Params(1, tc + dt, 1)) ==
              doctest::Approx(2.0 / (kPi * tc) * std::sqrt(dt)).epsilon(1e-3));
    }

    SUBCASE("total mass is 2 (one copy per sign of x)") {
        for (const Params& p : {Params(1, 0.5, 1), Params(1, 2, 1), Params(0.3, 1, 1)}) {
            Params bulk(p.r, p.t, p.a * p.a);
            Support s = support(bulk);
            double lo = std::sqrt(s.x_left), hi = std::sqrt(s.x_right);
            double half = integrate_de([&](double x) { return density_chiral(x, p); },
                                       lo, hi, 1e-10);
            CHECK(2.0 * half == doctest::Approx(2.0).epsilon(1e-7));
        }
    }

    SUBCASE("t = 0 rejected") {
        CHECK_THROWS_AS(density_chiral(0.5, Params(1, 0, 1)), DomainError);
    }
}

TEST_CASE("wigner semicircle") {
    CHECK(density_wigner(0.0) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
    CHECK(density_wigner(2.0) == 0.0);
    CHECK(density_wigner(-2.5) == 0.0);
    CHECK(density_wigner(1.0) == doctest::Approx(std::sqrt(3.0) / kPi).epsilon(1e-15));
    double mass = integrate_de([](double x) { return density_wigner(x); },
                               -2.0, 2.0, 1e-10);
    CHECK(mass == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("long-term dilation limit") {
    // t rho(t x; r, t, 1) approaches the classic density at large t.
    double t = 1e4;
    for (double r : {0.3, 1.0}) {
        Params p(r, t, 1);
        double sup = 0.0;
        double xl = (1.0 - std::sqrt(r)) * (1.0 - std::sqrt(r));
        double xr = (1.0 + std::sqrt(r)) * (1.0 + std::sqrt(r));
        for (int i = 0; i < 400; ++i) {
            double x = xl + (xr - xl) * (i + 0.5) / 400.0;
            sup = std::max(sup, std::abs(t * density(t * x, p) -
                                         density_mp_classic(x, r)));
        }
        CHECK(sup < 0.01);
    }
}
