#include "discjam/errors.hpp"
#include "discjam/geometry.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cfloat>
#include <numbers>
#include <random>

using namespace discjam;

TEST_SUITE("geometry") {

TEST_CASE("equal circles meet at (1, +-sqrt3)")
{
    const auto pts = circle_circle_intersections({0, 0}, 2, {2, 0}, 2);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pts[0].y == doctest::Approx(std::numbers::sqrt3).epsilon(1e-15));
    CHECK(pts[1].x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pts[1].y == doctest::Approx(-std::numbers::sqrt3).epsilon(1e-15));
}

TEST_CASE("disjoint circles have no intersection")
{
    CHECK(circle_circle_intersections({0, 0}, 1, {4, 0}, 1).empty());
    CHECK(circle_circle_intersections({0, 0}, 5, {1, 0}, 1).empty());
}

TEST_CASE("external tangency gives a single point")
{
    const auto pts = circle_circle_intersections({0, 0}, 2, {4, 0}, 2);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == Point2{2, 0});
}

TEST_CASE("internal tangency gives a single point")
{
    const auto pts = circle_circle_intersections({0, 0}, 3, {1, 0}, 2);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == doctest::Approx(3.0));
    CHECK(pts[0].y == doctest::Approx(0.0));
}

TEST_CASE("coincident centers are degenerate")
{
    CHECK_THROWS_AS(circle_circle_intersections({1, 1}, 1, {1, 1}, 2), DegenerateInput);
    CHECK_THROWS_AS(circle_circle_intersections({0, 0}, -1, {1, 1}, 2), InvalidArgument);
    CHECK_THROWS_AS(circle_circle_intersections({NAN, 0}, 1, {1, 1}, 2), InvalidArgument);
}

TEST_CASE("intersection residuals stay within solver_abs on random inputs")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-10, 10), rad(0.1, 6);
    int checked = 0;
    for (int k = 0; k < 5000; ++k) {
        const Point2 c1{coord(rng), coord(rng)}, c2{coord(rng), coord(rng)};
        const double r1 = rad(rng), r2 = rad(rng);
        const auto pts = circle_circle_intersections(c1, r1, c2, r2);
        const double d = distance(c1, c2);
        if (d < r1 + r2 - 1e-12 && d > std::abs(r1 - r2) + 1e-12)
            CHECK(pts.size() == 2);
        for (const Point2& p : pts) {
            CHECK(std::abs(distance(p, c1) - r1) <= 1e-12);
            CHECK(std::abs(distance(p, c2) - r2) <= 1e-12);
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("chord_step on a flat curve")
{
    auto flat = [](double) { return 0.0; };
    CHECK(chord_step(flat, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(chord_step(flat, 3.5, 1.0) == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("chord_step on the default base curve matches the scan oracle")
{
    auto f = [](double x) { return oracle::base_curve(x, 0.1); };
    const double x = chord_step(f, 0.0, 2.0);
    CHECK(std::abs(x - oracle::chord_by_scan(f, 0.0, 2.0)) <= 1e-10);
    // Frozen high-precision value of x(a_2).
    CHECK(std::abs(x - 1.9994104429163457) <= 1e-12);
}

TEST_CASE("chord_step rejects bad arguments")
{
    auto flat = [](double) { return 0.0; };
    CHECK_THROWS_AS(chord_step(flat, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(chord_step(flat, 0.0, -1.0), InvalidArgument);
    CHECK_THROWS_AS(chord_step(flat, INFINITY, 1.0), InvalidArgument);
}

TEST_CASE("chord_step is monotone in the chord length")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 1000; ++k) {
        const double A = 0.5 + 3 * u(rng), lam = 0.05 + 2 * u(rng), s = u(rng);
        auto f = [=](double x) { return A * std::exp(-lam * x) - s * x; };
        const double x0 = 5 * u(rng);
        const double c1 = 0.1 + 3 * u(rng);
        const double c2 = c1 + 1e-6 + u(rng);
        const double x1 = chord_step(f, x0, c1);
        const double x2 = chord_step(f, x0, c2);
        CHECK(x1 > x0);
        CHECK(x2 > x1);
        CHECK(std::abs(std::hypot(x1 - x0, f(x1) - f(x0)) - c1) <= 1e-12);
    }
}

TEST_CASE("reflections and rigid motions")
{
    CHECK(reflect_across_vertical({1, 2}, 3) == Point2{5, 2});
    CHECK(reflect_across_horizontal({1, 2}, 0) == Point2{1, -2});
    const Point2 q = apply_rigid({1, 0}, std::numbers::pi / 2, {0, 0});
    CHECK(q.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q.y == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reflections are involutions within one ulp")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(-100, 100);
    auto ulp = [](double a, double b) {
        const double m = std::max(std::abs(a), std::abs(b));
        return std::nextafter(m, INFINITY) - m;
    };
    for (int k = 0; k < 2000; ++k) {
        const Point2 p{coord(rng), coord(rng)};
        const double m = coord(rng);
        const Point2 v1 = reflect_across_vertical(p, m);
        const Point2 h1 = reflect_across_horizontal(p, m);
        const Point2 v = reflect_across_vertical(v1, m);
        const Point2 h = reflect_across_horizontal(h1, m);
        CHECK(std::abs(v.x - p.x) <= ulp(p.x, v1.x));
        CHECK(v.y == p.y);
        CHECK(std::abs(h.y - p.y) <= ulp(p.y, h1.y));
        CHECK(h.x == p.x);
    }
}

TEST_CASE("rigid motions preserve pairwise distances")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coord(-10, 10), ang(-7, 7);
    for (int k = 0; k < 1000; ++k) {
        const Point2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, t{coord(rng), coord(rng)};
        const double th = ang(rng);
        const double d0 = distance(a, b);
        const double d1 = distance(apply_rigid(a, th, t), apply_rigid(b, th, t));
        CHECK(std::abs(d1 - d0) <= 1e-12 * std::max(1.0, d0));
    }
}

TEST_CASE("tolerance validation")
{
    CHECK_NOTHROW(Tolerances{}.validate());
    CHECK_THROWS_AS((Tolerances{1e-13, 1e-12, 1e-9}.validate()), InvalidArgument);
    CHECK_THROWS_AS((Tolerances{1e-9, 0.0, 1e-9}.validate()), InvalidArgument);
    CHECK_THROWS_AS((Tolerances{1e-9, 1e-12, -1.0}.validate()), InvalidArgument);
}

}
