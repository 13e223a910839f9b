#include "discjam/construction.hpp"
#include "discjam/errors.hpp"
#include "discjam/metropolis.hpp"
#include "discjam/verifier.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace discjam;

namespace {

Configuration lone_disc()
{
    Configuration c;
    c.radius = 0.1;
    c.box = Box::unit_square();
    c.centers = {{0.5, 0.5}};
    return c;
}

ChainParams params(std::uint64_t steps, double step, std::uint64_t seed = 1)
{
    ChainParams p;
    p.steps = steps;
    p.step_radius = step;
    p.seed = seed;
    p.record_interval = std::max<std::uint64_t>(1, steps / 10);
    return p;
}

} // namespace

TEST_SUITE("metropolis") {

TEST_CASE("rng conversions are pinned to mt19937_64")
{
    ChainRng a(42);
    std::mt19937_64 ref(42);
    for (int k = 0; k < 100; ++k)
        CHECK(a.uniform01() == static_cast<double>(ref() >> 11) * 0x1.0p-53);
    ChainRng b(7);
    for (int k = 0; k < 10000; ++k) {
        const auto v = b.below(13);
        CHECK(v < 13);
    }
    CHECK_THROWS_AS(b.below(0), InvalidArgument);
}

TEST_CASE("a lone disc accepts every proposal")
{
    Configuration c = lone_disc();
    ChainRng rng(1);
    const ChainParams p = params(1, 0.05);
    for (int k = 0; k < 200; ++k)
        CHECK(metropolis_step(c, p, rng).accepted);
    Configuration free = lone_disc();
    free.box = Box::plane();
    const ChainResult res = run_chain(free, params(20000, 0.05));
    CHECK(res.stats.accepted == 20000);
    CHECK(res.stats.acceptance_rate == 1.0);
    CHECK(res.stats.trace.size() == 10);
}

TEST_CASE("proposals are uniform in the step disc")
{
    ChainRng rng(3);
    Configuration c;
    c.radius = 1e-6;
    c.box = Box::plane();
    c.centers = {{0.0, 0.0}};
    const ChainParams p = params(1, 1.0);
    int inner = 0;
    const int total = 20000;
    for (int k = 0; k < total; ++k) {
        Configuration fresh = c;
        const StepOutcome o = metropolis_step(fresh, p, rng);
        CHECK(norm(o.proposal) <= 1.0);
        if (norm(o.proposal) < 0.5)
            ++inner;
    }
    // Area fraction 1/4 inside half the radius.
    CHECK(static_cast<double>(inner) / total == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("steps are deterministic under a fixed seed")
{
    const Configuration five = shrink_radius(five_disc_config(), 0.95);
    std::mt19937_64 rng(99);
    for (int k = 0; k < 1000; ++k) {
        const std::uint64_t seed = rng();
        Configuration a = five, b = five;
        ChainRng ra(seed), rb(seed);
        const ChainParams p = params(1, five.radius);
        const StepOutcome oa = metropolis_step(a, p, ra);
        const StepOutcome ob = metropolis_step(b, p, rb);
        CHECK(oa.accepted == ob.accepted);
        CHECK(oa.index == ob.index);
        CHECK(a.centers == b.centers);
    }
}

TEST_CASE("rejected proposals leave the configuration bit-identical")
{
    const Configuration five = five_disc_config();
    Configuration c = five;
    ChainRng rng(5);
    const ChainParams p = params(1, five.radius);
    for (int k = 0; k < 1000; ++k) {
        const StepOutcome o = metropolis_step(c, p, rng);
        CHECK(!o.accepted);
        CHECK(c.centers == five.centers);
    }
}

TEST_CASE("five-disc configuration is frozen at step r")
{
    const Configuration five = five_disc_config();
    const ChainResult res = run_chain(five, params(100000, five.radius, 11));
    CHECK(res.stats.accepted == 0);
    CHECK(res.stats.max_center_displacement == 0.0);
    CHECK(res.final.centers == five.centers);
}

TEST_CASE("frozen_step_bound")
{
    const Configuration five = five_disc_config();
    const double bound = frozen_step_bound(five);
    CHECK(bound / five.radius == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-9));
    CHECK(frozen_step_bound(junction_piece()) == 0.0);

    // Below the bound nothing moves, for the assembled square as well.
    const auto [sq, m] = assemble_square(4, Layout::wall_bridges);
    const double sq_bound = frozen_step_bound(sq);
    CHECK(sq_bound > 0.0);
    CHECK(sq_bound < sq.radius);
    const ChainResult below = run_chain(sq, params(200000, 0.9 * sq_bound, 7));
    CHECK(below.stats.accepted == 0);
    const ChainResult above = run_chain(sq, params(20000, sq.radius, 7));
    CHECK(above.stats.accepted > 0);
}

TEST_CASE("chain validity is preserved")
{
    const Configuration loose = shrink_radius(five_disc_config(), 0.9);
    const ChainResult res = run_chain(loose, params(50000, loose.radius, 3));
    CHECK(res.stats.accepted > 0);
    CHECK(overlap_audit(res.final).ok());
    CHECK(res.stats.max_center_displacement > 0.0);
    std::uint64_t acc = 0;
    for (const IntervalRecord& r : res.stats.trace)
        acc += r.accepted;
    CHECK(acc == res.stats.accepted);
}

TEST_CASE("run_chain determinism over many seeds")
{
    const Configuration loose = shrink_radius(five_disc_config(), 0.97);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const ChainResult a = run_chain(loose, params(50, loose.radius, seed));
        const ChainResult b = run_chain(loose, params(50, loose.radius, seed));
        CHECK(a.final.centers == b.final.centers);
        CHECK(a.stats.accepted == b.stats.accepted);
    }
}

TEST_CASE("shrink_radius")
{
    const Configuration five = five_disc_config();
    const Configuration same = shrink_radius(five, 1.0);
    CHECK(same.radius == five.radius);
    CHECK(same.centers == five.centers);
    const Configuration small = shrink_radius(five, 0.99);
    CHECK(overlap_audit(small).min_gap == doctest::Approx(2.0 * five.radius * 0.01 + 0.0).epsilon(1e-9));
    CHECK(overlap_audit(small).ok());
    CHECK_THROWS_AS(shrink_radius(five, 0.0), InvalidArgument);
    CHECK_THROWS_AS(shrink_radius(five, 1.01), InvalidArgument);
}

TEST_CASE("escape experiment")
{
    const Configuration five = five_disc_config();
    const auto rows = escape_experiment(five, {1.0, 0.99, 0.95}, params(100000, five.radius, 1));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].factor == 1.0);
    CHECK(rows[0].stats.accepted == 0);
    CHECK(rows[1].stats.acceptance_rate > 0.0);
    CHECK(rows[2].stats.acceptance_rate > rows[1].stats.acceptance_rate);

    const auto again = escape_experiment(five, {0.95, 0.99}, params(100000, five.radius, 1));
    CHECK(again[0].stats.accepted == rows[2].stats.accepted);
    CHECK(again[1].stats.accepted == rows[1].stats.accepted);
    CHECK_THROWS_AS(escape_experiment(five, {1.5}, params(10, five.radius)), InvalidArgument);
}

TEST_CASE("invalid chain inputs")
{
    Configuration bad = five_disc_config();
    bad.centers[1] = bad.centers[0];
    CHECK_THROWS_AS(run_chain(bad, params(10, 0.1)), OverlapError);
    CHECK_THROWS_AS(run_chain(five_disc_config(), params(10, 0.0)), InvalidArgument);
    ChainParams zero = params(10, 0.1);
    zero.steps = 0;
    CHECK_THROWS_AS(run_chain(five_disc_config(), zero), InvalidArgument);
    CHECK_THROWS_AS(run_chain(Configuration{}, params(10, 0.1)), InvalidArgument);
}

}
