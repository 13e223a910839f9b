#include "discjam/construction.hpp"
#include "discjam/errors.hpp"
#include "discjam/verifier.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace discjam;
using oracle::deg;

namespace {

double angle_deg(Point2 v)
{
    double a = std::atan2(v.y, v.x) * 180.0 / std::numbers::pi;
    return a < 0 ? a + 360.0 : a;
}

Configuration pair_at(double d)
{
    Configuration c;
    c.box = Box::plane();
    c.centers = {{0, 0}, {d, 0}};
    return c;
}

} // namespace

TEST_SUITE("verifier") {

TEST_CASE("two touching discs form one mutual contact")
{
    const ContactGraph g = contact_graph(pair_at(2.0));
    CHECK(g.edge_count() == 1);
    REQUIRE(g.contacts[0].size() == 1);
    CHECK(g.contacts[0][0].normal == Point2{-1, 0});
    CHECK(g.contacts[1][0].normal == Point2{1, 0});
    CHECK(contact_graph(pair_at(2.1)).edge_count() == 0);
}

TEST_CASE("overlapping input is refused with the pair and depth")
{
    try {
        contact_graph(pair_at(1.9));
        FAIL("expected OverlapError");
    } catch (const OverlapError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("0 and 1") != std::string::npos);
        CHECK(msg.find("0.1") != std::string::npos);
    }
    CHECK_THROWS_AS(verify_stable(pair_at(1.5)), OverlapError);
}

TEST_CASE("junction contact graph")
{
    const ContactGraph g = contact_graph(junction_piece());
    CHECK(g.edge_count() == 6);
    CHECK(g.wall_contact_count() == 4);
    const std::size_t discs_on_walls = std::count_if(g.contacts.begin(), g.contacts.end(), [](const auto& list) {
        return std::any_of(list.begin(), list.end(), [](const Contact& c) { return c.wall.has_value(); });
    });
    CHECK(discs_on_walls == 3);

    std::vector<double> corner;
    for (const Contact& c : g.contacts[0])
        corner.push_back(angle_deg(c.normal));
    std::sort(corner.begin(), corner.end());
    REQUIRE(corner.size() == 4);
    CHECK(corner[0] == doctest::Approx(0.0));
    CHECK(corner[1] == doctest::Approx(90.0));
    CHECK(corner[2] == doctest::Approx(180.0));
    CHECK(corner[3] == doctest::Approx(270.0));
    CHECK(is_locally_jammed(g.normals(0)).verdict == Verdict::jammed);
}

TEST_CASE("jamming of simple normal sets")
{
    CHECK(is_locally_jammed({deg(0), deg(120), deg(240)}).verdict == Verdict::jammed);
    CHECK(is_locally_jammed({deg(90), deg(240), deg(300)}).verdict == Verdict::jammed);
    CHECK(is_locally_jammed({}).verdict == Verdict::rattler);

    const JamResult two = is_locally_jammed({deg(0), deg(90)});
    CHECK(two.verdict == Verdict::movable);
    REQUIRE(two.witness.has_value());
    CHECK(angle_deg(*two.witness) == doctest::Approx(45.0));
    REQUIRE(two.cone.has_value());
    CHECK(two.cone->lo * 180 / std::numbers::pi == doctest::Approx(0.0));
    CHECK(two.cone->width * 180 / std::numbers::pi == doctest::Approx(90.0));

    const JamResult opposite = is_locally_jammed({deg(0), deg(180)});
    CHECK(opposite.verdict == Verdict::movable);
    CHECK(angle_deg(*opposite.witness) == doctest::Approx(90.0));
}

TEST_CASE("junction diagonal disc escape cone")
{
    const JamResult r = is_locally_jammed({deg(120), deg(330)});
    CHECK(r.verdict == Verdict::movable);
    REQUIRE(r.cone.has_value());
    CHECK(r.cone->lo * 180 / std::numbers::pi == doctest::Approx(30.0));
    CHECK(r.cone->hi() * 180 / std::numbers::pi == doctest::Approx(60.0));
    const ContactGraph g = contact_graph(junction_piece());
    const JamResult j5 = is_locally_jammed(g.normals(5));
    CHECK(j5.cone->lo * 180 / std::numbers::pi == doctest::Approx(30.0));
    CHECK(j5.cone->width * 180 / std::numbers::pi == doctest::Approx(30.0));
}

TEST_CASE("direction oracle")
{
    CHECK(direction_oracle({deg(0), deg(120), deg(240)}, 720).verdict == Verdict::jammed);
    CHECK(direction_oracle({deg(0), deg(90)}, 720).verdict == Verdict::movable);
    CHECK_THROWS_AS(direction_oracle({deg(0)}, 359), InvalidArgument);
}

TEST_CASE("oracle equivalence on random normal sets")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(0.0, 360.0);
    std::uniform_int_distribution<int> count(0, 7);
    int compared = 0;
    for (int k = 0; k < 3000; ++k) {
        std::vector<Point2> normals;
        const int n = count(rng);
        for (int i = 0; i < n; ++i)
            normals.push_back(deg(ang(rng)));
        const JamResult fast = is_locally_jammed(normals);
        if (std::abs(fast.max_gap - std::numbers::pi) < std::numbers::pi / 180.0)
            continue;
        ++compared;
        const JamResult slow = direction_oracle(normals, 720);
        CHECK((fast.verdict == Verdict::jammed) == (slow.verdict == Verdict::jammed));
        if (fast.witness)
            for (const Point2& nrm : normals)
                CHECK(dot(*fast.witness, nrm) >= -1e-9);
    }
    CHECK(compared >= 1000);
}

TEST_CASE("few contacts never jam and extra contacts never unjam")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ang(0.0, 360.0);
    for (int k = 0; k < 1000; ++k) {
        std::vector<Point2> normals{deg(ang(rng)), deg(ang(rng))};
        CHECK(is_locally_jammed({normals[0]}).verdict != Verdict::jammed);
        CHECK(is_locally_jammed(normals).verdict != Verdict::jammed);
        for (int i = 0; i < 5; ++i)
            normals.push_back(deg(ang(rng)));
        if (is_locally_jammed(normals).verdict == Verdict::jammed) {
            normals.push_back(deg(ang(rng)));
            CHECK(is_locally_jammed(normals).verdict == Verdict::jammed);
        }
    }
}

TEST_CASE("five-disc verdicts")
{
    const Configuration cfg = five_disc_config();
    const ContactGraph g = contact_graph(cfg);
    std::vector<double> center;
    for (const Contact& c : g.contacts[0])
        center.push_back(angle_deg(c.normal));
    std::sort(center.begin(), center.end());
    REQUIRE(center.size() == 4);
    CHECK(center[0] == doctest::Approx(45.0));
    CHECK(center[1] == doctest::Approx(135.0));
    CHECK(center[2] == doctest::Approx(225.0));
    CHECK(center[3] == doctest::Approx(315.0));
    CHECK(verify_stable(cfg).movable_count == 0);

    Configuration small = cfg;
    small.radius *= 0.99;
    const JammingReport rep = verify_stable(small);
    CHECK(rep.movable_count == 5);
    CHECK(rep.rattler_count == 5);
    CHECK(!rep.stable());
}

TEST_CASE("overlap audit")
{
    const OverlapAudit a = overlap_audit(pair_at(1.9));
    CHECK(a.max_penetration == doctest::Approx(0.1));
    REQUIRE(a.violations.size() == 1);
    CHECK(a.violations[0].penetration == doctest::Approx(0.1));
    const OverlapAudit empty = overlap_audit(Configuration{});
    CHECK(empty.violations.empty());
    CHECK(std::isinf(empty.min_gap));

    Configuration out = pair_at(3.0);
    out.box = Box{0.0, -5.0, 10.0, 5.0};
    const OverlapAudit wall = overlap_audit(out);
    REQUIRE(wall.wall_violations.size() == 1);
    CHECK(wall.wall_violations[0].wall == Wall::left);
    CHECK_THROWS_AS(contact_graph(out), OverlapError);
}

TEST_CASE("verdicts are invariant under scaling and rigid motion")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const TuneResult t = tune_epsilon(CurveFamily::exponential(0.1), 4, 8.0);
    const Configuration bridge = complete_symmetric_bridge(t.chain);
    const JammingReport base = verify_stable(bridge);
    for (int k = 0; k < 1000; ++k) {
        const double s = std::exp(8.0 * u(rng) - 4.0);
        const Configuration c = moved(scaled(bridge, s), 2 * std::numbers::pi * u(rng),
                                      {100 * u(rng) - 50, 100 * u(rng) - 50});
        const JammingReport rep = verify_stable(c);
        REQUIRE(rep.discs.size() == base.discs.size());
        bool same = rep.contact_edges == base.contact_edges;
        for (std::size_t i = 0; i < rep.discs.size(); ++i)
            same = same && rep.discs[i].verdict == base.discs[i].verdict;
        CHECK(same);
    }
}

TEST_CASE("describe_movable lists witnesses")
{
    const std::string text = describe_movable(verify_stable(pair_at(2.0)));
    CHECK(text.find("disc 0 movable") != std::string::npos);
    CHECK(text.find("disc 1 movable") != std::string::npos);
}

}
