#include "discjam/verifier.hpp"

#include "discjam/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>

namespace discjam {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a)
{
    a = std::fmod(a, two_pi);
    if (a < 0.0)
        a += two_pi;
    return a;
}

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

// Signed clearance between disc i and each finite wall; negative means outside.
struct WallGap {
    Wall wall;
    double gap;
    Point2 normal;
};

std::vector<WallGap> wall_gaps(Point2 p, double r, const Box& box)
{
    std::vector<WallGap> out;
    if (std::isfinite(box.xmin))
        out.push_back({Wall::left, p.x - r - box.xmin, {1.0, 0.0}});
    if (std::isfinite(box.ymin))
        out.push_back({Wall::bottom, p.y - r - box.ymin, {0.0, 1.0}});
    if (std::isfinite(box.xmax))
        out.push_back({Wall::right, box.xmax - p.x - r, {-1.0, 0.0}});
    if (std::isfinite(box.ymax))
        out.push_back({Wall::top, box.ymax - p.y - r, {0.0, -1.0}});
    return out;
}

} // namespace

const char* wall_name(Wall w)
{
    switch (w) {
    case Wall::left: return "left";
    case Wall::bottom: return "bottom";
    case Wall::right: return "right";
    case Wall::top: return "top";
    }
    return "?";
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::jammed: return "jammed";
    case Verdict::movable: return "movable";
    case Verdict::rattler: return "rattler";
    }
    return "?";
}

std::size_t ContactGraph::edge_count() const
{
    std::size_t n = 0;
    for (const auto& list : contacts)
        for (const Contact& c : list)
            if (c.other)
                ++n;
    return n / 2;
}

std::size_t ContactGraph::wall_contact_count() const
{
    std::size_t n = 0;
    for (const auto& list : contacts)
        for (const Contact& c : list)
            if (c.wall)
                ++n;
    return n;
}

std::vector<Point2> ContactGraph::normals(std::size_t i) const
{
    std::vector<Point2> out;
    out.reserve(contacts.at(i).size());
    for (const Contact& c : contacts[i])
        out.push_back(c.normal);
    return out;
}

OverlapAudit overlap_audit(const Configuration& config, const Tolerances& tol)
{
    const double r = config.radius;
    const auto& P = config.centers;
    OverlapAudit audit;
    audit.min_gap = std::numeric_limits<double>::infinity();
    const double floor_dist = 2.0 * r * (1.0 - tol.tangency_rel);
    for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = i + 1; j < P.size(); ++j) {
            const double d = distance(P[i], P[j]);
            audit.min_gap = std::min(audit.min_gap, d - 2.0 * r);
            audit.max_penetration = std::max(audit.max_penetration, 2.0 * r - d);
            if (d < floor_dist)
                audit.violations.push_back({i, j, 2.0 * r - d});
        }
        for (const WallGap& w : wall_gaps(P[i], r, config.box)) {
            if (w.gap < -r * tol.tangency_rel)
                audit.wall_violations.push_back({i, w.wall, -w.gap});
        }
    }
    return audit;
}

namespace detail {

ContactGraph collect_contacts(const Configuration& config, const Tolerances& tol)
{
    const double r = config.radius;
    const auto& P = config.centers;
    ContactGraph g;
    g.contacts.resize(P.size());
    const double band = 2.0 * r * tol.tangency_rel;
    for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = i + 1; j < P.size(); ++j) {
            const double d = distance(P[i], P[j]);
            if (std::abs(d - 2.0 * r) > band || d == 0.0)
                continue;
            const Point2 u = (1.0 / d) * (P[i] - P[j]);
            g.contacts[i].push_back({j, std::nullopt, u});
            g.contacts[j].push_back({i, std::nullopt, Point2{-u.x, -u.y}});
        }
    }
    for (std::size_t i = 0; i < P.size(); ++i)
        for (const WallGap& w : wall_gaps(P[i], r, config.box))
            if (std::abs(w.gap) <= r * tol.tangency_rel)
                g.contacts[i].push_back({std::nullopt, w.wall, w.normal});
    return g;
}

} // namespace detail

ContactGraph contact_graph(const Configuration& config, const Tolerances& tol)
{
    tol.validate();
    validate_shape(config);
    const OverlapAudit audit = overlap_audit(config, tol);
    if (!audit.violations.empty()) {
        const auto worst = std::max_element(
            audit.violations.begin(), audit.violations.end(),
            [](const PairViolation& a, const PairViolation& b) { return a.penetration < b.penetration; });
        char buf[160];
        std::snprintf(buf, sizeof buf, "overlapping discs %zu and %zu (penetration %.6g, %zu pair(s) total)",
                      worst->i, worst->j, worst->penetration, audit.violations.size());
        throw OverlapError(buf);
    }
    if (!audit.wall_violations.empty()) {
        const WallViolation& w = audit.wall_violations.front();
        char buf[160];
        std::snprintf(buf, sizeof buf, "disc %zu crosses the %s wall (penetration %.6g)", w.i,
                      wall_name(w.wall), w.penetration);
        throw OverlapError(buf);
    }
    return detail::collect_contacts(config, tol);
}

JamResult is_locally_jammed(const std::vector<Point2>& normals, double angle_slack)
{
    JamResult res;
    if (normals.empty()) {
        res.verdict = Verdict::rattler;
        res.witness = Point2{1.0, 0.0};
        res.cone = EscapeCone{0.0, two_pi};
        res.max_gap = two_pi;
        return res;
    }

    std::vector<double> ang;
    ang.reserve(normals.size());
    for (const Point2& n : normals)
        ang.push_back(wrap_angle(std::atan2(n.y, n.x)));
    std::sort(ang.begin(), ang.end());

    // Gap k runs from ang[k] to the next angle counter-clockwise.
    double best = -1.0;
    double start = 0.0;
    for (std::size_t k = 0; k < ang.size(); ++k) {
        const double next = k + 1 < ang.size() ? ang[k + 1] : ang[0] + two_pi;
        const double gap = next - ang[k];
        if (gap >= best) {
            best = gap;
            start = ang[k];
        }
    }
    res.max_gap = best;

    if (normals.size() >= 3 && best < std::numbers::pi - angle_slack) {
        res.verdict = Verdict::jammed;
        return res;
    }
    res.verdict = Verdict::movable;
    const double center = start + 0.5 * best + std::numbers::pi;
    res.witness = unit(center);
    res.cone = EscapeCone{wrap_angle(start + 1.5 * std::numbers::pi), std::max(best - std::numbers::pi, 0.0)};
    return res;
}

JamResult direction_oracle(const std::vector<Point2>& normals, int K)
{
    if (K < 360)
        throw InvalidArgument("direction_oracle: K must be at least 360");
    JamResult res;
    if (normals.empty()) {
        res.verdict = Verdict::rattler;
        res.witness = Point2{1.0, 0.0};
        return res;
    }
    for (int k = 0; k < K; ++k) {
        const Point2 d = unit(two_pi * k / K);
        const bool free = std::all_of(normals.begin(), normals.end(),
                                      [&](const Point2& n) { return dot(d, n) >= -1e-12; });
        if (free) {
            res.verdict = Verdict::movable;
            res.witness = d;
            return res;
        }
    }
    res.verdict = Verdict::jammed;
    return res;
}

std::vector<std::size_t> JammingReport::movable_indices() const
{
    std::vector<std::size_t> out;
    for (const DiscVerdict& d : discs)
        if (d.verdict != Verdict::jammed)
            out.push_back(d.index);
    return out;
}

JammingReport verify_stable(const Configuration& config, const Tolerances& tol)
{
    const ContactGraph g = contact_graph(config, tol);
    JammingReport rep;
    rep.audit = overlap_audit(config, tol);
    rep.contact_edges = g.edge_count();
    rep.wall_contacts = g.wall_contact_count();
    rep.discs.reserve(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) {
        const JamResult j = is_locally_jammed(g.normals(i), tol.angle_slack);
        DiscVerdict d;
        d.index = i;
        d.verdict = j.verdict;
        d.contact_count = g.contacts[i].size();
        d.witness = j.witness;
        d.cone = j.cone;
        if (j.verdict != Verdict::jammed)
            ++rep.movable_count;
        if (j.verdict == Verdict::rattler)
            ++rep.rattler_count;
        rep.discs.push_back(d);
    }
    return rep;
}

std::string describe_movable(const JammingReport& report)
{
    std::string out;
    char buf[200];
    for (const DiscVerdict& d : report.discs) {
        if (d.verdict == Verdict::jammed)
            continue;
        const double w = d.witness ? degrees(wrap_angle(std::atan2(d.witness->y, d.witness->x))) : 0.0;
        const double lo = d.cone ? degrees(d.cone->lo) : 0.0;
        const double hi = d.cone ? degrees(d.cone->hi()) : 0.0;
        std::snprintf(buf, sizeof buf, "disc %zu %s contacts=%zu witness=%.3f deg cone=[%.3f, %.3f] deg\n",
                      d.index, verdict_name(d.verdict), d.contact_count, w, lo, hi);
        out += buf;
    }
    return out;
}

} // namespace discjam
