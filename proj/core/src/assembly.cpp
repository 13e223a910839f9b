#include "discjam/construction.hpp"

#include "discjam/errors.hpp"
#include "discjam/verifier.hpp"
#include "internal.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numbers>

namespace discjam {

namespace {

const double sqrt3 = std::numbers::sqrt3;

constexpr int min_square_N = 3;

Point2 swap_xy(Point2 p) { return {p.y, p.x}; }

std::vector<Point2> junction_points()
{
    return {{0.0, 0.0},
            {0.0, 2.0},
            {2.0, 0.0},
            {2.0 + sqrt3, 1.0},
            {1.0, 2.0 + sqrt3},
            {1.0 + sqrt3, 1.0 + sqrt3}};
}

Point2 pick(const std::vector<Point2>& pts, double (*key)(Point2), const char* what)
{
    if (pts.empty())
        throw AssemblyFailure(std::string("no tangent position for the ") + what);
    Point2 best = pts.front();
    for (const Point2& p : pts)
        if (key(p) > key(best))
            best = p;
    return best;
}

// The four images of p under the square's mirror lines x = m and y = m.
std::vector<Point2> quad_images(Point2 p, double m)
{
    const Point2 rx = reflect_across_vertical(p, m);
    return {p, rx, reflect_across_horizontal(p, m), reflect_across_horizontal(rx, m)};
}

// Junction frame (walls x = -1, y = -1, x = 2m + 1, y = 2m + 1) to [0,1]^2.
Configuration to_unit_square(const std::vector<Point2>& pts, double m)
{
    const double s = 1.0 / (2.0 * m + 2.0);
    Configuration cfg;
    cfg.radius = s;
    cfg.box = Box::unit_square();
    cfg.centers.reserve(pts.size());
    for (const Point2& p : pts)
        cfg.centers.push_back({(p.x + 1.0) * s, (p.y + 1.0) * s});
    return cfg;
}

void certify(const Configuration& cfg, const Tolerances& tol, Layout layout, int N)
{
    const std::string where = std::string(layout_name(layout)) + " layout at N=" + std::to_string(N);
    const OverlapAudit audit = overlap_audit(cfg, tol);
    if (!audit.ok()) {
        std::string msg = where + ": piece collision, " + std::to_string(audit.violations.size()) +
                          " overlapping pair(s), " + std::to_string(audit.wall_violations.size()) +
                          " wall crossing(s)";
        char buf[120];
        for (std::size_t k = 0; k < std::min<std::size_t>(audit.violations.size(), 8); ++k) {
            const PairViolation& v = audit.violations[k];
            std::snprintf(buf, sizeof buf, "\n  discs %zu and %zu penetrate by %.6g", v.i, v.j, v.penetration);
            msg += buf;
        }
        throw AssemblyFailure(msg);
    }
    const JammingReport rep = verify_stable(cfg, tol);
    if (rep.movable_count > 0)
        throw AssemblyFailure(where + ": " + std::to_string(rep.movable_count) + " movable disc(s)\n" +
                              describe_movable(rep));
}

std::vector<Point2> wall_bridges_layout(const TuneResult& tuned, const Tolerances& tol, double& m_out)
{
    const std::vector<Point2> J = junction_points();
    const Point2 J3 = J[3];
    const Point2 J5 = J[5];

    // Slide the bottom bridge along the wall until its cap disc, the c-row disc
    // just before c_1, touches J3.
    const double t = detail::bisect([&](double t) { return distance({t - 1.0, 0.0}, J3) - 2.0; },
                                    J3.x + 1.0, J3.x + 3.0);
    const Point2 cap_c = {t - 1.0, 0.0};
    const Point2 cap_y = pick(circle_circle_intersections(J3, 2.0, J5, 2.0, tol.solver_abs),
                              [](Point2 p) { return p.x; }, "bottom cap disc");
    const Point2 cap_x = pick(circle_circle_intersections(cap_y, 2.0, swap_xy(cap_y), 2.0, tol.solver_abs),
                              [](Point2 p) { return p.x + p.y; }, "diagonal cap disc");

    std::vector<Point2> corner = J;
    corner.push_back(cap_c);
    corner.push_back(cap_y);
    corner.push_back(cap_x);
    corner.push_back(swap_xy(cap_c));
    corner.push_back(swap_xy(cap_y));

    const double m = t + tuned.chain.mirror_x;
    m_out = m;
    std::vector<Point2> bottom;
    for (const Point2& p : detail::wall_bridge_frame_points(tuned.chain, -1.0, tol))
        bottom.push_back(p + Point2{t, 0.0});

    detail::PointSet set(2.0 * tol.solver_abs);
    for (const Point2& p : corner)
        for (const Point2& q : quad_images(p, m))
            set.add(q);
    for (const Point2& p : bottom) {
        set.add(p);
        set.add(reflect_across_horizontal(p, m));
    }
    for (const Point2& p : bottom) {
        set.add(swap_xy(p));
        set.add(reflect_across_vertical(swap_xy(p), m));
    }
    return set.take();
}

// Full symmetric bridges lifted so their lowest discs rest on the walls.
std::vector<Point2> interior_bridges_layout(const TuneResult& tuned, const Tolerances& tol, double& m_out)
{
    const std::vector<Point2> J = junction_points();
    const Point2 J3 = J[3];
    const double lift = 2.0 + sqrt3;
    const double t = detail::bisect([&](double t) { return distance({t, 0.0}, J3) - 2.0; }, J3.x, J3.x + 2.0);
    const double m = t + tuned.chain.mirror_x;
    m_out = m;

    const Configuration full = complete_symmetric_bridge(tuned.chain, tol);
    std::vector<Point2> bottom;
    for (const Point2& p : full.centers)
        bottom.push_back(p + Point2{t, lift});

    // Bridges meeting at a corner may share their outermost discs.
    detail::PointSet set(2.0 * tol.solver_abs);
    for (const Point2& p : J)
        for (const Point2& q : quad_images(p, m))
            set.add(q, true);
    for (const Point2& p : bottom) {
        set.add(p, true);
        set.add(reflect_across_horizontal(p, m), true);
        set.add(swap_xy(p), true);
        set.add(reflect_across_vertical(swap_xy(p), m), true);
    }
    return set.take();
}

} // namespace

Configuration junction_piece()
{
    Configuration cfg;
    cfg.radius = 1.0;
    cfg.box = Box{-1.0, -1.0, Box::inf, Box::inf};
    cfg.centers = junction_points();
    cfg.meta.construction = "junction";
    return cfg;
}

const char* layout_name(Layout layout)
{
    return layout == Layout::wall_bridges ? "wall-bridges" : "interior-bridges";
}

Layout parse_layout(const std::string& name)
{
    if (name == "wall-bridges")
        return Layout::wall_bridges;
    if (name == "interior-bridges")
        return Layout::interior_bridges;
    throw InvalidArgument("unknown layout '" + name + "' (expected wall-bridges or interior-bridges)");
}

std::pair<Configuration, AssemblyMetrics> assemble_square(int N, Layout layout, const AssemblyOptions& opts)
{
    if (N < min_square_N)
        throw InvalidArgument("assemble_square: N must be at least " + std::to_string(min_square_N));
    opts.tol.validate();
    const CurveFamily family = CurveFamily::exponential(opts.lambda);
    const TuneResult tuned = tune_epsilon(family, N, opts.eps_hi, opts.tol);

    double m = 0.0;
    const std::vector<Point2> pts = layout == Layout::wall_bridges
                                        ? wall_bridges_layout(tuned, opts.tol, m)
                                        : interior_bridges_layout(tuned, opts.tol, m);
    Configuration cfg = to_unit_square(pts, m);
    cfg.meta.construction = std::string("square/") + layout_name(layout);
    cfg.meta.N = N;
    cfg.meta.epsilon = tuned.epsilon;
    certify(cfg, opts.tol, layout, N);

    AssemblyMetrics metrics;
    metrics.n = cfg.size();
    metrics.r = cfg.radius;
    metrics.n_times_r = static_cast<double>(metrics.n) * metrics.r;
    metrics.N = N;
    metrics.epsilon_used = tuned.epsilon;
    metrics.scale = cfg.radius;
    metrics.layout = layout_name(layout);
    return {std::move(cfg), metrics};
}

Configuration five_disc_config()
{
    const double r = (std::numbers::sqrt2 - 1.0) / 2.0;
    Configuration cfg;
    cfg.radius = r;
    cfg.box = Box::unit_square();
    cfg.centers = {{0.5, 0.5}, {r, r}, {1.0 - r, r}, {r, 1.0 - r}, {1.0 - r, 1.0 - r}};
    cfg.meta.construction = "five-disc";
    return cfg;
}

Configuration tiling_3_12_12(int window_half_width)
{
    if (window_half_width < 2)
        throw InvalidArgument("tiling_3_12_12: window half-width must be at least 2");
    const double pi = std::numbers::pi;
    const double half = 2.0 * window_half_width;
    // Dodecagons of edge 2 sit on a triangular lattice of spacing 2(2 + sqrt3).
    const double spacing = 2.0 * (2.0 + sqrt3);
    const Point2 A1{spacing, 0.0};
    const Point2 A2{0.5 * spacing, 0.5 * sqrt3 * spacing};
    const double R = 1.0 / std::sin(pi / 12.0);
    const Point2 origin = Point2{0.0, 0.0} - R * unit(pi / 12.0);

    const int reach = static_cast<int>(std::ceil((half + R) / (0.5 * spacing))) + 2;
    const double snap = 1e-6;
    std::map<std::pair<long long, long long>, Point2> seen;
    auto key_of = [snap](Point2 p) {
        return std::pair<long long, long long>{std::llround(p.x / snap), std::llround(p.y / snap)};
    };
    for (int i = -reach; i <= reach; ++i) {
        for (int j = -reach; j <= reach; ++j) {
            const Point2 C = origin + static_cast<double>(i) * A1 + static_cast<double>(j) * A2;
            if (std::abs(C.x) > half + R + 1.0 || std::abs(C.y) > half + R + 1.0)
                continue;
            for (int k = 0; k < 12; ++k) {
                const Point2 v = C + R * unit(pi / 12.0 + k * pi / 6.0);
                if (std::abs(v.x) > half + 1e-9 || std::abs(v.y) > half + 1e-9)
                    continue;
                const auto key = key_of(v);
                bool dup = false;
                for (long long dx = -1; dx <= 1 && !dup; ++dx)
                    for (long long dy = -1; dy <= 1 && !dup; ++dy)
                        dup = seen.count({key.first + dx, key.second + dy}) > 0;
                if (!dup)
                    seen.emplace(key, v);
            }
        }
    }

    Configuration cfg;
    cfg.radius = 1.0;
    cfg.box = Box::plane();
    cfg.meta.construction = "tiling-3.12.12";
    cfg.centers.reserve(seen.size());
    for (const auto& [key, p] : seen)
        cfg.centers.push_back(p);
    std::sort(cfg.centers.begin(), cfg.centers.end(),
              [](Point2 a, Point2 b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    return cfg;
}

double density(const Configuration& config, const Rect& region)
{
    if (!(region.area() > 0.0) || !std::isfinite(region.area()))
        throw InvalidArgument("density: region must have positive finite area");
    const auto inside = std::count_if(config.centers.begin(), config.centers.end(),
                                      [&](Point2 p) { return region.contains(p); });
    return static_cast<double>(inside) * std::numbers::pi * config.radius * config.radius / region.area();
}

double tiling_density_limit() { return std::numbers::pi * (7.0 * sqrt3 - 12.0); }

} // namespace discjam
