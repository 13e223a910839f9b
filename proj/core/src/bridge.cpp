#include "discjam/construction.hpp"

#include "discjam/errors.hpp"
#include "internal.hpp"

#include <cstdio>
#include <numbers>

namespace discjam {

namespace {

const double sqrt3 = std::numbers::sqrt3;

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// The rows that make up one half of a bridge: a_1..a_N, b_1..b_N, c_1..c_{N-1}.
std::vector<Point2> half_rows(const BridgeChain& chain)
{
    const std::size_t N = static_cast<std::size_t>(chain.N);
    std::vector<Point2> out(chain.a.begin(), chain.a.begin() + N);
    out.insert(out.end(), chain.b.begin(), chain.b.begin() + N);
    out.insert(out.end(), chain.c.begin(), chain.c.begin() + (N - 1));
    return out;
}

void require_closed(const BridgeChain& chain, const Tolerances& tol)
{
    if (chain.N < 2 || static_cast<int>(chain.b.size()) < chain.N ||
        static_cast<int>(chain.c.size()) < chain.N - 1)
        throw ConstructionFailure("bridge chain is incomplete");
    const double g = chain.b[chain.N - 1].x - chain.a[chain.N - 1].x - 1.0;
    if (std::abs(g) > tol.tangency_rel)
        throw ConstructionFailure("bridge chain is not closed (residual " + format_double(g) + ")");
}

// Wall bridge in the chain frame shifted up by wall_y + 1; see wall_bridge_end_indices.
std::vector<Point2> wall_bridge_points(const BridgeChain& chain, double wall_y, const Tolerances& tol)
{
    require_closed(chain, tol);
    const Point2 lift{0.0, wall_y + 1.0};
    const double xl = chain.mirror_x;
    const Point2 bN = chain.b[chain.N - 1];
    const std::vector<Point2> half = half_rows(chain);

    detail::PointSet set(2.0 * tol.solver_abs);
    for (const Point2& p : half)
        set.add(p + lift);
    for (const Point2& p : half) {
        if (p == bN)
            continue;
        set.add(reflect_across_vertical(p, xl) + lift);
    }
    return set.take();
}

} // namespace

CurveFamily CurveFamily::exponential(double lambda, double epsilon)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidArgument("curve shape lambda must be positive and finite");
    CurveFamily fam;
    fam.shape = lambda;
    fam.epsilon = epsilon;
    fam.base = [lambda](double x) { return 2.0 * sqrt3 + (2.0 - sqrt3) * std::exp(-lambda * x); };
    return fam;
}

CurveFamily CurveFamily::with_epsilon(double eps) const
{
    CurveFamily out = *this;
    out.epsilon = eps;
    return out;
}

void CurveFamily::check_admissible() const
{
    if (!base)
        throw InvalidArgument("curve family has no base function");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw InvalidArgument("curve epsilon must be finite and non-negative");
    if (std::abs(base(0.0) - (2.0 + sqrt3)) > 1e-12)
        throw InvalidArgument("base curve must satisfy f(0) = 2 + sqrt(3)");

    // Probe a geometric grid of abscissae for monotonicity and convexity.
    double prev_x = 0.0;
    double prev_y = base(0.0);
    double prev_slope = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 80; ++k) {
        const double x = 0.05 * std::pow(1.25, k);
        const double y = base(x);
        if (!std::isfinite(y))
            throw InvalidArgument("base curve is not finite at x = " + format_double(x));
        if (!(y < prev_y) && y - 2.0 * sqrt3 > 1e-12)
            throw InvalidArgument("base curve must be strictly decreasing");
        const double slope = (y - prev_y) / (x - prev_x);
        if (slope < prev_slope - 1e-12)
            throw InvalidArgument("base curve must be convex");
        if (y < 2.0 * sqrt3 - 1e-12)
            throw InvalidArgument("base curve drops below its asymptote 2*sqrt(3)");
        prev_x = x;
        prev_y = y;
        prev_slope = slope;
    }
    if (std::abs(prev_y - 2.0 * sqrt3) > 1e-3)
        throw InvalidArgument("base curve does not approach 2*sqrt(3)");
}

double curve_eval(const CurveFamily& family, double x)
{
    if (!(x >= 0.0))
        throw InvalidArgument("curve_eval: x must be non-negative");
    const double fx = family.base(x);
    // Written so that x = 0 returns base(0) exactly for every epsilon.
    return fx + family.epsilon * (fx - family.base(0.0));
}

const char* termination_name(Termination t)
{
    switch (t) {
    case Termination::none: return "none";
    case Termination::no_b: return "no_b";
    case Termination::no_c: return "no_c";
    }
    return "?";
}

BridgeChain build_half_chain(const CurveFamily& family, int max_N, const Tolerances& tol)
{
    if (max_N < 2)
        throw InvalidArgument("build_half_chain: max_N must be at least 2");
    family.check_admissible();

    auto f = [&family](double x) { return curve_eval(family, x); };
    BridgeChain ch;
    ch.epsilon_used = family.epsilon;
    ch.a.push_back({0.0, 2.0 + sqrt3});
    ch.b.push_back({0.0, sqrt3});
    ch.c.push_back({1.0, 0.0});

    while (static_cast<int>(ch.a.size()) < max_N) {
        const int next = static_cast<int>(ch.a.size()) + 1;
        const double xa = chord_step(f, ch.a.back().x, 2.0, tol.solver_abs);
        const Point2 an{xa, f(xa)};
        const Point2 cp = ch.c.back();
        if (distance(an, cp) > 4.0) {
            ch.terminated_at = next;
            ch.reason = Termination::no_b;
            break;
        }
        const auto hits = circle_circle_intersections(an, 2.0, cp, 2.0, tol.solver_abs);
        if (hits.empty()) {
            ch.terminated_at = next;
            ch.reason = Termination::no_b;
            break;
        }
        Point2 bn = hits.front();
        for (const Point2& h : hits)
            if (h.x > bn.x)
                bn = h;
        ch.a.push_back(an);
        ch.b.push_back(bn);
        if (next == max_N)
            break;
        if (bn.y > 2.0) {
            ch.terminated_at = next;
            ch.reason = Termination::no_c;
            break;
        }
        ch.c.push_back({bn.x + std::sqrt(4.0 - bn.y * bn.y), 0.0});
    }
    ch.N = static_cast<int>(ch.b.size());
    ch.mirror_x = ch.b.back().x;
    return ch;
}

std::optional<double> closure_residual(const CurveFamily& family, int N, const Tolerances& tol)
{
    const BridgeChain ch = build_half_chain(family, N, tol);
    if (ch.N < N)
        return std::nullopt;
    return ch.b[N - 1].x - ch.a[N - 1].x - 1.0;
}

double max_tangency_residual(const BridgeChain& chain)
{
    double worst = 0.0;
    auto check = [&worst](Point2 p, Point2 q) { worst = std::max(worst, std::abs(distance(p, q) - 2.0)); };
    if (!chain.a.empty() && !chain.b.empty())
        check(chain.a[0], chain.b[0]);
    if (!chain.b.empty() && !chain.c.empty())
        check(chain.b[0], chain.c[0]);
    for (std::size_t i = 1; i < chain.b.size(); ++i) {
        check(chain.a[i - 1], chain.a[i]);
        check(chain.a[i], chain.b[i]);
        check(chain.b[i], chain.c[i - 1]);
        if (i < chain.c.size())
            check(chain.b[i], chain.c[i]);
    }
    return worst;
}

TuneResult tune_epsilon(const CurveFamily& family, int N, double eps_hi, const Tolerances& tol)
{
    if (N < 2)
        throw InvalidArgument("tune_epsilon: N must be at least 2");
    if (!(eps_hi > 0.0) || !std::isfinite(eps_hi))
        throw InvalidArgument("tune_epsilon: eps_hi must be positive and finite");
    tol.validate();

    const auto failure = [&](const std::string& why) {
        return TuningFailure("tune_epsilon failed for N=" + std::to_string(N) + ", eps_hi=" +
                             format_double(eps_hi) + ": " + why);
    };
    // Early termination counts as the large-epsilon (positive) side.
    auto sign_of = [&](double eps) {
        const auto g = closure_residual(family.with_epsilon(eps), N, tol);
        return g ? *g : std::numeric_limits<double>::infinity();
    };

    constexpr int probes = 64;
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    double prev_eps = 0.0;
    double prev_g = 0.0;
    for (int k = 0; k < probes; ++k) {
        const double eps = eps_hi * std::pow(10.0, -12.0 + 12.0 * k / (probes - 1));
        const double g = sign_of(eps);
        if (k > 0 && prev_g < 0.0 && g > 0.0) {
            lo = prev_eps;
            hi = eps;
            found = true;
            break;
        }
        prev_eps = eps;
        prev_g = g;
    }
    if (!found)
        throw failure("no sign bracket of the closure residual in (0, eps_hi]");

    TuneResult res;
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double g = sign_of(mid);
        if (std::abs(g) <= tol.solver_abs) {
            lo = hi = mid;
            break;
        }
        if (g < 0.0)
            lo = mid;
        else
            hi = mid;
    }

    // Pick the best endpoint whose chain reaches b_N.
    double best_eps = lo;
    double best_g = sign_of(lo);
    const double g_hi = sign_of(hi);
    if (std::abs(g_hi) < std::abs(best_g)) {
        best_eps = hi;
        best_g = g_hi;
    }
    if (!std::isfinite(best_g) || std::abs(best_g) > 10.0 * tol.solver_abs)
        throw failure("bisection stalled with residual " + format_double(best_g));

    res.epsilon = best_eps;
    res.chain = build_half_chain(family.with_epsilon(best_eps), N, tol);
    res.residual = best_g;
    return res;
}

Configuration complete_symmetric_bridge(const BridgeChain& chain, const Tolerances& tol)
{
    require_closed(chain, tol);
    const double xl = chain.mirror_x;
    const std::size_t N = static_cast<std::size_t>(chain.N);
    const Point2 bN = chain.b[N - 1];

    // Upper half, then the axis mirror of its a and b rows.
    std::vector<Point2> half = half_rows(chain);
    const std::size_t upper = half.size();
    for (std::size_t i = 0; i < 2 * N; ++i)
        half.push_back(reflect_across_horizontal(half[i], 0.0));

    detail::PointSet set(2.0 * tol.solver_abs);
    for (const Point2& p : half)
        set.add(p);
    const Point2 bN_low = reflect_across_horizontal(bN, 0.0);
    for (std::size_t i = 0; i < half.size(); ++i) {
        if (half[i] == bN || (i >= upper && half[i] == bN_low))
            continue;
        set.add(reflect_across_vertical(half[i], xl));
    }

    Configuration cfg;
    cfg.radius = 1.0;
    cfg.box = Box::plane();
    cfg.centers = set.take();
    cfg.meta.construction = "symmetric-bridge";
    cfg.meta.N = chain.N;
    cfg.meta.epsilon = chain.epsilon_used;
    return cfg;
}

Configuration build_wall_bridge(const CurveFamily& family, int N, double wall_y, double eps_hi,
                                const Tolerances& tol)
{
    if (!std::isfinite(wall_y))
        throw InvalidArgument("build_wall_bridge: wall_y must be finite");
    const TuneResult tuned = tune_epsilon(family, N, eps_hi, tol);
    Configuration cfg;
    cfg.radius = 1.0;
    cfg.box = Box{-Box::inf, wall_y, Box::inf, Box::inf};
    cfg.centers = wall_bridge_points(tuned.chain, wall_y, tol);
    cfg.meta.construction = "wall-bridge";
    cfg.meta.N = N;
    cfg.meta.epsilon = tuned.epsilon;
    return cfg;
}

std::vector<std::size_t> wall_bridge_end_indices(int N)
{
    const std::size_t n = static_cast<std::size_t>(N);
    const std::size_t half = 3 * n - 1;
    return {0, n, half, half + n};
}

namespace detail {

std::vector<Point2> wall_bridge_frame_points(const BridgeChain& chain, double wall_y, const Tolerances& tol)
{
    return wall_bridge_points(chain, wall_y, tol);
}

} // namespace detail

} // namespace discjam
