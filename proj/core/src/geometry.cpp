#include "discjam/geometry.hpp"

#include "discjam/errors.hpp"

#include <string>

namespace discjam {

void Tolerances::validate() const
{
    if (!(tangency_rel > 0.0) || !(solver_abs > 0.0) || !(angle_slack > 0.0))
        throw InvalidArgument("tolerances must be strictly positive");
    if (!(tangency_rel > solver_abs))
        throw InvalidArgument("tangency_rel must exceed solver_abs");
}

void require_finite(Point2 p, const char* what)
{
    if (!is_finite(p))
        throw InvalidArgument(std::string(what) + ": non-finite coordinate");
}

std::vector<Point2> circle_circle_intersections(Point2 c1, double r1, Point2 c2, double r2,
                                                double solver_abs)
{
    require_finite(c1, "circle_circle_intersections c1");
    require_finite(c2, "circle_circle_intersections c2");
    if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(r1) || !std::isfinite(r2))
        throw InvalidArgument("circle_circle_intersections: radii must be positive and finite");
    if (c1 == c2)
        throw DegenerateInput("circle_circle_intersections: coincident centers");

    const Point2 delta = c2 - c1;
    const double d = norm(delta);
    const Point2 u = (1.0 / d) * delta;

    if (std::abs(d - (r1 + r2)) <= solver_abs)
        return {c1 + r1 * u};
    const double inner = std::abs(r1 - r2);
    if (std::abs(d - inner) <= solver_abs)
        return {r1 >= r2 ? c1 + r1 * u : c1 - r1 * u};
    if (d > r1 + r2 || d < inner)
        return {};

    const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    const double h = std::sqrt(std::max(r1 * r1 - a * a, 0.0));
    const Point2 m = c1 + a * u;
    const Point2 perp{-u.y, u.x};
    return {m + h * perp, m - h * perp};
}

double chord_step(const std::function<double(double)>& curve, double x_start, double chord,
                  double solver_abs)
{
    if (!std::isfinite(x_start))
        throw InvalidArgument("chord_step: x_start must be finite");
    if (!(chord > 0.0) || !std::isfinite(chord))
        throw InvalidArgument("chord_step: chord must be positive and finite");

    const double y0 = curve(x_start);
    auto gap = [&](double x) { return std::hypot(x - x_start, curve(x) - y0) - chord; };

    double lo = x_start;
    double hi = x_start + chord;
    (void)solver_abs;
    // Bisect until the bracket can no longer shrink in double precision.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (gap(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return std::abs(gap(lo)) < std::abs(gap(hi)) ? lo : hi;
}

Point2 reflect_across_vertical(Point2 p, double x0) { return {2.0 * x0 - p.x, p.y}; }

Point2 reflect_across_horizontal(Point2 p, double y0) { return {p.x, 2.0 * y0 - p.y}; }

Point2 apply_rigid(Point2 p, double rotation, Point2 translation)
{
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    return {c * p.x - s * p.y + translation.x, s * p.x + c * p.y + translation.y};
}

} // namespace discjam
