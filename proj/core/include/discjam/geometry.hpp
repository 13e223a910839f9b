#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace discjam {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double distance_sq(Point2 a, Point2 b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Unit vector at angle theta (radians).
inline Point2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct Tolerances {
    double tangency_rel = 1e-9;
    double solver_abs = 1e-12;
    double angle_slack = 1e-9;

    // Throws InvalidArgument unless all are positive and tangency_rel > solver_abs.
    void validate() const;
};

// Throws InvalidArgument naming `what` when p has a NaN or infinite coordinate.
void require_finite(Point2 p, const char* what);

// Intersection of circle (c1, r1) with circle (c2, r2). Returns 0, 1 or 2 points;
// a distance within solver_abs of r1 + r2 or |r1 - r2| counts as tangency.
// With two points the one to the left of c1 -> c2 comes first.
std::vector<Point2> circle_circle_intersections(Point2 c1, double r1, Point2 c2, double r2,
                                                double solver_abs = 1e-12);

// Smallest x' > x_start whose curve point lies at distance `chord` from
// (x_start, curve(x_start)). The curve must be non-increasing on [x_start, inf).
double chord_step(const std::function<double(double)>& curve, double x_start, double chord,
                  double solver_abs = 1e-12);

Point2 reflect_across_vertical(Point2 p, double x0);
Point2 reflect_across_horizontal(Point2 p, double y0);

// Rotation about the origin by `rotation` radians, then translation.
Point2 apply_rigid(Point2 p, double rotation, Point2 translation);

} // namespace discjam
