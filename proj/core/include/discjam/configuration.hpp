#pragma once

#include "discjam/geometry.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace discjam {

// Axis-aligned container. Infinite sides are allowed: the plane, half-planes
// and quadrants are all representable.
struct Box {
    static constexpr double inf = std::numeric_limits<double>::infinity();

    double xmin = -inf;
    double ymin = -inf;
    double xmax = inf;
    double ymax = inf;

    static Box plane() { return {}; }
    static Box unit_square() { return {0.0, 0.0, 1.0, 1.0}; }

    bool is_plane() const
    {
        return xmin == -inf && ymin == -inf && xmax == inf && ymax == inf;
    }
    bool is_bounded() const
    {
        return std::isfinite(xmin) && std::isfinite(ymin) && std::isfinite(xmax) &&
               std::isfinite(ymax);
    }

    friend bool operator==(const Box&, const Box&) = default;
};

struct Metadata {
    std::string construction;
    std::optional<int> N;
    std::optional<double> epsilon;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct Configuration {
    double radius = 1.0;
    std::vector<Point2> centers;
    Box box;
    Metadata meta;

    std::size_t size() const { return centers.size(); }
};

// Throws InvalidArgument on a non-positive radius, non-finite centers or an
// inverted box.
void validate_shape(const Configuration& config);

// Uniform scaling about the origin; radius, centers and box all scale by s.
Configuration scaled(const Configuration& config, double s);

// Rotation then translation of every center. Only defined for the plane.
Configuration moved(const Configuration& config, double rotation, Point2 translation);

} // namespace discjam
