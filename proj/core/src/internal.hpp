#pragma once

#include "discjam/errors.hpp"
#include "discjam/geometry.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace discjam::detail {

// Bisection on [lo, hi] for a sign change of fn; runs until the bracket stops
// shrinking and returns the endpoint with the smaller |fn|.
inline double bisect(const std::function<double(double)>& fn, double lo, double hi)
{
    double flo = fn(lo);
    const double fhi = fn(hi);
    if ((flo < 0.0) == (fhi < 0.0))
        throw ConstructionFailure("bisection bracket has no sign change");
    double vhi = fhi;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = fn(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            vhi = fm;
        }
    }
    return std::abs(flo) <= std::abs(vhi) ? lo : hi;
}

// Point collection with coincidence control: centers within merge_tol of an
// existing one are merged when the caller marks them shared, and rejected
// otherwise.
class PointSet {
public:
    explicit PointSet(double merge_tol) : merge_tol_(merge_tol) {}

    std::size_t add(Point2 p, bool shared = false)
    {
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            const double d = distance(p, pts_[i]);
            if (d <= merge_tol_) {
                if (shared)
                    return i;
                throw ConstructionFailure("unexpected coincident discs at index " + std::to_string(i));
            }
            if (d < near_tol)
                throw ConstructionFailure("near-coincident discs at index " + std::to_string(i));
        }
        pts_.push_back(p);
        return pts_.size() - 1;
    }

    const std::vector<Point2>& points() const { return pts_; }
    std::vector<Point2> take() { return std::move(pts_); }

private:
    static constexpr double near_tol = 1e-6;
    double merge_tol_;
    std::vector<Point2> pts_;
};

} // namespace discjam::detail

namespace discjam {
struct BridgeChain;
struct Tolerances;
namespace detail {
std::vector<Point2> wall_bridge_frame_points(const BridgeChain& chain, double wall_y, const Tolerances& tol);
} // namespace detail
} // namespace discjam
