#include "discjam/configuration.hpp"

#include "discjam/errors.hpp"

namespace discjam {

void validate_shape(const Configuration& config)
{
    if (!(config.radius > 0.0) || !std::isfinite(config.radius))
        throw InvalidArgument("configuration radius must be positive and finite");
    for (const Point2& p : config.centers)
        require_finite(p, "configuration center");
    const Box& b = config.box;
    if (std::isnan(b.xmin) || std::isnan(b.ymin) || std::isnan(b.xmax) || std::isnan(b.ymax))
        throw InvalidArgument("box has a NaN side");
    if (!(b.xmin < b.xmax) || !(b.ymin < b.ymax))
        throw InvalidArgument("box sides are inverted");
}

Configuration scaled(const Configuration& config, double s)
{
    if (!(s > 0.0) || !std::isfinite(s))
        throw InvalidArgument("scale factor must be positive and finite");
    Configuration out = config;
    out.radius *= s;
    for (Point2& p : out.centers)
        p = s * p;
    out.box = {s * config.box.xmin, s * config.box.ymin, s * config.box.xmax, s * config.box.ymax};
    return out;
}

Configuration moved(const Configuration& config, double rotation, Point2 translation)
{
    if (!config.box.is_plane())
        throw InvalidArgument("rigid motions are only defined for planar configurations");
    Configuration out = config;
    for (Point2& p : out.centers)
        p = apply_rigid(p, rotation, translation);
    return out;
}

} // namespace discjam
