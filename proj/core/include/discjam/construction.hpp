#pragma once

#include "discjam/configuration.hpp"
#include "discjam/geometry.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace discjam {

struct CurveFamily {
    std::function<double(double)> base;
    double shape = 0.1;
    double epsilon = 0.0;

    // f(x) = 2*sqrt(3) + (2 - sqrt(3)) * exp(-lambda * x)
    static CurveFamily exponential(double lambda = 0.1, double epsilon = 0.0);

    CurveFamily with_epsilon(double eps) const;

    // Sampled checks: f(0) = 2 + sqrt(3), strictly decreasing, strictly convex,
    // tail approaching 2*sqrt(3), epsilon >= 0. Throws InvalidArgument.
    void check_admissible() const;
};

// (1 + eps) * base(x) - eps * base(0); rejects negative x.
double curve_eval(const CurveFamily& family, double x);

enum class Termination { none, no_b, no_c };

const char* termination_name(Termination t);

struct BridgeChain {
    std::vector<Point2> a;
    std::vector<Point2> b;
    std::vector<Point2> c;
    int N = 0;
    double epsilon_used = 0.0;
    double mirror_x = 0.0;
    // 1-based index of the a/b pair at which the recursion stopped early.
    std::optional<int> terminated_at;
    Termination reason = Termination::none;
};

BridgeChain build_half_chain(const CurveFamily& family, int max_N, const Tolerances& tol = {});

// x(b_N) - x(a_N) - 1 for the chain built at this epsilon, or nullopt when the
// chain stops before b_N.
std::optional<double> closure_residual(const CurveFamily& family, int N, const Tolerances& tol = {});

// Largest |distance - 2| over every construction tangency of the chain,
// recomputed from the stored coordinates.
double max_tangency_residual(const BridgeChain& chain);

struct TuneResult {
    double epsilon = 0.0;
    BridgeChain chain;
    double residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

TuneResult tune_epsilon(const CurveFamily& family, int N, double eps_hi, const Tolerances& tol = {});

Configuration complete_symmetric_bridge(const BridgeChain& chain, const Tolerances& tol = {});

// Half-bridge resting on the wall y = wall_y, closed by its mirror about l.
Configuration build_wall_bridge(const CurveFamily& family, int N, double wall_y, double eps_hi = 8.0,
                                const Tolerances& tol = {});

// Indices of a1, b1 and their mirror images inside a wall bridge built above.
std::vector<std::size_t> wall_bridge_end_indices(int N);

Configuration junction_piece();

enum class Layout { wall_bridges, interior_bridges };

const char* layout_name(Layout layout);
Layout parse_layout(const std::string& name);

struct AssemblyMetrics {
    std::size_t n = 0;
    double r = 0.0;
    double n_times_r = 0.0;
    int N = 0;
    double epsilon_used = 0.0;
    double scale = 0.0;
    std::string layout;
};

struct AssemblyOptions {
    double lambda = 0.1;
    double eps_hi = 8.0;
    Tolerances tol;
};

// Square container [0,1]^2 with four junction corners and four bridges.
// Throws AssemblyFailure when the result has overlaps or movable discs.
std::pair<Configuration, AssemblyMetrics> assemble_square(int N, Layout layout,
                                                          const AssemblyOptions& opts = {});

Configuration five_disc_config();

// Unit discs on the 3.12.12 tiling with edge 2, inside [-2w, 2w]^2 where w is
// the half-width in edge lengths. A tiling vertex sits at the origin.
Configuration tiling_3_12_12(int window_half_width);

struct Rect {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    double area() const { return (xmax - xmin) * (ymax - ymin); }
    bool contains(Point2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

double density(const Configuration& config, const Rect& region);

// Exact limit density of the 3.12.12 disc arrangement.
double tiling_density_limit();

} // namespace discjam
