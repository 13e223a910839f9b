#pragma once

#include "discjam/configuration.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace discjam {

enum class Wall { left, bottom, right, top };

const char* wall_name(Wall w);

struct Contact {
    // Index of the touching disc, or nullopt for a wall contact.
    std::optional<std::size_t> other;
    std::optional<Wall> wall;
    // Unit vector from the obstacle into this disc's center.
    Point2 normal;
};

struct ContactGraph {
    std::vector<std::vector<Contact>> contacts;

    std::size_t disc_count() const { return contacts.size(); }
    std::size_t edge_count() const;
    std::size_t wall_contact_count() const;
    std::vector<Point2> normals(std::size_t i) const;
};

struct PairViolation {
    std::size_t i = 0;
    std::size_t j = 0;
    double penetration = 0.0;
};

struct WallViolation {
    std::size_t i = 0;
    Wall wall = Wall::left;
    double penetration = 0.0;
};

struct OverlapAudit {
    double max_penetration = 0.0;
    // Smallest surface-to-surface gap; +inf when there are fewer than two discs.
    double min_gap = 0.0;
    std::vector<PairViolation> violations;
    std::vector<WallViolation> wall_violations;

    bool ok() const { return violations.empty() && wall_violations.empty(); }
};

// Exact pairwise scan. Pairs closer than 2r(1 - tangency_rel) and discs sticking
// out of the box by more than r * tangency_rel are violations.
OverlapAudit overlap_audit(const Configuration& config, const Tolerances& tol = {});

// Throws OverlapError naming the worst pair (or wall) when the audit fails.
ContactGraph contact_graph(const Configuration& config, const Tolerances& tol = {});

enum class Verdict { jammed, movable, rattler };

const char* verdict_name(Verdict v);

// Feasible displacement directions, as the arc [lo, lo + width] in radians.
struct EscapeCone {
    double lo = 0.0;
    double width = 0.0;

    double hi() const { return lo + width; }
};

struct JamResult {
    Verdict verdict = Verdict::jammed;
    std::optional<Point2> witness;
    std::optional<EscapeCone> cone;
    // Largest circular gap between consecutive normal angles (2*pi with <= 1 normal).
    double max_gap = 0.0;
};

JamResult is_locally_jammed(const std::vector<Point2>& normals, double angle_slack = 1e-9);

// Brute-force scan of K equally spaced directions, K >= 360.
JamResult direction_oracle(const std::vector<Point2>& normals, int K);

struct DiscVerdict {
    std::size_t index = 0;
    Verdict verdict = Verdict::jammed;
    std::size_t contact_count = 0;
    std::optional<Point2> witness;
    std::optional<EscapeCone> cone;
};

struct JammingReport {
    std::vector<DiscVerdict> discs;
    // Movable discs including rattlers.
    std::size_t movable_count = 0;
    std::size_t rattler_count = 0;
    std::size_t contact_edges = 0;
    std::size_t wall_contacts = 0;
    OverlapAudit audit;

    bool stable() const { return movable_count == 0 && audit.ok(); }
    std::vector<std::size_t> movable_indices() const;
};

JammingReport verify_stable(const Configuration& config, const Tolerances& tol = {});

// One line per movable disc: index, verdict, witness angle and escape cone in degrees.
std::string describe_movable(const JammingReport& report);

namespace detail {
// Contact detection without the overlap precondition; used by rendering.
ContactGraph collect_contacts(const Configuration& config, const Tolerances& tol);
} // namespace detail

} // namespace discjam
