#include "discjam/metropolis.hpp"

#include "discjam/errors.hpp"
#include "discjam/verifier.hpp"

#include <algorithm>
#include <future>
#include <numbers>
#include <string>

namespace discjam {

namespace {

bool inside_box(Point2 q, double r, const Box& b)
{
    return q.x - r >= b.xmin && q.x + r <= b.xmax && q.y - r >= b.ymin && q.y + r <= b.ymax;
}

void require_valid(const Configuration& config)
{
    validate_shape(config);
    if (config.centers.empty())
        throw InvalidArgument("Metropolis chain needs at least one disc");
    // contact_graph raises the overlap error with the offending pair.
    (void)contact_graph(config);
}

// Proposal and acceptance test; assumes a valid configuration.
StepOutcome step_unchecked(std::vector<Point2>& P, double r, const Box& box, double step_radius, ChainRng& rng)
{
    StepOutcome out;
    out.index = static_cast<std::size_t>(rng.below(P.size()));
    const double theta = 2.0 * std::numbers::pi * rng.uniform01();
    const double rho = step_radius * std::sqrt(rng.uniform01());
    const Point2 q = P[out.index] + rho * unit(theta);
    out.proposal = q;
    if (!inside_box(q, r, box))
        return out;
    const double min_sq = 4.0 * r * r;
    for (std::size_t j = 0; j < P.size(); ++j)
        if (j != out.index && distance_sq(q, P[j]) < min_sq)
            return out;
    P[out.index] = q;
    out.accepted = true;
    return out;
}

} // namespace

void ChainParams::validate() const
{
    if (steps < 1)
        throw InvalidArgument("steps must be at least 1");
    if (!(step_radius > 0.0) || !std::isfinite(step_radius))
        throw InvalidArgument("step_radius must be positive and finite");
    if (record_interval < 1)
        throw InvalidArgument("record_interval must be at least 1");
}

ChainParams default_chain_params(const Configuration& config)
{
    ChainParams p;
    p.step_radius = config.radius;
    return p;
}

double ChainRng::uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

std::uint64_t ChainRng::below(std::uint64_t n)
{
    if (n == 0)
        throw InvalidArgument("ChainRng::below: empty range");
    __extension__ typedef unsigned __int128 u128;
    u128 m = static_cast<u128>(eng_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<u128>(eng_()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

StepOutcome metropolis_step(Configuration& config, const ChainParams& params, ChainRng& rng)
{
    params.validate();
    require_valid(config);
    return step_unchecked(config.centers, config.radius, config.box, params.step_radius, rng);
}

ChainResult run_chain(const Configuration& config, const ChainParams& params)
{
    params.validate();
    require_valid(config);

    ChainResult res{config, {}};
    std::vector<Point2>& P = res.final.centers;
    const std::vector<Point2> start = config.centers;
    const double r = config.radius;
    ChainRng rng(params.seed);
    ChainStats& st = res.stats;

    std::uint64_t window_prop = 0;
    std::uint64_t window_acc = 0;
    auto close_window = [&](std::uint64_t step) {
        st.trace.push_back({step, window_prop, window_acc,
                            static_cast<double>(window_acc) / static_cast<double>(window_prop)});
        window_prop = window_acc = 0;
        const OverlapAudit audit = overlap_audit(res.final);
        if (!audit.ok())
            throw Error("chain left the valid configuration space at step " + std::to_string(step));
    };

    for (std::uint64_t s = 1; s <= params.steps; ++s) {
        const StepOutcome o = step_unchecked(P, r, config.box, params.step_radius, rng);
        ++st.proposed;
        ++window_prop;
        if (o.accepted) {
            ++st.accepted;
            ++window_acc;
            st.max_center_displacement =
                std::max(st.max_center_displacement, distance(P[o.index], start[o.index]));
        }
        if (s % params.record_interval == 0)
            close_window(s);
    }
    if (window_prop > 0)
        close_window(params.steps);
    st.acceptance_rate = static_cast<double>(st.accepted) / static_cast<double>(st.proposed);
    return res;
}

Configuration shrink_radius(const Configuration& config, double factor)
{
    if (!(factor > 0.0) || !(factor <= 1.0))
        throw InvalidArgument("shrink factor must lie in (0, 1]");
    Configuration out = config;
    out.radius *= factor;
    return out;
}

std::vector<EscapeRow> escape_experiment(const Configuration& config, const std::vector<double>& factors,
                                         const ChainParams& params)
{
    params.validate();
    for (double f : factors)
        if (!(f > 0.0) || !(f <= 1.0))
            throw InvalidArgument("shrink factor must lie in (0, 1]");

    std::vector<std::future<ChainStats>> jobs;
    jobs.reserve(factors.size());
    for (double f : factors)
        jobs.push_back(std::async(std::launch::async,
                                  [&config, &params, f] { return run_chain(shrink_radius(config, f), params).stats; }));
    std::vector<EscapeRow> rows;
    rows.reserve(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k)
        rows.push_back({factors[k], jobs[k].get()});
    return rows;
}

double frozen_step_bound(const Configuration& config, const Tolerances& tol)
{
    const ContactGraph g = contact_graph(config, tol);
    const double r = config.radius;
    const double pi = std::numbers::pi;
    double bound = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < config.size(); ++i) {
        if (is_locally_jammed(g.normals(i), tol.angle_slack).verdict != Verdict::jammed)
            return 0.0;
        std::vector<double> disc_angles;
        std::vector<double> wall_angles;
        for (const Contact& c : g.contacts[i]) {
            const double a = std::atan2(c.normal.y, c.normal.x);
            (c.wall ? wall_angles : disc_angles).push_back(a);
        }

        // Escape distance along direction phi; +inf where a wall blocks it.
        auto escape = [&](double phi) {
            for (double w : wall_angles)
                if (std::cos(phi - w) < -1e-12)
                    return std::numeric_limits<double>::infinity();
            double need = 0.0;
            for (double a : disc_angles)
                need = std::max(need, -4.0 * r * std::cos(phi - a));
            return need;
        };

        std::vector<double> cand;
        for (std::size_t a = 0; a < disc_angles.size(); ++a) {
            cand.push_back(disc_angles[a]);
            for (std::size_t b = a + 1; b < disc_angles.size(); ++b) {
                const double mid = 0.5 * (disc_angles[a] + disc_angles[b]);
                cand.push_back(mid);
                cand.push_back(mid + pi);
            }
        }
        for (double w : wall_angles) {
            cand.push_back(w + 0.5 * pi);
            cand.push_back(w - 0.5 * pi);
        }
        double best = std::numeric_limits<double>::infinity();
        for (double phi : cand)
            best = std::min(best, escape(phi));
        bound = std::min(bound, best);
    }
    return std::isfinite(bound) ? bound : 0.0;
}

} // namespace discjam
