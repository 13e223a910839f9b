#pragma once

#include "discjam/configuration.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace discjam {

struct ChainParams {
    std::uint64_t steps = 1000000;
    double step_radius = 0.0;
    std::uint64_t seed = 1;
    std::uint64_t record_interval = 100000;

    void validate() const;
};

// Chain parameters with step_radius set to the configuration radius.
ChainParams default_chain_params(const Configuration& config);

struct IntervalRecord {
    std::uint64_t end_step = 0;
    std::uint64_t proposed = 0;
    std::uint64_t accepted = 0;
    double acceptance_rate = 0.0;
};

struct ChainStats {
    std::uint64_t proposed = 0;
    std::uint64_t accepted = 0;
    double acceptance_rate = 0.0;
    double max_center_displacement = 0.0;
    std::vector<IntervalRecord> trace;
};

// Portable draws on top of std::mt19937_64: doubles use the top 53 bits and
// indices use an unbiased multiply-shift.
class ChainRng {
public:
    static constexpr const char* algorithm = "mt19937_64";

    explicit ChainRng(std::uint64_t seed) : eng_(seed) {}

    double uniform01();
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 eng_;
};

struct StepOutcome {
    bool accepted = false;
    std::size_t index = 0;
    Point2 proposal;
};

// One proposal: disc index, then angle, then radius step_radius * sqrt(u).
// Validates the configuration first; throws OverlapError when it is invalid.
StepOutcome metropolis_step(Configuration& config, const ChainParams& params, ChainRng& rng);

struct ChainResult {
    Configuration final;
    ChainStats stats;
};

ChainResult run_chain(const Configuration& config, const ChainParams& params);

Configuration shrink_radius(const Configuration& config, double factor);

struct EscapeRow {
    double factor = 1.0;
    ChainStats stats;
};

// One chain per factor, run concurrently; rows come back in input order.
std::vector<EscapeRow> escape_experiment(const Configuration& config, const std::vector<double>& factors,
                                         const ChainParams& params);

// Largest step radius below which every proposal is rejected: the minimum over
// discs and directions of the distance needed to clear all current contacts
// (walls act as hard constraints). Zero when some disc can slide freely.
double frozen_step_bound(const Configuration& config, const Tolerances& tol = {});

} // namespace discjam
