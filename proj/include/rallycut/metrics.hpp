#ifndef RALLYCUT_METRICS_HPP
#define RALLYCUT_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rallycut/types.hpp"

namespace rallycut {

/// Actual rally intervals, e.g. read off the score caption.
struct GroundTruth {
    TimeSequence rallies;
};

struct RallyMatch {
    std::size_t detected_index = 0;   // position in the caller's detected list
    std::size_t actual_index = 0;     // position in the ground-truth sequence
    double overlap_s = 0.0;
};

struct MatchResult {
    std::vector<RallyMatch> matches;          // in detected time order
    std::int64_t correctly_detected = 0;      // == matches.size()
};

/// Greedy one-to-one matching in time order: each detected segment
/// takes the earliest unmatched rally whose duration it covers by at
/// least min_coverage. Detected segments are sorted internally, so the
/// input may arrive in any order; reported indices refer to the input
/// positions.
MatchResult match_rallies(std::span<const TimeSegment> detected, const GroundTruth& actual,
                          double min_coverage = 0.5);

/// Precision, recall and their harmonic mean from rally counts.
/// Ratios with a zero denominator are defined as 0.
EvalReport evaluate(std::int64_t correctly_detected, std::int64_t detected,
                    std::int64_t actual);

/// after/before duration ratio (how much of the input the highlight keeps).
double compression_ratio(double before_s, double after_s);

/// Report-layer rounding: fraction -> integer percent, half up.
int rounded_percent(double fraction);

} // namespace rallycut

#endif
