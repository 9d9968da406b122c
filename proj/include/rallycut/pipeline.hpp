#ifndef RALLYCUT_PIPELINE_HPP
#define RALLYCUT_PIPELINE_HPP

#include <optional>

#include "rallycut/metrics.hpp"
#include "rallycut/types.hpp"

namespace rallycut {

struct FrameDecisionSummary {
    std::int64_t total = 0;
    std::int64_t playing = 0;
    std::int64_t non_playing = 0;
    std::int64_t gap_filled = 0;
};

/// Everything one end-to-end run produces.
struct HighlightResult {
    PipelineConfig config;
    TimeSequence initial_sequence;    // voting level output
    TimeSequence final_sequence;      // after gap merging
    FrameDecisionSummary decisions;
    std::int64_t first_frame = 0;
    std::int64_t last_frame = 0;
    double duration_before_s = 0.0;   // covered input span
    double duration_after_s = 0.0;    // total highlight duration
    std::optional<EvalReport> eval;
};

/// fusion -> windowed voting -> gap merging -> optional evaluation.
/// Verifies HighlightResult's internal invariants before returning and
/// throws Error{InternalError} if they do not hold.
HighlightResult run_pipeline(const ValidatedStream& stream, const PipelineConfig& config,
                             const std::optional<GroundTruth>& truth = std::nullopt,
                             double min_coverage = 0.5);

} // namespace rallycut

#endif
