#include "rallycut/pipeline.hpp"

#include <cmath>

#include "rallycut/fusion.hpp"
#include "rallycut/merge.hpp"
#include "rallycut/voting.hpp"

namespace rallycut {

HighlightResult run_pipeline(const ValidatedStream& stream, const PipelineConfig& config,
                             const std::optional<GroundTruth>& truth,
                             double min_coverage) {
    config.validate();
    if (stream.mode != config.mode) {
        throw Error(ErrorCode::ModeMismatch,
                    "stream was validated for a different mode than the pipeline config");
    }
    if (stream.frames.empty()) {
        throw Error(ErrorCode::EmptyStream, "cannot run the pipeline on an empty stream");
    }

    HighlightResult result;
    result.config = config;

    const std::vector<FrameDecision> decisions = fuse_stream(stream, config);
    result.first_frame = decisions.front().frame_index;
    result.last_frame = decisions.back().frame_index;
    result.decisions.total = static_cast<std::int64_t>(decisions.size());
    for (const auto& decision : decisions) {
        if (decision.playing) {
            ++result.decisions.playing;
        } else {
            ++result.decisions.non_playing;
        }
    }
    for (const auto& warning : stream.warnings) {
        result.decisions.gap_filled += warning.missing_frames;
    }

    result.initial_sequence = initial_segments(decisions, config);
    result.final_sequence = merge_segments(result.initial_sequence, config.merge_gap_s);
    result.duration_before_s =
        config.fps.seconds(result.last_frame + 1) - config.fps.seconds(result.first_frame);
    result.duration_after_s = total_duration(result.final_sequence);

    if (truth) {
        const MatchResult matched =
            match_rallies(result.final_sequence.segments(), *truth, min_coverage);
        result.eval = evaluate(matched.correctly_detected,
                               static_cast<std::int64_t>(result.final_sequence.size()),
                               static_cast<std::int64_t>(truth->rallies.size()));
    }

    // internal consistency, checked on every run
    if (result.final_sequence != merge_segments(result.initial_sequence, config.merge_gap_s)) {
        throw Error(ErrorCode::InternalError, "final sequence is not the merge of the initial");
    }
    if (result.duration_after_s != total_duration(result.final_sequence)) {
        throw Error(ErrorCode::InternalError, "highlight duration is inconsistent");
    }
    return result;
}

} // namespace rallycut
