#ifndef RALLYCUT_VOTING_HPP
#define RALLYCUT_VOTING_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rallycut/types.hpp"

namespace rallycut {

/// Non-overlapping tiling of the decision stream into windows of
/// window_k frames; the final window may be shorter.
std::vector<std::span<const FrameDecision>>
partition_windows(std::span<const FrameDecision> decisions, int window_k);

/// A window is playing iff its playing fraction strictly exceeds the
/// threshold. Short tail windows normalize by their actual length.
bool vote_window(std::span<const FrameDecision> window, double vote_threshold);

/// Maximal runs of consecutive playing windows, as half-open frame
/// ranges over the decision sequence. Run end is clamped to total_frames.
std::vector<std::pair<std::int64_t, std::int64_t>>
playing_frame_runs(const std::vector<bool>& window_votes, int window_k,
                   std::int64_t total_frames);

/// Frame runs converted to seconds: the initial playing time sequence.
TimeSequence extract_segments(const std::vector<bool>& window_votes, int window_k,
                              FrameRate fps, std::int64_t total_frames);

/// Voting level applied to a whole decision stream: partition, vote,
/// and convert runs to absolute video time (offset by the stream's
/// first frame index).
TimeSequence initial_segments(std::span<const FrameDecision> decisions,
                              const PipelineConfig& config);

} // namespace rallycut

#endif
