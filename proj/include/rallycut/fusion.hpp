#ifndef RALLYCUT_FUSION_HPP
#define RALLYCUT_FUSION_HPP

#include <span>
#include <vector>

#include "rallycut/types.hpp"

namespace rallycut {

/// Box-mode frame decision: playing iff the confidence sum over
/// Playing-labeled detections strictly exceeds the sum over
/// NonPlaying-labeled ones. Empty input and exact ties are non-playing.
bool fuse_box_frame(std::span<const LabeledDetection> detections);

/// Pose-mode frame decision: playing iff any of the first
/// config.player_count people (after config.pose_ordering) is playing.
/// Fewer people than player_count means all of them are inspected.
/// Throws Error{MissingArea} if AreaDescending is configured and an
/// observation has no skeleton_area.
bool fuse_pose_frame(std::span<const PoseObservation> poses, const PipelineConfig& config);

/// Dispatches on config.mode; errors are rethrown with the frame index
/// attached.
FrameDecision fuse_frame(const FrameRecord& record, const PipelineConfig& config);

/// One decision per frame index from the first to the last record,
/// missing indices filled in as non-playing.
std::vector<FrameDecision> fuse_stream(const ValidatedStream& stream,
                                       const PipelineConfig& config);

} // namespace rallycut

#endif
