#include "rallycut/fusion.hpp"

#include <algorithm>
#include <string>

namespace rallycut {

bool fuse_box_frame(std::span<const LabeledDetection> detections) {
    double playing = 0.0;
    double non_playing = 0.0;
    for (const auto& det : detections) {
        if (det.label == BoxLabel::Playing) {
            playing += det.confidence;
        } else {
            non_playing += det.confidence;
        }
    }
    return playing > non_playing;
}

bool fuse_pose_frame(std::span<const PoseObservation> poses, const PipelineConfig& config) {
    if (poses.empty()) return false;

    std::vector<const PoseObservation*> ordered;
    ordered.reserve(poses.size());
    for (const auto& pose : poses) ordered.push_back(&pose);

    if (config.pose_ordering == PoseOrdering::AreaDescending) {
        for (const auto* pose : ordered) {
            if (!pose->skeleton_area) {
                throw Error(ErrorCode::MissingArea,
                            "AreaDescending ordering needs skeleton_area on every "
                            "observation (person_index " +
                            std::to_string(pose->person_index) + " has none)");
            }
        }
        std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
            if (*a->skeleton_area != *b->skeleton_area) {
                return *a->skeleton_area > *b->skeleton_area;
            }
            return a->person_index < b->person_index;
        });
    } else {
        std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
            return a->person_index < b->person_index;
        });
    }

    const std::size_t inspect =
        std::min<std::size_t>(ordered.size(), static_cast<std::size_t>(config.player_count));
    for (std::size_t i = 0; i < inspect; ++i) {
        if (ordered[i]->playing) return true;
    }
    return false;
}

FrameDecision fuse_frame(const FrameRecord& record, const PipelineConfig& config) {
    try {
        const bool playing = config.mode == Mode::Box
                                 ? fuse_box_frame(record.boxes)
                                 : fuse_pose_frame(record.poses, config);
        return FrameDecision{record.frame_index, playing};
    } catch (const Error& e) {
        throw Error(e.code(),
                    "frame " + std::to_string(record.frame_index) + ": " + e.message());
    }
}

std::vector<FrameDecision> fuse_stream(const ValidatedStream& stream,
                                       const PipelineConfig& config) {
    std::vector<FrameDecision> decisions;
    if (stream.frames.empty()) return decisions;

    const std::int64_t first = stream.frames.front().frame_index;
    const std::int64_t last = stream.frames.back().frame_index;
    decisions.reserve(static_cast<std::size_t>(last - first + 1));

    std::int64_t expected = first;
    for (const auto& record : stream.frames) {
        for (; expected < record.frame_index; ++expected) {
            decisions.push_back(FrameDecision{expected, false});
        }
        decisions.push_back(fuse_frame(record, config));
        expected = record.frame_index + 1;
    }
    return decisions;
}

} // namespace rallycut
