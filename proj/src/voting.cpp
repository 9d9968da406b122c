#include "rallycut/voting.hpp"

#include <algorithm>

namespace rallycut {

std::vector<std::span<const FrameDecision>>
partition_windows(std::span<const FrameDecision> decisions, int window_k) {
    if (window_k < 1) {
        throw Error(ErrorCode::InvalidConfig,
                    "window_k must be >= 1, got " + std::to_string(window_k));
    }
    std::vector<std::span<const FrameDecision>> windows;
    const std::size_t k = static_cast<std::size_t>(window_k);
    windows.reserve((decisions.size() + k - 1) / k);
    for (std::size_t i = 0; i < decisions.size(); i += k) {
        windows.push_back(decisions.subspan(i, std::min(k, decisions.size() - i)));
    }
    return windows;
}

bool vote_window(std::span<const FrameDecision> window, double vote_threshold) {
    if (window.empty()) return false;
    std::size_t playing = 0;
    for (const auto& decision : window) {
        if (decision.playing) ++playing;
    }
    return static_cast<double>(playing) / static_cast<double>(window.size()) > vote_threshold;
}

std::vector<std::pair<std::int64_t, std::int64_t>>
playing_frame_runs(const std::vector<bool>& window_votes, int window_k,
                   std::int64_t total_frames) {
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    const std::int64_t k = window_k;
    std::size_t i = 0;
    while (i < window_votes.size()) {
        if (!window_votes[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < window_votes.size() && window_votes[j + 1]) ++j;
        const std::int64_t start = static_cast<std::int64_t>(i) * k;
        const std::int64_t end =
            std::min(static_cast<std::int64_t>(j + 1) * k, total_frames);
        if (start < end) runs.emplace_back(start, end);
        i = j + 1;
    }
    return runs;
}

TimeSequence extract_segments(const std::vector<bool>& window_votes, int window_k,
                              FrameRate fps, std::int64_t total_frames) {
    std::vector<TimeSegment> segments;
    for (const auto& [start, end] : playing_frame_runs(window_votes, window_k, total_frames)) {
        segments.push_back(TimeSegment{fps.seconds(start), fps.seconds(end)});
    }
    return TimeSequence(std::move(segments));
}

TimeSequence initial_segments(std::span<const FrameDecision> decisions,
                              const PipelineConfig& config) {
    if (decisions.empty()) return TimeSequence{};

    std::vector<bool> votes;
    for (const auto window : partition_windows(decisions, config.window_k)) {
        votes.push_back(vote_window(window, config.vote_threshold));
    }

    const std::int64_t base = decisions.front().frame_index;
    const std::int64_t total = static_cast<std::int64_t>(decisions.size());
    std::vector<TimeSegment> segments;
    for (const auto& [start, end] : playing_frame_runs(votes, config.window_k, total)) {
        segments.push_back(
            TimeSegment{config.fps.seconds(base + start), config.fps.seconds(base + end)});
    }
    return TimeSequence(std::move(segments));
}

} // namespace rallycut
