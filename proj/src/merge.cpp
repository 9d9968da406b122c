#include "rallycut/merge.hpp"

namespace rallycut {

TimeSequence merge_segments(const TimeSequence& seq, double merge_gap_s) {
    if (!(merge_gap_s >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "merge_gap_s must be >= 0");
    }
    if (seq.empty()) return seq;

    std::vector<TimeSegment> merged;
    merged.reserve(seq.size());
    merged.push_back(seq.segments().front());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const TimeSegment& next = seq.segments()[i];
        if (next.start_s - merged.back().end_s < merge_gap_s) {
            merged.back().end_s = next.end_s;
        } else {
            merged.push_back(next);
        }
    }
    return TimeSequence(std::move(merged));
}

double total_duration(const TimeSequence& seq) {
    double total = 0.0;
    for (const auto& segment : seq) total += segment.duration();
    return total;
}

} // namespace rallycut
