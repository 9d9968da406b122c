#ifndef RALLYCUT_TYPES_HPP
#define RALLYCUT_TYPES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rallycut {

/// Detector ingestion mode: pixel-box detections with confidences, or
/// per-person boolean pose states.
enum class Mode { Box, Pose };

/// How pose observations are ranked before the "first N people" test.
enum class PoseOrdering { InputOrder, AreaDescending };

enum class BoxLabel { Playing, NonPlaying };

enum class ErrorCode {
    EmptyStream,
    MixedMode,
    ModeMismatch,
    NonMonotonicIndex,
    InvalidRecord,
    MissingArea,
    InvalidConfig,
    InvalidSequence,
    CountInconsistency,
    ParseError,
    IoError,
    InternalError,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-wide error type. The code distinguishes input problems
/// (everything up to ParseError/IoError) from internal invariant
/// failures (InternalError), which the CLI maps to distinct exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }
    /// Message without the error-code prefix, for rewrapping with context.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

/// Exact rational frame rate. Frame/second conversions go through the
/// integer ratio so long videos do not accumulate drift (e.g. NTSC
/// 30000/1001 stays exact where 29.97 would not).
struct FrameRate {
    std::int64_t num = 25;
    std::int64_t den = 1;

    FrameRate() = default;
    FrameRate(std::int64_t numerator, std::int64_t denominator);

    /// Accepts "25", "29.97" (decimal, up to 9 fractional digits) or
    /// "30000/1001" (exact rational).
    static FrameRate parse(const std::string& text);

    double seconds(std::int64_t frames) const noexcept;
    std::int64_t frame_at(double seconds) const noexcept;
    double as_double() const noexcept;
    std::string str() const;

    bool operator==(const FrameRate&) const = default;
};

/// One labeled box detection for one frame. The bbox is carried for
/// provenance only; decisions use label and confidence.
struct LabeledDetection {
    BoxLabel label = BoxLabel::NonPlaying;
    double confidence = 0.0;                      // [0, 1]
    std::optional<std::array<double, 4>> bbox;    // x, y, w, h in pixels
};

/// One detected person in one frame of a pose stream.
struct PoseObservation {
    int person_index = 0;                   // detector output ordinal
    bool playing = false;
    std::optional<double> skeleton_area;    // keypoint bounding area, px^2
};

/// One frame's detector output. Exactly one of boxes/poses may be
/// populated depending on the stream mode; both empty means the
/// detector saw nothing in that frame.
struct FrameRecord {
    std::int64_t frame_index = 0;
    std::vector<LabeledDetection> boxes;
    std::vector<PoseObservation> poses;
};

/// Per-frame playing/non-playing decision after fusion.
struct FrameDecision {
    std::int64_t frame_index = 0;
    bool playing = false;

    bool operator==(const FrameDecision&) const = default;
};

/// Half-open interval [start_s, end_s) in seconds.
struct TimeSegment {
    double start_s = 0.0;
    double end_s = 0.0;

    double duration() const noexcept { return end_s - start_s; }
    bool operator==(const TimeSegment&) const = default;
};

/// Ordered, pairwise-disjoint list of TimeSegments. The constructor
/// rejects anything unsorted, overlapping or degenerate, so a
/// TimeSequence in hand always satisfies the invariants.
class TimeSequence {
public:
    TimeSequence() = default;
    explicit TimeSequence(std::vector<TimeSegment> segments);

    const std::vector<TimeSegment>& segments() const noexcept { return segments_; }
    bool empty() const noexcept { return segments_.empty(); }
    std::size_t size() const noexcept { return segments_.size(); }
    auto begin() const noexcept { return segments_.begin(); }
    auto end() const noexcept { return segments_.end(); }

    bool operator==(const TimeSequence&) const = default;

private:
    std::vector<TimeSegment> segments_;
};

struct PipelineConfig {
    Mode mode = Mode::Box;
    FrameRate fps{25, 1};
    int window_k = 25;              // frames per voting window
    double vote_threshold = 0.5;    // playing-fraction a window must exceed
    double merge_gap_s = 1.0;       // gaps shorter than this are absorbed
    int player_count = 2;           // people inspected in pose mode
    PoseOrdering pose_ordering = PoseOrdering::InputOrder;

    void validate() const;          // throws Error{InvalidConfig}
};

/// Rally-level evaluation counts and scores.
struct EvalReport {
    std::int64_t correctly_detected = 0;
    std::int64_t detected = 0;
    std::int64_t actual = 0;
    double precision = 0.0;
    double recall = 0.0;
    double combined = 0.0;

    bool operator==(const EvalReport&) const = default;
};

/// Non-fatal finding from stream validation (currently: frame gaps,
/// which downstream treats as non-playing frames).
struct StreamWarning {
    std::int64_t frame_index = 0;      // first missing index
    std::int64_t missing_frames = 0;   // length of the gap
    std::string message;
};

struct ValidatedStream {
    Mode mode = Mode::Box;
    std::vector<FrameRecord> frames;
    std::vector<StreamWarning> warnings;
};

/// Checks mode consistency, per-record invariants and strictly
/// increasing frame indices. Gaps are legal and reported as warnings.
ValidatedStream validate_stream(std::vector<FrameRecord> frames, Mode mode);

} // namespace rallycut

#endif
