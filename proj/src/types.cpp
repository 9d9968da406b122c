#include "rallycut/types.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace rallycut {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyStream: return "EmptyStream";
        case ErrorCode::MixedMode: return "MixedMode";
        case ErrorCode::ModeMismatch: return "ModeMismatch";
        case ErrorCode::NonMonotonicIndex: return "NonMonotonicIndex";
        case ErrorCode::InvalidRecord: return "InvalidRecord";
        case ErrorCode::MissingArea: return "MissingArea";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidSequence: return "InvalidSequence";
        case ErrorCode::CountInconsistency: return "CountInconsistency";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message) {}

FrameRate::FrameRate(std::int64_t numerator, std::int64_t denominator)
    : num(numerator), den(denominator) {
    if (num <= 0 || den <= 0) {
        throw Error(ErrorCode::InvalidConfig, "frame rate must be positive, got " +
                    std::to_string(num) + "/" + std::to_string(den));
    }
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
}

FrameRate FrameRate::parse(const std::string& text) {
    const auto fail = [&](const std::string& why) -> Error {
        return Error(ErrorCode::ParseError, "bad frame rate '" + text + "': " + why);
    };
    if (text.empty()) throw fail("empty");

    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t n1 = 0, n2 = 0;
            const std::int64_t num = std::stoll(text.substr(0, slash), &n1);
            const std::int64_t den = std::stoll(text.substr(slash + 1), &n2);
            if (n1 != slash || n2 != text.size() - slash - 1) throw fail("trailing characters");
            return FrameRate(num, den);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            std::size_t n = 0;
            const std::int64_t num = std::stoll(text, &n);
            if (n != text.size()) throw fail("trailing characters");
            return FrameRate(num, 1);
        }
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 9) throw fail("1 to 9 fractional digits supported");
        std::size_t n1 = 0, n2 = 0;
        const std::int64_t w = whole.empty() ? 0 : std::stoll(whole, &n1);
        const std::int64_t f = std::stoll(frac, &n2);
        if ((!whole.empty() && n1 != whole.size()) || n2 != frac.size()) {
            throw fail("trailing characters");
        }
        if (w < 0 || f < 0) throw fail("must be positive");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        return FrameRate(w * den + f, den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw fail("not a number");
    }
}

double FrameRate::seconds(std::int64_t frames) const noexcept {
    return static_cast<double>(frames * den) / static_cast<double>(num);
}

std::int64_t FrameRate::frame_at(double s) const noexcept {
    return std::llround(s * static_cast<double>(num) / static_cast<double>(den));
}

double FrameRate::as_double() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string FrameRate::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

TimeSequence::TimeSequence(std::vector<TimeSegment> segments)
    : segments_(std::move(segments)) {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& seg = segments_[i];
        std::ostringstream at;
        at << "segment " << i << " [" << seg.start_s << ", " << seg.end_s << ")";
        if (!(seg.start_s >= 0.0)) {
            throw Error(ErrorCode::InvalidSequence, at.str() + " has negative start");
        }
        if (!(seg.start_s < seg.end_s)) {
            throw Error(ErrorCode::InvalidSequence, at.str() + " is empty or reversed");
        }
        if (i > 0 && !(segments_[i - 1].end_s <= seg.start_s)) {
            throw Error(ErrorCode::InvalidSequence,
                        at.str() + " overlaps or precedes the previous segment");
        }
    }
}

void PipelineConfig::validate() const {
    if (fps.num <= 0 || fps.den <= 0) {
        throw Error(ErrorCode::InvalidConfig, "fps must be positive");
    }
    if (window_k < 1) {
        throw Error(ErrorCode::InvalidConfig,
                    "window_k must be >= 1, got " + std::to_string(window_k));
    }
    if (!(vote_threshold >= 0.0 && vote_threshold <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "vote_threshold must be in [0, 1]");
    }
    if (!(merge_gap_s >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "merge_gap_s must be >= 0");
    }
    if (player_count < 1) {
        throw Error(ErrorCode::InvalidConfig,
                    "player_count must be >= 1, got " + std::to_string(player_count));
    }
}

namespace {

void check_record(const FrameRecord& rec, Mode mode) {
    const std::string at = "frame " + std::to_string(rec.frame_index);
    if (rec.frame_index < 0) {
        throw Error(ErrorCode::InvalidRecord, at + ": negative frame index");
    }
    if (!rec.boxes.empty() && !rec.poses.empty()) {
        throw Error(ErrorCode::MixedMode, at + ": both boxes and poses populated");
    }
    if (mode == Mode::Box && !rec.poses.empty()) {
        throw Error(ErrorCode::ModeMismatch, at + ": pose record in a box-mode stream");
    }
    if (mode == Mode::Pose && !rec.boxes.empty()) {
        throw Error(ErrorCode::ModeMismatch, at + ": box record in a pose-mode stream");
    }
    for (const auto& det : rec.boxes) {
        if (!(det.confidence >= 0.0 && det.confidence <= 1.0)) {
            throw Error(ErrorCode::InvalidRecord,
                        at + ": confidence " + std::to_string(det.confidence) +
                        " outside [0, 1]");
        }
        if (det.bbox && ((*det.bbox)[2] < 0.0 || (*det.bbox)[3] < 0.0)) {
            throw Error(ErrorCode::InvalidRecord, at + ": bbox with negative extent");
        }
    }
    std::unordered_set<int> seen;
    for (const auto& pose : rec.poses) {
        if (pose.person_index < 0) {
            throw Error(ErrorCode::InvalidRecord, at + ": negative person_index");
        }
        if (!seen.insert(pose.person_index).second) {
            throw Error(ErrorCode::InvalidRecord,
                        at + ": duplicate person_index " + std::to_string(pose.person_index));
        }
        if (pose.skeleton_area && *pose.skeleton_area < 0.0) {
            throw Error(ErrorCode::InvalidRecord, at + ": negative skeleton_area");
        }
    }
}

} // namespace

ValidatedStream validate_stream(std::vector<FrameRecord> frames, Mode mode) {
    if (frames.empty()) {
        throw Error(ErrorCode::EmptyStream, "detection stream has no records");
    }
    ValidatedStream out;
    out.mode = mode;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        check_record(frames[i], mode);
        if (i > 0) {
            const std::int64_t prev = frames[i - 1].frame_index;
            const std::int64_t cur = frames[i].frame_index;
            if (cur <= prev) {
                throw Error(ErrorCode::NonMonotonicIndex,
                            "frame " + std::to_string(cur) + " follows frame " +
                            std::to_string(prev));
            }
            if (cur > prev + 1) {
                StreamWarning warn;
                warn.frame_index = prev + 1;
                warn.missing_frames = cur - prev - 1;
                warn.message = "frames " + std::to_string(prev + 1) + ".." +
                               std::to_string(cur - 1) +
                               " missing; treated as non-playing";
                out.warnings.push_back(std::move(warn));
            }
        }
    }
    out.frames = std::move(frames);
    return out;
}

} // namespace rallycut
