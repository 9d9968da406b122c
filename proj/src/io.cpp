#include "rallycut/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rallycut {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void parse_fail(const std::string& name, std::size_t line,
                             const std::string& why) {
    throw Error(ErrorCode::ParseError, name + ":" + std::to_string(line) + ": " + why);
}

std::string ms_string(double seconds) {
    const long long ms = std::llround(seconds * 1000.0);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%lld.%03lld", ms / 1000, ms % 1000);
    return buf;
}

double require_probability(const json& j, const char* field, const std::string& name,
                           std::size_t line) {
    if (!j.contains(field) || !j[field].is_number()) {
        parse_fail(name, line, std::string("missing or non-numeric '") + field + "'");
    }
    const double value = j[field].get<double>();
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "'" << field << "' out of range [0, 1]: " << value;
        parse_fail(name, line, msg.str());
    }
    return value;
}

LabeledDetection parse_box(const json& j, const std::string& name, std::size_t line) {
    if (!j.is_object()) parse_fail(name, line, "box entry is not an object");
    LabeledDetection det;
    if (!j.contains("label") || !j["label"].is_string()) {
        parse_fail(name, line, "box missing 'label'");
    }
    const std::string label = j["label"].get<std::string>();
    if (label == "playing") {
        det.label = BoxLabel::Playing;
    } else if (label == "non_playing") {
        det.label = BoxLabel::NonPlaying;
    } else {
        parse_fail(name, line, "'label' must be \"playing\" or \"non_playing\", got \"" +
                                   label + "\"");
    }
    det.confidence = require_probability(j, "conf", name, line);
    if (j.contains("bbox")) {
        const auto& bbox = j["bbox"];
        if (!bbox.is_array() || bbox.size() != 4 ||
            !std::all_of(bbox.begin(), bbox.end(), [](const json& v) { return v.is_number(); })) {
            parse_fail(name, line, "'bbox' must be an array of 4 numbers");
        }
        std::array<double, 4> rect{};
        for (std::size_t i = 0; i < 4; ++i) rect[i] = bbox[i].get<double>();
        if (rect[2] < 0.0 || rect[3] < 0.0) {
            parse_fail(name, line, "'bbox' has negative width or height");
        }
        det.bbox = rect;
    }
    return det;
}

PoseObservation parse_pose(const json& j, const std::string& name, std::size_t line) {
    if (!j.is_object()) parse_fail(name, line, "pose entry is not an object");
    PoseObservation pose;
    if (!j.contains("idx") || !j["idx"].is_number_integer() || j["idx"].get<std::int64_t>() < 0) {
        parse_fail(name, line, "pose missing nonnegative integer 'idx'");
    }
    pose.person_index = j["idx"].get<int>();
    if (!j.contains("playing") || !j["playing"].is_boolean()) {
        parse_fail(name, line, "pose missing boolean 'playing'");
    }
    pose.playing = j["playing"].get<bool>();
    if (j.contains("area") && !j["area"].is_null()) {
        if (!j["area"].is_number() || j["area"].get<double>() < 0.0) {
            parse_fail(name, line, "'area' must be a nonnegative number");
        }
        pose.skeleton_area = j["area"].get<double>();
    }
    return pose;
}

void check_header(const json& j, Mode mode, const std::string& name, std::size_t line,
                  bool first_record) {
    if (!first_record) {
        parse_fail(name, line, "header record allowed only before any data record");
    }
    if (!j["format"].is_string() || j["format"].get<std::string>() != "rallycut-detections") {
        parse_fail(name, line, "unexpected format value in header");
    }
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() > kFormatVersion) {
        parse_fail(name, line, "unsupported detection stream version");
    }
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) parse_fail(name, line, "'mode' must be a string");
        const std::string file_mode = j["mode"].get<std::string>();
        const std::string want = mode == Mode::Box ? "box" : "pose";
        if (file_mode != want) {
            throw Error(ErrorCode::ModeMismatch,
                        name + ":" + std::to_string(line) + ": file declares mode \"" +
                            file_mode + "\" but \"" + want + "\" was requested");
        }
    }
}

} // namespace

ValidatedStream parse_detection_stream(std::istream& in, Mode mode, const std::string& name) {
    std::vector<FrameRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool seen_record = false;
    std::int64_t prev_index = -1;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            parse_fail(name, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) parse_fail(name, line_no, "record is not a JSON object");

        if (j.contains("format")) {
            check_header(j, mode, name, line_no, !seen_record);
            continue;
        }

        if (!j.contains("frame") || !j["frame"].is_number_integer() ||
            j["frame"].get<std::int64_t>() < 0) {
            parse_fail(name, line_no, "missing nonnegative integer 'frame'");
        }

        FrameRecord record;
        record.frame_index = j["frame"].get<std::int64_t>();
        try {
            if (j.contains("boxes")) {
                if (!j["boxes"].is_array()) {
                    parse_fail(name, line_no, "'boxes' must be an array");
                }
                for (const auto& entry : j["boxes"]) {
                    record.boxes.push_back(parse_box(entry, name, line_no));
                }
            }
            if (j.contains("poses")) {
                if (!j["poses"].is_array()) {
                    parse_fail(name, line_no, "'poses' must be an array");
                }
                for (const auto& entry : j["poses"]) {
                    record.poses.push_back(parse_pose(entry, name, line_no));
                }
            }
        } catch (const json::exception& e) {
            parse_fail(name, line_no, std::string("bad field type: ") + e.what());
        }

        const std::string at = name + ":" + std::to_string(line_no);
        if (!record.boxes.empty() && !record.poses.empty()) {
            throw Error(ErrorCode::MixedMode, at + ": both boxes and poses populated");
        }
        if (mode == Mode::Box && !record.poses.empty()) {
            throw Error(ErrorCode::ModeMismatch, at + ": pose record in box mode");
        }
        if (mode == Mode::Pose && !record.boxes.empty()) {
            throw Error(ErrorCode::ModeMismatch, at + ": box record in pose mode");
        }
        if (record.frame_index <= prev_index) {
            throw Error(ErrorCode::NonMonotonicIndex,
                        at + ": frame " + std::to_string(record.frame_index) +
                            " follows frame " + std::to_string(prev_index));
        }
        prev_index = record.frame_index;
        seen_record = true;
        records.push_back(std::move(record));
    }

    if (records.empty()) {
        throw Error(ErrorCode::EmptyStream, name + ": no detection records");
    }
    try {
        return validate_stream(std::move(records), mode);
    } catch (const Error& e) {
        throw Error(e.code(), name + ": " + e.message());
    }
}

ValidatedStream load_detection_stream(const std::string& path, Mode mode) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return parse_detection_stream(in, mode, path);
}

GroundTruth parse_ground_truth(std::istream& in, const std::string& name) {
    std::vector<TimeSegment> rallies;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string body = line.substr(start, end - start + 1);
        if (body[0] == '#' || body == "start_s,end_s") continue;

        const auto comma = body.find(',');
        if (comma == std::string::npos) {
            parse_fail(name, line_no, "expected \"start_s,end_s\"");
        }
        TimeSegment seg;
        try {
            std::size_t n1 = 0, n2 = 0;
            seg.start_s = std::stod(body.substr(0, comma), &n1);
            seg.end_s = std::stod(body.substr(comma + 1), &n2);
            if (n1 != comma || n2 != body.size() - comma - 1) {
                parse_fail(name, line_no, "trailing characters after numbers");
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            parse_fail(name, line_no, "not a pair of numbers: \"" + body + "\"");
        }
        if (!(seg.start_s >= 0.0) || !(seg.start_s < seg.end_s)) {
            parse_fail(name, line_no, "rally must satisfy 0 <= start_s < end_s");
        }
        rallies.push_back(seg);
    }
    try {
        return GroundTruth{TimeSequence(std::move(rallies))};
    } catch (const Error& e) {
        throw Error(e.code(), name + ": " + e.message());
    }
}

GroundTruth load_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return parse_ground_truth(in, path);
}

double quantize_ms(double seconds) {
    return static_cast<double>(std::llround(seconds * 1000.0)) / 1000.0;
}

std::string render_cutlist(const TimeSequence& seq, FrameRate fps, CutlistFormat format) {
    if (format == CutlistFormat::Tabular) {
        std::string out = "#rallycut-cutlist v=1 fps=" + fps.str() +
                          " cols=start_s,end_s,start_frame,end_frame\n";
        for (const auto& seg : seq) {
            const double start = quantize_ms(seg.start_s);
            const double end = quantize_ms(seg.end_s);
            out += ms_string(start) + "," + ms_string(end) + "," +
                   std::to_string(fps.frame_at(start)) + "," +
                   std::to_string(fps.frame_at(end)) + "\n";
        }
        return out;
    }

    json doc;
    doc["format"] = "rallycut-cutlist";
    doc["version"] = kFormatVersion;
    doc["fps"] = fps.str();
    doc["segments"] = json::array();
    for (const auto& seg : seq) {
        const double start = quantize_ms(seg.start_s);
        const double end = quantize_ms(seg.end_s);
        doc["segments"].push_back({{"start_s", start},
                                   {"end_s", end},
                                   {"start_frame", fps.frame_at(start)},
                                   {"end_frame", fps.frame_at(end)}});
    }
    return doc.dump(2) + "\n";
}

void write_cutlist(const std::string& path, const TimeSequence& seq, FrameRate fps,
                   CutlistFormat format) {
    write_text_file(path, render_cutlist(seq, fps, format));
}

namespace {

TimeSequence parse_tabular_cutlist(std::istream& in, const std::string& name) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("#rallycut-cutlist", 0) != 0) {
        parse_fail(name, 1, "missing #rallycut-cutlist header");
    }
    std::istringstream tokens(header);
    std::string token;
    tokens >> token; // format tag
    bool version_ok = false;
    while (tokens >> token) {
        if (token.rfind("v=", 0) == 0) {
            version_ok = token.substr(2) == std::to_string(kFormatVersion);
        }
    }
    if (!version_ok) parse_fail(name, 1, "unsupported cut list version");

    std::vector<TimeSegment> segments;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        std::string start_field, end_field;
        if (!std::getline(fields, start_field, ',') || !std::getline(fields, end_field, ',')) {
            parse_fail(name, line_no, "expected at least start_s,end_s");
        }
        try {
            segments.push_back(TimeSegment{std::stod(start_field), std::stod(end_field)});
        } catch (const std::exception&) {
            parse_fail(name, line_no, "not a numeric row: \"" + line + "\"");
        }
    }
    return TimeSequence(std::move(segments));
}

TimeSequence parse_structured_cutlist(std::istream& in, const std::string& name) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        parse_fail(name, 1, std::string("invalid JSON: ") + e.what());
    }
    std::vector<TimeSegment> segments;
    try {
        if (!doc.is_object() || doc.value("format", "") != "rallycut-cutlist") {
            parse_fail(name, 1, "not a rallycut-cutlist document");
        }
        if (doc.value("version", 0) != kFormatVersion) {
            parse_fail(name, 1, "unsupported cut list version");
        }
        if (!doc.contains("segments") || !doc["segments"].is_array()) {
            parse_fail(name, 1, "missing 'segments' array");
        }
        for (const auto& seg : doc["segments"]) {
            if (!seg.is_object() || !seg.contains("start_s") || !seg.contains("end_s") ||
                !seg["start_s"].is_number() || !seg["end_s"].is_number()) {
                parse_fail(name, 1, "segment missing numeric start_s/end_s");
            }
            segments.push_back(
                TimeSegment{seg["start_s"].get<double>(), seg["end_s"].get<double>()});
        }
    } catch (const json::exception& e) {
        parse_fail(name, 1, std::string("bad field type: ") + e.what());
    }
    return TimeSequence(std::move(segments));
}

} // namespace

TimeSequence parse_cutlist(std::istream& in, const std::string& name) {
    // sniff the first non-space character to pick the format
    char c = 0;
    while (in.get(c) && std::isspace(static_cast<unsigned char>(c))) {
    }
    if (!in) {
        throw Error(ErrorCode::ParseError, name + ": empty cut list");
    }
    in.unget();
    try {
        if (c == '{') return parse_structured_cutlist(in, name);
        if (c == '#') return parse_tabular_cutlist(in, name);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidSequence) {
            throw Error(e.code(), name + ": " + e.message());
        }
        throw;
    }
    throw Error(ErrorCode::ParseError, name + ": unrecognized cut list format");
}

TimeSequence read_cutlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return parse_cutlist(in, path);
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string quoted = "'";
    for (const char c : s) {
        if (c == '\'') {
            quoted += "'\\''";
        } else {
            quoted += c;
        }
    }
    quoted += "'";
    return quoted;
}

std::string sanitized_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    for (char& c : base) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-') {
            c = '_';
        }
    }
    return base.empty() ? std::string("video") : base;
}

} // namespace

std::string render_trim_script(const HighlightResult& result,
                               const std::string& source_video_path) {
    std::ostringstream script;
    script << "#!/bin/sh\n";
    script << "# generated by rallycut: extracts playing segments and joins them\n";

    const auto& segments = result.final_sequence.segments();
    if (segments.empty()) {
        script << "echo 'no playing segments detected; nothing to clip'\n";
        return script.str();
    }

    const std::string stem = sanitized_stem(source_video_path);
    script << "set -e\n";

    std::vector<std::string> clips;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const double start = quantize_ms(segments[i].start_s);
        const double duration = quantize_ms(segments[i].end_s) - start;
        char clip_name[256];
        std::snprintf(clip_name, sizeof(clip_name), "%s_clip_%03zu.mp4", stem.c_str(), i + 1);
        clips.emplace_back(clip_name);
        script << "ffmpeg -nostdin -y -ss " << ms_string(start) << " -t "
               << ms_string(duration) << " -i " << shell_quote(source_video_path)
               << " -c copy " << shell_quote(clip_name) << "\n";
    }

    const std::string list_name = stem + "_concat.txt";
    script << "cat > " << shell_quote(list_name) << " <<'RALLYCUT_CONCAT'\n";
    for (const auto& clip : clips) {
        script << "file '" << clip << "'\n";
    }
    script << "RALLYCUT_CONCAT\n";
    script << "ffmpeg -nostdin -y -f concat -safe 0 -i " << shell_quote(list_name)
           << " -c copy " << shell_quote(stem + "_highlights.mp4") << "\n";
    return script.str();
}

namespace {

std::string fmt_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string fmt_compact(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

} // namespace

std::string render_eval_table(std::span<const EvalRow> rows) {
    std::size_t name_width = 5;
    for (const auto& row : rows) name_width = std::max(name_width, row.name.size());

    std::ostringstream out;
    char line[512];
    std::snprintf(line, sizeof(line), "%-*s %10s %10s %6s %8s %9s %7s %5s %5s %5s\n",
                  static_cast<int>(name_width), "video", "before_s", "after_s", "kept",
                  "correct", "detected", "actual", "P", "R", "C");
    out << line;
    for (const auto& row : rows) {
        const std::string before =
            row.duration_before_s ? fmt_fixed(*row.duration_before_s, 1) : "-";
        const std::string after =
            row.duration_after_s ? fmt_fixed(*row.duration_after_s, 1) : "-";
        const std::string kept =
            row.duration_before_s && row.duration_after_s && *row.duration_before_s > 0.0
                ? std::to_string(rounded_percent(
                      compression_ratio(*row.duration_before_s, *row.duration_after_s))) + "%"
                : "-";
        std::snprintf(line, sizeof(line),
                      "%-*s %10s %10s %6s %8lld %9lld %7lld %4d%% %4d%% %4d%%\n",
                      static_cast<int>(name_width), row.name.c_str(), before.c_str(),
                      after.c_str(), kept.c_str(),
                      static_cast<long long>(row.report.correctly_detected),
                      static_cast<long long>(row.report.detected),
                      static_cast<long long>(row.report.actual),
                      rounded_percent(row.report.precision),
                      rounded_percent(row.report.recall),
                      rounded_percent(row.report.combined));
        out << line;
    }
    return out.str();
}

std::string render_eval_json(std::span<const EvalRow> rows) {
    json doc;
    doc["format"] = "rallycut-eval";
    doc["version"] = kFormatVersion;
    doc["rows"] = json::array();
    for (const auto& row : rows) {
        json r;
        r["name"] = row.name;
        if (row.duration_before_s) r["duration_before_s"] = *row.duration_before_s;
        if (row.duration_after_s) r["duration_after_s"] = *row.duration_after_s;
        if (row.duration_before_s && row.duration_after_s && *row.duration_before_s > 0.0) {
            r["kept_fraction"] = compression_ratio(*row.duration_before_s,
                                                   *row.duration_after_s);
        }
        if (row.frames) r["frames"] = *row.frames;
        r["correctly_detected"] = row.report.correctly_detected;
        r["detected"] = row.report.detected;
        r["actual"] = row.report.actual;
        r["precision"] = row.report.precision;
        r["recall"] = row.report.recall;
        r["combined"] = row.report.combined;
        r["precision_pct"] = rounded_percent(row.report.precision);
        r["recall_pct"] = rounded_percent(row.report.recall);
        r["combined_pct"] = rounded_percent(row.report.combined);
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

std::string render_study_csv(std::span<const NoiseStudyCell> cells) {
    std::string out =
        "#rallycut-study v=1 cols=error_rate,window_k,vote_threshold,merge_gap_s,trials,"
        "frame_accuracy_mean,precision_mean,precision_min,recall_mean,recall_min,"
        "combined_mean,combined_min\n";
    for (const auto& cell : cells) {
        out += fmt_compact(cell.error_rate) + "," + std::to_string(cell.window_k) + "," +
               fmt_compact(cell.vote_threshold) + "," + fmt_compact(cell.merge_gap_s) + "," +
               std::to_string(cell.trials) + "," + fmt_fixed(cell.frame_accuracy_mean, 6) +
               "," + fmt_fixed(cell.precision_mean, 6) + "," +
               fmt_fixed(cell.precision_min, 6) + "," + fmt_fixed(cell.recall_mean, 6) + "," +
               fmt_fixed(cell.recall_min, 6) + "," + fmt_fixed(cell.combined_mean, 6) + "," +
               fmt_fixed(cell.combined_min, 6) + "\n";
    }
    return out;
}

std::string render_study_table(std::span<const NoiseStudyCell> cells) {
    std::ostringstream out;
    char line[512];
    std::snprintf(line, sizeof(line), "%7s %4s %6s %6s %7s %10s %7s %7s %7s %7s %7s %7s\n",
                  "error", "k", "thresh", "gap_s", "trials", "frame_acc", "P_mean", "P_min",
                  "R_mean", "R_min", "C_mean", "C_min");
    out << line;
    for (const auto& cell : cells) {
        std::snprintf(line, sizeof(line),
                      "%7s %4d %6s %6s %7d %10.4f %7.4f %7.4f %7.4f %7.4f %7.4f %7.4f\n",
                      fmt_compact(cell.error_rate).c_str(), cell.window_k,
                      fmt_compact(cell.vote_threshold).c_str(),
                      fmt_compact(cell.merge_gap_s).c_str(), cell.trials,
                      cell.frame_accuracy_mean, cell.precision_mean, cell.precision_min,
                      cell.recall_mean, cell.recall_min, cell.combined_mean,
                      cell.combined_min);
        out << line;
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

} // namespace rallycut
