#ifndef RALLYCUT_IO_HPP
#define RALLYCUT_IO_HPP

#include <istream>
#include <optional>
#include <span>
#include <string>

#include "rallycut/pipeline.hpp"
#include "rallycut/sim.hpp"
#include "rallycut/types.hpp"

namespace rallycut {

// ── detection streams ────────────────────────────────────────────────
//
// One JSON record per line:
//   {"frame": 0, "boxes": [{"label": "playing", "conf": 0.93, "bbox": [x,y,w,h]}]}
//   {"frame": 0, "poses": [{"idx": 0, "playing": true, "area": 10400.0}]}
// An optional first line {"format": "rallycut-detections", "version": 1,
// "mode": "box"} identifies the file. Diagnostics carry line numbers.

ValidatedStream parse_detection_stream(std::istream& in, Mode mode,
                                       const std::string& name = "<stream>");
ValidatedStream load_detection_stream(const std::string& path, Mode mode);

// ── ground truth ─────────────────────────────────────────────────────
//
// One rally per line as "start_s,end_s" decimal seconds. Blank lines,
// "#" comments and a literal "start_s,end_s" column header are skipped.

GroundTruth parse_ground_truth(std::istream& in, const std::string& name = "<stream>");
GroundTruth load_ground_truth(const std::string& path);

// ── cut lists ────────────────────────────────────────────────────────
//
// Tabular: "#rallycut-cutlist v=1 fps=N/D cols=..." header line, then
// "start_s,end_s,start_frame,end_frame" CSV rows at millisecond
// precision. Structured: one JSON document with the same fields.

enum class CutlistFormat { Structured, Tabular };

std::string render_cutlist(const TimeSequence& seq, FrameRate fps, CutlistFormat format);
void write_cutlist(const std::string& path, const TimeSequence& seq, FrameRate fps,
                   CutlistFormat format);
TimeSequence parse_cutlist(std::istream& in, const std::string& name = "<stream>");
TimeSequence read_cutlist(const std::string& path);

/// Millisecond quantization applied to every timestamp a cut list stores.
double quantize_ms(double seconds);

// ── trim script ──────────────────────────────────────────────────────

/// Shell script text that extracts every final segment from the source
/// video with ffmpeg and concatenates the clips. Never executed here;
/// paths are shell-quoted.
std::string render_trim_script(const HighlightResult& result,
                               const std::string& source_video_path);

// ── reports ──────────────────────────────────────────────────────────

struct EvalRow {
    std::string name;
    std::optional<double> duration_before_s;
    std::optional<double> duration_after_s;
    std::optional<std::int64_t> frames;
    EvalReport report;
};

std::string render_eval_table(std::span<const EvalRow> rows);
std::string render_eval_json(std::span<const EvalRow> rows);

std::string render_study_csv(std::span<const NoiseStudyCell> cells);
std::string render_study_table(std::span<const NoiseStudyCell> cells);

void write_text_file(const std::string& path, const std::string& content);

} // namespace rallycut

#endif
