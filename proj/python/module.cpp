#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rallycut/fusion.hpp"
#include "rallycut/io.hpp"
#include "rallycut/merge.hpp"
#include "rallycut/metrics.hpp"
#include "rallycut/pipeline.hpp"
#include "rallycut/sim.hpp"
#include "rallycut/voting.hpp"

namespace py = pybind11;
using namespace rallycut;

namespace {

std::string segment_repr(const TimeSegment& seg) {
    return "TimeSegment(" + std::to_string(seg.start_s) + ", " + std::to_string(seg.end_s) + ")";
}

} // namespace

PYBIND11_MODULE(_rallycut, m) {
    m.doc() = "Deterministic sports-highlight segmentation: frame fusion, "
              "windowed voting, interval merging, rally metrics and a "
              "synthetic noise harness.";

    py::register_exception<Error>(m, "RallycutError");

    py::enum_<Mode>(m, "Mode")
        .value("Box", Mode::Box)
        .value("Pose", Mode::Pose);
    py::enum_<PoseOrdering>(m, "PoseOrdering")
        .value("InputOrder", PoseOrdering::InputOrder)
        .value("AreaDescending", PoseOrdering::AreaDescending);
    py::enum_<BoxLabel>(m, "BoxLabel")
        .value("Playing", BoxLabel::Playing)
        .value("NonPlaying", BoxLabel::NonPlaying);
    py::enum_<CutlistFormat>(m, "CutlistFormat")
        .value("Structured", CutlistFormat::Structured)
        .value("Tabular", CutlistFormat::Tabular);

    py::class_<FrameRate>(m, "FrameRate")
        .def(py::init<>())
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("num"), py::arg("den") = 1)
        .def_static("parse", &FrameRate::parse, py::arg("text"))
        .def_readonly("num", &FrameRate::num)
        .def_readonly("den", &FrameRate::den)
        .def("seconds", &FrameRate::seconds, py::arg("frames"))
        .def("frame_at", &FrameRate::frame_at, py::arg("seconds"))
        .def("as_double", &FrameRate::as_double)
        .def("__str__", &FrameRate::str)
        .def("__repr__", [](const FrameRate& f) { return "FrameRate(" + f.str() + ")"; })
        .def(py::self == py::self);

    py::class_<LabeledDetection>(m, "LabeledDetection")
        .def(py::init([](BoxLabel label, double confidence,
                         std::optional<std::array<double, 4>> bbox) {
                 LabeledDetection det;
                 det.label = label;
                 det.confidence = confidence;
                 det.bbox = bbox;
                 return det;
             }),
             py::arg("label"), py::arg("confidence"), py::arg("bbox") = std::nullopt)
        .def_readwrite("label", &LabeledDetection::label)
        .def_readwrite("confidence", &LabeledDetection::confidence)
        .def_readwrite("bbox", &LabeledDetection::bbox);

    py::class_<PoseObservation>(m, "PoseObservation")
        .def(py::init([](int person_index, bool playing, std::optional<double> area) {
                 PoseObservation pose;
                 pose.person_index = person_index;
                 pose.playing = playing;
                 pose.skeleton_area = area;
                 return pose;
             }),
             py::arg("person_index"), py::arg("playing"),
             py::arg("skeleton_area") = std::nullopt)
        .def_readwrite("person_index", &PoseObservation::person_index)
        .def_readwrite("playing", &PoseObservation::playing)
        .def_readwrite("skeleton_area", &PoseObservation::skeleton_area);

    py::class_<FrameRecord>(m, "FrameRecord")
        .def(py::init([](std::int64_t frame_index, std::vector<LabeledDetection> boxes,
                         std::vector<PoseObservation> poses) {
                 FrameRecord rec;
                 rec.frame_index = frame_index;
                 rec.boxes = std::move(boxes);
                 rec.poses = std::move(poses);
                 return rec;
             }),
             py::arg("frame_index"), py::arg("boxes") = std::vector<LabeledDetection>{},
             py::arg("poses") = std::vector<PoseObservation>{})
        .def_readwrite("frame_index", &FrameRecord::frame_index)
        .def_readwrite("boxes", &FrameRecord::boxes)
        .def_readwrite("poses", &FrameRecord::poses);

    py::class_<FrameDecision>(m, "FrameDecision")
        .def(py::init<std::int64_t, bool>(), py::arg("frame_index"), py::arg("playing"))
        .def_readwrite("frame_index", &FrameDecision::frame_index)
        .def_readwrite("playing", &FrameDecision::playing)
        .def(py::self == py::self)
        .def("__repr__", [](const FrameDecision& d) {
            return "FrameDecision(" + std::to_string(d.frame_index) + ", " +
                   (d.playing ? "True" : "False") + ")";
        });

    py::class_<TimeSegment>(m, "TimeSegment")
        .def(py::init<double, double>(), py::arg("start_s"), py::arg("end_s"))
        .def_readwrite("start_s", &TimeSegment::start_s)
        .def_readwrite("end_s", &TimeSegment::end_s)
        .def("duration", &TimeSegment::duration)
        .def(py::self == py::self)
        .def("__repr__", &segment_repr);

    py::class_<TimeSequence>(m, "TimeSequence")
        .def(py::init<>())
        .def(py::init<std::vector<TimeSegment>>(), py::arg("segments"))
        .def_property_readonly("segments", &TimeSequence::segments)
        .def("__len__", &TimeSequence::size)
        .def(
            "__iter__",
            [](const TimeSequence& seq) {
                return py::make_iterator(seq.begin(), seq.end());
            },
            py::keep_alive<0, 1>())
        .def(py::self == py::self)
        .def("__repr__", [](const TimeSequence& seq) {
            std::string out = "TimeSequence([";
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (i) out += ", ";
                out += segment_repr(seq.segments()[i]);
            }
            return out + "])";
        });

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("mode", &PipelineConfig::mode)
        .def_readwrite("fps", &PipelineConfig::fps)
        .def_readwrite("window_k", &PipelineConfig::window_k)
        .def_readwrite("vote_threshold", &PipelineConfig::vote_threshold)
        .def_readwrite("merge_gap_s", &PipelineConfig::merge_gap_s)
        .def_readwrite("player_count", &PipelineConfig::player_count)
        .def_readwrite("pose_ordering", &PipelineConfig::pose_ordering)
        .def("validate", &PipelineConfig::validate);

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("correctly_detected", &EvalReport::correctly_detected)
        .def_readonly("detected", &EvalReport::detected)
        .def_readonly("actual", &EvalReport::actual)
        .def_readonly("precision", &EvalReport::precision)
        .def_readonly("recall", &EvalReport::recall)
        .def_readonly("combined", &EvalReport::combined);

    py::class_<StreamWarning>(m, "StreamWarning")
        .def_readonly("frame_index", &StreamWarning::frame_index)
        .def_readonly("missing_frames", &StreamWarning::missing_frames)
        .def_readonly("message", &StreamWarning::message);

    py::class_<ValidatedStream>(m, "ValidatedStream")
        .def_readonly("mode", &ValidatedStream::mode)
        .def_readonly("frames", &ValidatedStream::frames)
        .def_readonly("warnings", &ValidatedStream::warnings);

    py::class_<GroundTruth>(m, "GroundTruth")
        .def(py::init<>())
        .def(py::init([](TimeSequence rallies) { return GroundTruth{std::move(rallies)}; }),
             py::arg("rallies"))
        .def_readwrite("rallies", &GroundTruth::rallies);

    py::class_<RallyMatch>(m, "RallyMatch")
        .def_readonly("detected_index", &RallyMatch::detected_index)
        .def_readonly("actual_index", &RallyMatch::actual_index)
        .def_readonly("overlap_s", &RallyMatch::overlap_s);

    py::class_<MatchResult>(m, "MatchResult")
        .def_readonly("matches", &MatchResult::matches)
        .def_readonly("correctly_detected", &MatchResult::correctly_detected);

    py::class_<SimParams>(m, "SimParams")
        .def(py::init<>())
        .def_readwrite("n_rallies", &SimParams::n_rallies)
        .def_readwrite("rally_min_s", &SimParams::rally_min_s)
        .def_readwrite("rally_max_s", &SimParams::rally_max_s)
        .def_readwrite("break_min_s", &SimParams::break_min_s)
        .def_readwrite("break_max_s", &SimParams::break_max_s)
        .def_readwrite("fps", &SimParams::fps)
        .def_readwrite("false_negative_rate", &SimParams::false_negative_rate)
        .def_readwrite("false_positive_rate", &SimParams::false_positive_rate)
        .def_readwrite("seed", &SimParams::seed);

    py::class_<SyntheticTruth>(m, "SyntheticTruth")
        .def_readonly("truth", &SyntheticTruth::truth)
        .def_readonly("frame_labels", &SyntheticTruth::frame_labels);

    py::class_<NoiseStudyCell>(m, "NoiseStudyCell")
        .def_readonly("error_rate", &NoiseStudyCell::error_rate)
        .def_readonly("window_k", &NoiseStudyCell::window_k)
        .def_readonly("vote_threshold", &NoiseStudyCell::vote_threshold)
        .def_readonly("merge_gap_s", &NoiseStudyCell::merge_gap_s)
        .def_readonly("trials", &NoiseStudyCell::trials)
        .def_readonly("frame_accuracy_mean", &NoiseStudyCell::frame_accuracy_mean)
        .def_readonly("precision_mean", &NoiseStudyCell::precision_mean)
        .def_readonly("precision_min", &NoiseStudyCell::precision_min)
        .def_readonly("recall_mean", &NoiseStudyCell::recall_mean)
        .def_readonly("recall_min", &NoiseStudyCell::recall_min)
        .def_readonly("combined_mean", &NoiseStudyCell::combined_mean)
        .def_readonly("combined_min", &NoiseStudyCell::combined_min);

    py::class_<NoiseStudyGrid>(m, "NoiseStudyGrid")
        .def(py::init<>())
        .def_readwrite("error_rates", &NoiseStudyGrid::error_rates)
        .def_readwrite("window_sizes", &NoiseStudyGrid::window_sizes)
        .def_readwrite("vote_thresholds", &NoiseStudyGrid::vote_thresholds)
        .def_readwrite("merge_gaps_s", &NoiseStudyGrid::merge_gaps_s)
        .def_readwrite("base", &NoiseStudyGrid::base)
        .def_readwrite("trials", &NoiseStudyGrid::trials)
        .def_readwrite("min_coverage", &NoiseStudyGrid::min_coverage);

    py::class_<FrameDecisionSummary>(m, "FrameDecisionSummary")
        .def_readonly("total", &FrameDecisionSummary::total)
        .def_readonly("playing", &FrameDecisionSummary::playing)
        .def_readonly("non_playing", &FrameDecisionSummary::non_playing)
        .def_readonly("gap_filled", &FrameDecisionSummary::gap_filled);

    py::class_<HighlightResult>(m, "HighlightResult")
        .def_readonly("config", &HighlightResult::config)
        .def_readonly("initial_sequence", &HighlightResult::initial_sequence)
        .def_readonly("final_sequence", &HighlightResult::final_sequence)
        .def_readonly("decisions", &HighlightResult::decisions)
        .def_readonly("first_frame", &HighlightResult::first_frame)
        .def_readonly("last_frame", &HighlightResult::last_frame)
        .def_readonly("duration_before_s", &HighlightResult::duration_before_s)
        .def_readonly("duration_after_s", &HighlightResult::duration_after_s)
        .def_readonly("eval", &HighlightResult::eval);

    // core-model
    m.def("validate_stream", &validate_stream, py::arg("frames"), py::arg("mode"));

    // frame fusion
    m.def(
        "fuse_box_frame",
        [](const std::vector<LabeledDetection>& detections) {
            return fuse_box_frame(detections);
        },
        py::arg("detections"));
    m.def(
        "fuse_pose_frame",
        [](const std::vector<PoseObservation>& poses, const PipelineConfig& config) {
            return fuse_pose_frame(poses, config);
        },
        py::arg("poses"), py::arg("config"));
    m.def("fuse_frame", &fuse_frame, py::arg("record"), py::arg("config"));
    m.def("fuse_stream", &fuse_stream, py::arg("stream"), py::arg("config"));

    // temporal voting
    m.def(
        "partition_windows",
        [](const std::vector<FrameDecision>& decisions, int window_k) {
            std::vector<std::vector<FrameDecision>> out;
            for (const auto window : partition_windows(decisions, window_k)) {
                out.emplace_back(window.begin(), window.end());
            }
            return out;
        },
        py::arg("decisions"), py::arg("window_k"));
    m.def(
        "vote_window",
        [](const std::vector<FrameDecision>& window, double vote_threshold) {
            return vote_window(window, vote_threshold);
        },
        py::arg("window"), py::arg("vote_threshold"));
    m.def("extract_segments", &extract_segments, py::arg("window_votes"), py::arg("window_k"),
          py::arg("fps"), py::arg("total_frames"));
    m.def(
        "initial_segments",
        [](const std::vector<FrameDecision>& decisions, const PipelineConfig& config) {
            return initial_segments(decisions, config);
        },
        py::arg("decisions"), py::arg("config"));

    // segment merging
    m.def("merge_segments", &merge_segments, py::arg("seq"), py::arg("merge_gap_s"));
    m.def("total_duration", &total_duration, py::arg("seq"));

    // metrics
    m.def(
        "match_rallies",
        [](const std::vector<TimeSegment>& detected, const GroundTruth& actual,
           double min_coverage) { return match_rallies(detected, actual, min_coverage); },
        py::arg("detected"), py::arg("actual"), py::arg("min_coverage") = 0.5);
    m.def("evaluate", &evaluate, py::arg("correctly_detected"), py::arg("detected"),
          py::arg("actual"));
    m.def("compression_ratio", &compression_ratio, py::arg("before_s"), py::arg("after_s"));
    m.def("rounded_percent", &rounded_percent, py::arg("fraction"));

    // simulation harness
    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("stream"));
    m.def("generate_ground_truth", &generate_ground_truth, py::arg("params"));
    m.def("corrupt_labels", &corrupt_labels, py::arg("labels"), py::arg("false_negative_rate"),
          py::arg("false_positive_rate"), py::arg("seed"));
    m.def(
        "brute_force_segments",
        [](const std::vector<FrameDecision>& decisions, const PipelineConfig& config) {
            return brute_force_segments(decisions, config);
        },
        py::arg("decisions"), py::arg("config"));
    m.def("run_noise_study", &run_noise_study, py::arg("grid"),
          py::call_guard<py::gil_scoped_release>());

    // pipeline
    m.def("run_pipeline", &run_pipeline, py::arg("stream"), py::arg("config"),
          py::arg("truth") = std::nullopt, py::arg("min_coverage") = 0.5);

    // io
    m.def("load_detection_stream", &load_detection_stream, py::arg("path"), py::arg("mode"));
    m.def(
        "parse_detection_stream_text",
        [](const std::string& text, Mode mode, const std::string& name) {
            std::istringstream in(text);
            return parse_detection_stream(in, mode, name);
        },
        py::arg("text"), py::arg("mode"), py::arg("name") = "<string>");
    m.def("load_ground_truth", &load_ground_truth, py::arg("path"));
    m.def("render_cutlist", &render_cutlist, py::arg("seq"), py::arg("fps"), py::arg("format"));
    m.def("write_cutlist", &write_cutlist, py::arg("path"), py::arg("seq"), py::arg("fps"),
          py::arg("format"));
    m.def("read_cutlist", &read_cutlist, py::arg("path"));
    m.def(
        "parse_cutlist_text",
        [](const std::string& text, const std::string& name) {
            std::istringstream in(text);
            return parse_cutlist(in, name);
        },
        py::arg("text"), py::arg("name") = "<string>");
    m.def("quantize_ms", &quantize_ms, py::arg("seconds"));
    m.def("render_trim_script", &render_trim_script, py::arg("result"),
          py::arg("source_video_path"));
    m.def(
        "render_study_csv",
        [](const std::vector<NoiseStudyCell>& cells) { return render_study_csv(cells); },
        py::arg("cells"));

    m.attr("__version__") = "0.1.0";
}
