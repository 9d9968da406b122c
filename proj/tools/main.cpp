#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rallycut/io.hpp"
#include "rallycut/merge.hpp"
#include "rallycut/metrics.hpp"
#include "rallycut/pipeline.hpp"
#include "rallycut/sim.hpp"

namespace {

using namespace rallycut;

struct ClipOptions {
    std::vector<std::string> inputs;
    std::string mode = "box";
    std::string fps;
    int window_k = 25;
    double vote_threshold = 0.5;
    double merge_gap_s = 1.0;
    std::string pose_order = "input";
    int players = 2;
    std::string gt_path;
    std::string cutlist_path;
    std::string script_path;
    std::string format = "tabular";
    std::string video_path;
    double min_coverage = 0.5;
};

Mode parse_mode(const std::string& text) {
    if (text == "box") return Mode::Box;
    if (text == "pose") return Mode::Pose;
    throw Error(ErrorCode::InvalidConfig, "mode must be 'box' or 'pose', got '" + text + "'");
}

PoseOrdering parse_pose_order(const std::string& text) {
    if (text == "input") return PoseOrdering::InputOrder;
    if (text == "area") return PoseOrdering::AreaDescending;
    throw Error(ErrorCode::InvalidConfig,
                "pose order must be 'input' or 'area', got '" + text + "'");
}

CutlistFormat parse_format(const std::string& text) {
    if (text == "structured") return CutlistFormat::Structured;
    if (text == "tabular") return CutlistFormat::Tabular;
    throw Error(ErrorCode::InvalidConfig,
                "format must be 'structured' or 'tabular', got '" + text + "'");
}

std::string input_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    return base;
}

// With several inputs, per-input output files get the input stem
// spliced in before the extension ("out.csv" -> "out.video1.csv").
std::string derived_output_path(const std::string& tmpl, const std::string& input,
                                bool multiple) {
    if (!multiple) return tmpl;
    const std::string stem = input_stem(input);
    const auto slash = tmpl.find_last_of("/\\");
    const auto dot = tmpl.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return tmpl + "." + stem;
    }
    return tmpl.substr(0, dot) + "." + stem + tmpl.substr(dot);
}

std::string describe_config(const PipelineConfig& config) {
    std::ostringstream out;
    out << "mode " << (config.mode == Mode::Box ? "box" : "pose") << "  fps "
        << config.fps.str() << "  window " << config.window_k << "  threshold "
        << config.vote_threshold << "  merge-gap " << config.merge_gap_s;
    if (config.mode == Mode::Pose) {
        out << "  players " << config.player_count << "  pose-order "
            << (config.pose_ordering == PoseOrdering::InputOrder ? "input" : "area");
    }
    return out.str();
}

std::string process_clip_input(const std::string& input, const ClipOptions& opt,
                               const PipelineConfig& config,
                               const std::optional<GroundTruth>& truth, bool multiple) {
    const ValidatedStream stream = load_detection_stream(input, config.mode);
    const HighlightResult result = run_pipeline(stream, config, truth, opt.min_coverage);

    std::ostringstream out;
    out << "== " << input << "\n";
    out << describe_config(config) << "\n";
    for (const auto& warning : stream.warnings) {
        out << "  warning: " << warning.message << "\n";
    }
    out << "frames " << result.decisions.total << " (playing " << result.decisions.playing
        << ", gap-filled " << result.decisions.gap_filled << "), records "
        << stream.frames.size() << "\n";
    out << "initial segments " << result.initial_sequence.size() << ", final segments "
        << result.final_sequence.size() << "\n";
    char durations[160];
    std::snprintf(durations, sizeof(durations), "duration %.3f s -> %.3f s (kept %d%%)\n",
                  result.duration_before_s, result.duration_after_s,
                  result.duration_before_s > 0.0
                      ? rounded_percent(compression_ratio(result.duration_before_s,
                                                          result.duration_after_s))
                      : 0);
    out << durations;

    if (result.eval) {
        EvalRow row;
        row.name = input_stem(input);
        row.duration_before_s = result.duration_before_s;
        row.duration_after_s = result.duration_after_s;
        row.frames = result.decisions.total;
        row.report = *result.eval;
        out << render_eval_table({&row, 1});
    }

    if (!opt.cutlist_path.empty()) {
        const std::string path = derived_output_path(opt.cutlist_path, input, multiple);
        write_cutlist(path, result.final_sequence, config.fps, parse_format(opt.format));
        out << "cutlist -> " << path << "\n";
    }
    if (!opt.script_path.empty()) {
        const std::string path = derived_output_path(opt.script_path, input, multiple);
        write_text_file(path, render_trim_script(result, opt.video_path));
        out << "script -> " << path << "\n";
    }
    return out.str();
}

int run_clip(const ClipOptions& opt) {
    PipelineConfig config;
    config.mode = parse_mode(opt.mode);
    config.fps = FrameRate::parse(opt.fps);
    config.window_k = opt.window_k;
    config.vote_threshold = opt.vote_threshold;
    config.merge_gap_s = opt.merge_gap_s;
    config.player_count = opt.players;
    config.pose_ordering = parse_pose_order(opt.pose_order);
    config.validate();

    std::optional<GroundTruth> truth;
    if (!opt.gt_path.empty()) truth = load_ground_truth(opt.gt_path);

    const bool multiple = opt.inputs.size() > 1;
    if (!opt.script_path.empty()) {
        if (opt.video_path.empty()) {
            throw Error(ErrorCode::InvalidConfig, "--emit-script requires --video");
        }
        if (multiple) {
            throw Error(ErrorCode::InvalidConfig,
                        "--emit-script supports a single input (one --video source)");
        }
    }

    // inputs run concurrently; reports print in input order
    std::vector<std::future<std::string>> reports;
    reports.reserve(opt.inputs.size());
    for (const auto& input : opt.inputs) {
        reports.push_back(std::async(std::launch::async, [&, input] {
            return process_clip_input(input, opt, config, truth, multiple);
        }));
    }
    for (auto& report : reports) {
        std::cout << report.get();
    }
    return 0;
}

struct EvalOptions {
    std::vector<long long> counts;
    std::string detected_path;
    std::string gt_path;
    double min_coverage = 0.5;
    std::string out_path;
};

int run_eval(const EvalOptions& opt) {
    EvalRow row;
    if (!opt.counts.empty()) {
        if (opt.counts.size() != 3) {
            throw Error(ErrorCode::InvalidConfig,
                        "--counts wants exactly correctly_detected,detected,actual");
        }
        row.name = "counts";
        row.report = evaluate(opt.counts[0], opt.counts[1], opt.counts[2]);
    } else if (!opt.detected_path.empty() && !opt.gt_path.empty()) {
        const TimeSequence detected = read_cutlist(opt.detected_path);
        const GroundTruth truth = load_ground_truth(opt.gt_path);
        const MatchResult matched =
            match_rallies(detected.segments(), truth, opt.min_coverage);
        row.name = input_stem(opt.detected_path);
        row.duration_after_s = total_duration(detected);
        row.report = evaluate(matched.correctly_detected,
                              static_cast<std::int64_t>(detected.size()),
                              static_cast<std::int64_t>(truth.rallies.size()));
    } else {
        throw Error(ErrorCode::InvalidConfig,
                    "eval needs either --counts or both --detected and --gt");
    }

    std::cout << render_eval_table({&row, 1});
    if (!opt.out_path.empty()) {
        write_text_file(opt.out_path, render_eval_json({&row, 1}));
        std::cout << "report -> " << opt.out_path << "\n";
    }
    return 0;
}

struct SimulateOptions {
    std::vector<double> error_rates{0.05, 0.1, 0.2, 0.3};
    std::vector<int> windows{25};
    std::vector<double> thresholds{0.5};
    std::vector<double> merge_gaps{1.0};
    int trials = 100;
    std::uint64_t seed = 42;
    int rallies = 10;
    std::string rally_len = "3:15";
    std::string break_len = "5:30";
    std::string fps = "25";
    double min_coverage = 0.5;
    std::string out_path;
};

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorCode::InvalidConfig,
                    std::string(what) + " wants \"min:max\", got '" + text + "'");
    }
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidConfig,
                    std::string(what) + " wants \"min:max\", got '" + text + "'");
    }
}

int run_simulate(const SimulateOptions& opt) {
    NoiseStudyGrid grid;
    grid.error_rates = opt.error_rates;
    grid.window_sizes = opt.windows;
    grid.vote_thresholds = opt.thresholds;
    grid.merge_gaps_s = opt.merge_gaps;
    grid.trials = opt.trials;
    grid.min_coverage = opt.min_coverage;
    grid.base.n_rallies = opt.rallies;
    std::tie(grid.base.rally_min_s, grid.base.rally_max_s) =
        parse_range(opt.rally_len, "--rally-len");
    std::tie(grid.base.break_min_s, grid.base.break_max_s) =
        parse_range(opt.break_len, "--break-len");
    grid.base.fps = FrameRate::parse(opt.fps);
    grid.base.seed = opt.seed;

    const std::vector<NoiseStudyCell> cells = run_noise_study(grid);
    std::cout << render_study_table(cells);
    if (!opt.out_path.empty()) {
        write_text_file(opt.out_path, render_study_csv(cells));
        std::cout << "study -> " << opt.out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rallycut - turn per-frame detector records into highlight cut lists"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "rallycut 0.1.0");

    ClipOptions clip_opt;
    CLI::App* clip = app.add_subcommand("clip", "run the full segmentation pipeline");
    clip->add_option("inputs", clip_opt.inputs, "detection stream files (JSON lines)")
        ->required();
    clip->add_option("--mode", clip_opt.mode, "box|pose")->capture_default_str();
    clip->add_option("--fps", clip_opt.fps, "frame rate, e.g. 25, 29.97 or 30000/1001")
        ->required();
    clip->add_option("--window", clip_opt.window_k, "voting window length in frames")
        ->capture_default_str();
    clip->add_option("--threshold", clip_opt.vote_threshold,
                     "playing fraction a window must exceed")
        ->capture_default_str();
    clip->add_option("--merge-gap", clip_opt.merge_gap_s,
                     "absorb gaps shorter than this many seconds")
        ->capture_default_str();
    clip->add_option("--pose-order", clip_opt.pose_order, "input|area")
        ->capture_default_str();
    clip->add_option("--players", clip_opt.players, "people inspected in pose mode")
        ->capture_default_str();
    clip->add_option("--gt", clip_opt.gt_path, "ground-truth rallies for evaluation");
    clip->add_option("--emit-cutlist", clip_opt.cutlist_path, "write the final cut list here");
    clip->add_option("--emit-script", clip_opt.script_path, "write an ffmpeg trim script here");
    clip->add_option("--format", clip_opt.format, "cut list format: structured|tabular")
        ->capture_default_str();
    clip->add_option("--video", clip_opt.video_path, "source video path for the trim script");
    clip->add_option("--min-coverage", clip_opt.min_coverage,
                     "rally coverage needed to count a match")
        ->capture_default_str();

    EvalOptions eval_opt;
    CLI::App* eval = app.add_subcommand("eval", "rally metrics from counts or files");
    eval->add_option("--counts", eval_opt.counts,
                     "correctly_detected,detected,actual rally counts")
        ->delimiter(',');
    eval->add_option("--detected", eval_opt.detected_path, "cut list to score");
    eval->add_option("--gt", eval_opt.gt_path, "ground-truth rallies");
    eval->add_option("--min-coverage", eval_opt.min_coverage,
                     "rally coverage needed to count a match")
        ->capture_default_str();
    eval->add_option("--out", eval_opt.out_path, "write a JSON report here");

    SimulateOptions sim_opt;
    CLI::App* simulate =
        app.add_subcommand("simulate", "synthetic noise study of the pipeline");
    simulate->add_option("--error-rates", sim_opt.error_rates, "frame error rates to sweep")
        ->delimiter(',')
        ->capture_default_str();
    simulate->add_option("--windows", sim_opt.windows, "window lengths to sweep")
        ->delimiter(',')
        ->capture_default_str();
    simulate->add_option("--thresholds", sim_opt.thresholds, "vote thresholds to sweep")
        ->delimiter(',')
        ->capture_default_str();
    simulate->add_option("--merge-gaps", sim_opt.merge_gaps, "merge gaps to sweep")
        ->delimiter(',')
        ->capture_default_str();
    simulate->add_option("--trials", sim_opt.trials, "trials per grid cell")
        ->capture_default_str();
    simulate->add_option("--seed", sim_opt.seed, "base seed")->capture_default_str();
    simulate->add_option("--rallies", sim_opt.rallies, "rallies per synthetic video")
        ->capture_default_str();
    simulate->add_option("--rally-len", sim_opt.rally_len, "rally length range min:max seconds")
        ->capture_default_str();
    simulate->add_option("--break-len", sim_opt.break_len, "break length range min:max seconds")
        ->capture_default_str();
    simulate->add_option("--fps", sim_opt.fps, "synthetic frame rate")->capture_default_str();
    simulate->add_option("--min-coverage", sim_opt.min_coverage,
                         "rally coverage needed to count a match")
        ->capture_default_str();
    simulate->add_option("--out", sim_opt.out_path, "write the study table here");

    try {
        app.parse(argc, argv);
        if (clip->parsed()) return run_clip(clip_opt);
        if (eval->parsed()) return run_eval(eval_opt);
        if (simulate->parsed()) return run_simulate(sim_opt);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const Error& e) {
        std::cerr << "rallycut: " << e.what() << "\n";
        return e.code() == ErrorCode::InternalError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "rallycut: unexpected error: " << e.what() << "\n";
        return 2;
    }
}
