#include "rallycut/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rallycut/merge.hpp"
#include "rallycut/voting.hpp"

namespace rallycut {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 finalizer over base+stream
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

void SimParams::validate() const {
    if (n_rallies < 0) {
        throw Error(ErrorCode::InvalidConfig, "n_rallies must be >= 0");
    }
    if (!(rally_min_s > 0.0 && rally_min_s <= rally_max_s)) {
        throw Error(ErrorCode::InvalidConfig, "rally length range invalid");
    }
    if (!(break_min_s > 0.0 && break_min_s <= break_max_s)) {
        throw Error(ErrorCode::InvalidConfig, "break length range invalid");
    }
    if (fps.num <= 0 || fps.den <= 0) {
        throw Error(ErrorCode::InvalidConfig, "fps must be positive");
    }
    for (const double rate : {false_negative_rate, false_positive_rate}) {
        if (!(rate >= 0.0 && rate <= 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "noise rates must be in [0, 1]");
        }
    }
}

SyntheticTruth generate_ground_truth(const SimParams& params) {
    params.validate();
    Rng rng(params.seed);

    std::vector<TimeSegment> rallies;
    double t = rng.uniform(params.break_min_s, params.break_max_s);
    for (int i = 0; i < params.n_rallies; ++i) {
        const double rally = rng.uniform(params.rally_min_s, params.rally_max_s);
        rallies.push_back(TimeSegment{t, t + rally});
        t += rally;
        t += rng.uniform(params.break_min_s, params.break_max_s);
    }

    SyntheticTruth out;
    out.truth.rallies = TimeSequence(std::move(rallies));

    const std::int64_t n_frames =
        static_cast<std::int64_t>(std::ceil(t * params.fps.as_double()));
    out.frame_labels.resize(static_cast<std::size_t>(std::max<std::int64_t>(n_frames, 0)));

    std::size_t rally_idx = 0;
    const auto& segs = out.truth.rallies.segments();
    for (std::int64_t i = 0; i < n_frames; ++i) {
        const double frame_start = params.fps.seconds(i);
        while (rally_idx < segs.size() && segs[rally_idx].end_s <= frame_start) ++rally_idx;
        out.frame_labels[static_cast<std::size_t>(i)] =
            rally_idx < segs.size() && segs[rally_idx].start_s <= frame_start;
    }
    return out;
}

std::vector<FrameDecision> corrupt_labels(const std::vector<bool>& labels,
                                          double false_negative_rate,
                                          double false_positive_rate,
                                          std::uint64_t seed) {
    for (const double rate : {false_negative_rate, false_positive_rate}) {
        if (!(rate >= 0.0 && rate <= 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "noise rates must be in [0, 1]");
        }
    }
    Rng rng(seed);
    std::vector<FrameDecision> decisions;
    decisions.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool flip = rng.bernoulli(labels[i] ? false_negative_rate : false_positive_rate);
        decisions.push_back(
            FrameDecision{static_cast<std::int64_t>(i), flip ? !labels[i] : labels[i]});
    }
    return decisions;
}

TimeSequence brute_force_segments(std::span<const FrameDecision> decisions,
                                  const PipelineConfig& config) {
    config.validate();
    if (decisions.empty()) return TimeSequence{};

    const std::size_t k = static_cast<std::size_t>(config.window_k);

    // explicit window list
    std::vector<std::vector<bool>> windows;
    for (std::size_t i = 0; i < decisions.size(); i += k) {
        std::vector<bool> window;
        for (std::size_t j = i; j < decisions.size() && j < i + k; ++j) {
            window.push_back(decisions[j].playing);
        }
        windows.push_back(std::move(window));
    }

    // per-window vote by playing fraction
    std::vector<bool> votes;
    for (const auto& window : windows) {
        std::size_t playing = 0;
        for (const bool b : window) {
            if (b) ++playing;
        }
        votes.push_back(static_cast<double>(playing) / static_cast<double>(window.size()) >
                        config.vote_threshold);
    }

    // replicate each window's vote back over its frames, then scan the
    // frame sequence for maximal playing runs
    std::vector<bool> frame_playing(decisions.size());
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        frame_playing[i] = votes[i / k];
    }

    const std::int64_t base = decisions.front().frame_index;
    std::vector<TimeSegment> segments;
    std::size_t i = 0;
    while (i < frame_playing.size()) {
        if (!frame_playing[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < frame_playing.size() && frame_playing[j + 1]) ++j;
        segments.push_back(
            TimeSegment{config.fps.seconds(base + static_cast<std::int64_t>(i)),
                        config.fps.seconds(base + static_cast<std::int64_t>(j) + 1)});
        i = j + 2;
    }

    // fixpoint merge: repeatedly coalesce the closest pair under the gap
    while (true) {
        double best_gap = std::numeric_limits<double>::infinity();
        std::size_t best_i = segments.size();
        for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
            const double gap = segments[i + 1].start_s - segments[i].end_s;
            if (gap < config.merge_gap_s && gap < best_gap) {
                best_gap = gap;
                best_i = i;
            }
        }
        if (best_i == segments.size()) break;
        segments[best_i].end_s = segments[best_i + 1].end_s;
        segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(best_i) + 1);
    }

    return TimeSequence(std::move(segments));
}

std::vector<NoiseStudyCell> run_noise_study(const NoiseStudyGrid& grid) {
    if (grid.trials < 1) {
        throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    }
    grid.base.validate();

    std::vector<NoiseStudyCell> cells;
    std::uint64_t cell_index = 0;
    for (const double error_rate : grid.error_rates) {
        for (const int window_k : grid.window_sizes) {
            for (const double vote_threshold : grid.vote_thresholds) {
                for (const double merge_gap_s : grid.merge_gaps_s) {
                    NoiseStudyCell cell;
                    cell.error_rate = error_rate;
                    cell.window_k = window_k;
                    cell.vote_threshold = vote_threshold;
                    cell.merge_gap_s = merge_gap_s;
                    cell.trials = grid.trials;
                    cell.precision_min = 1.0;
                    cell.recall_min = 1.0;
                    cell.combined_min = 1.0;

                    PipelineConfig config;
                    config.fps = grid.base.fps;
                    config.window_k = window_k;
                    config.vote_threshold = vote_threshold;
                    config.merge_gap_s = merge_gap_s;

                    for (int trial = 0; trial < grid.trials; ++trial) {
                        SimParams params = grid.base;
                        params.false_negative_rate = error_rate;
                        params.false_positive_rate = error_rate;
                        const std::uint64_t trial_seed = derive_seed(
                            grid.base.seed, cell_index * 0x10000ull +
                                                static_cast<std::uint64_t>(trial));
                        params.seed = trial_seed;

                        const SyntheticTruth synthetic = generate_ground_truth(params);
                        const auto decisions = corrupt_labels(
                            synthetic.frame_labels, params.false_negative_rate,
                            params.false_positive_rate, derive_seed(trial_seed, 1));

                        std::size_t agree = 0;
                        for (std::size_t i = 0; i < decisions.size(); ++i) {
                            if (decisions[i].playing == synthetic.frame_labels[i]) ++agree;
                        }
                        cell.frame_accuracy_mean +=
                            decisions.empty()
                                ? 1.0
                                : static_cast<double>(agree) /
                                      static_cast<double>(decisions.size());

                        const TimeSequence final_seq = merge_segments(
                            initial_segments(decisions, config), config.merge_gap_s);
                        const MatchResult matched = match_rallies(
                            final_seq.segments(), synthetic.truth, grid.min_coverage);
                        const EvalReport report = evaluate(
                            matched.correctly_detected,
                            static_cast<std::int64_t>(final_seq.size()),
                            static_cast<std::int64_t>(synthetic.truth.rallies.size()));

                        cell.precision_mean += report.precision;
                        cell.recall_mean += report.recall;
                        cell.combined_mean += report.combined;
                        cell.precision_min = std::min(cell.precision_min, report.precision);
                        cell.recall_min = std::min(cell.recall_min, report.recall);
                        cell.combined_min = std::min(cell.combined_min, report.combined);
                    }

                    const double n = static_cast<double>(grid.trials);
                    cell.frame_accuracy_mean /= n;
                    cell.precision_mean /= n;
                    cell.recall_mean /= n;
                    cell.combined_mean /= n;
                    cells.push_back(cell);
                    ++cell_index;
                }
            }
        }
    }
    return cells;
}

} // namespace rallycut
