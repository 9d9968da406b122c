// Acceptance suite: runs every release criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rallycut/fusion.hpp"
#include "rallycut/io.hpp"
#include "rallycut/merge.hpp"
#include "rallycut/metrics.hpp"
#include "rallycut/pipeline.hpp"
#include "rallycut/sim.hpp"
#include "rallycut/voting.hpp"

using namespace rallycut;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

int rand_int(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double rand_real(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

TimeSequence random_sequence(std::mt19937& rng, int max_segments) {
    const int n = rand_int(rng, 0, max_segments);
    std::vector<TimeSegment> segments;
    double t = rand_real(rng, 0.0, 5.0);
    for (int i = 0; i < n; ++i) {
        const double duration = rand_real(rng, 0.01, 8.0);
        segments.push_back(TimeSegment{t, t + duration});
        t += duration + rand_real(rng, 0.0, 5.0);
    }
    return TimeSequence(std::move(segments));
}

// 1. eval reproduces the three reference score rows exactly
void criterion_metrics(Check& check) {
    struct Row {
        std::int64_t cd, d, a;
        int p, r, c;
    };
    const Row rows[] = {
        {17, 17, 17, 100, 100, 100},
        {91, 94, 94, 97, 97, 97},
        {88, 92, 91, 96, 97, 96},
    };
    for (const Row& row : rows) {
        const EvalReport report = evaluate(row.cd, row.d, row.a);
        std::ostringstream at;
        at << "(" << row.cd << "," << row.d << "," << row.a << ")";
        check.expect(rounded_percent(report.precision) == row.p,
                     at.str() + " precision != " + std::to_string(row.p));
        check.expect(rounded_percent(report.recall) == row.r,
                     at.str() + " recall != " + std::to_string(row.r));
        check.expect(rounded_percent(report.combined) == row.c,
                     at.str() + " combined != " + std::to_string(row.c));
    }
}

// 2. voting+merging equals the brute-force oracle, exactly, on 1000
//    seeded random instances
void criterion_oracle(Check& check) {
    std::mt19937 rng(20240001);
    const double thresholds[] = {0.3, 0.5, 0.7};
    const FrameRate rates[] = {{25, 1}, {30, 1}, {30000, 1001}, {24, 1}, {50, 1}};
    for (int trial = 0; trial < 1000; ++trial) {
        PipelineConfig config;
        config.window_k = rand_int(rng, 1, 50);
        config.vote_threshold = thresholds[rand_int(rng, 0, 2)];
        config.merge_gap_s = rand_real(rng, 0.0, 5.0);
        config.fps = rates[rand_int(rng, 0, 4)];

        const int frames = rand_int(rng, 1, 500);
        const std::int64_t base = rand_int(rng, 0, 1) ? 0 : rand_int(rng, 0, 100000);
        const double density = rand_real(rng, 0.0, 1.0);
        std::vector<FrameDecision> decisions;
        decisions.reserve(static_cast<std::size_t>(frames));
        for (int i = 0; i < frames; ++i) {
            decisions.push_back(FrameDecision{base + i, rand_real(rng, 0.0, 1.0) < density});
        }

        const TimeSequence fast =
            merge_segments(initial_segments(decisions, config), config.merge_gap_s);
        const TimeSequence oracle = brute_force_segments(decisions, config);
        if (fast != oracle) {
            check.expect(false, "pipeline != oracle at trial " + std::to_string(trial));
            return;
        }
    }
}

// 3. 20% symmetric frame noise still yields mean C >= 0.95, and the
//    no-voting/no-merging ablation scores strictly lower
void criterion_noise_amplification(Check& check) {
    NoiseStudyGrid grid;
    grid.error_rates = {0.2};
    grid.window_sizes = {25};
    grid.vote_thresholds = {0.5};
    grid.merge_gaps_s = {1.0};
    grid.trials = 100;
    grid.base.n_rallies = 10;
    grid.base.rally_min_s = 3.0;
    grid.base.rally_max_s = 15.0;
    grid.base.break_min_s = 5.0;
    grid.base.break_max_s = 30.0;
    grid.base.fps = FrameRate(25, 1);
    grid.base.seed = 20240003;

    const NoiseStudyCell full_pipeline = run_noise_study(grid)[0];

    NoiseStudyGrid ablation = grid;
    ablation.window_sizes = {1};
    ablation.merge_gaps_s = {0.0};
    const NoiseStudyCell frame_level = run_noise_study(ablation)[0];

    std::ostringstream detail;
    detail << "mean C " << full_pipeline.combined_mean << " (frame accuracy "
           << full_pipeline.frame_accuracy_mean << "), ablation mean C "
           << frame_level.combined_mean;
    check.detail = detail.str();

    check.expect(full_pipeline.combined_mean >= 0.95,
                 "mean C " + std::to_string(full_pipeline.combined_mean) + " < 0.95");
    check.expect(frame_level.combined_mean < full_pipeline.combined_mean,
                 "ablation did not score strictly lower");
    check.expect(std::abs(full_pipeline.frame_accuracy_mean - 0.8) < 0.02,
                 "realized frame accuracy strayed from 0.8");
}

// 4. property suites, >= 200 generated cases each
void criterion_properties(Check& check) {
    std::mt19937 rng(20240004);

    // fusion scale invariance + exact ties staying non-playing, on a
    // dyadic grid where double arithmetic is exact
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LabeledDetection> frame;
        const int n = rand_int(rng, 0, 10);
        for (int i = 0; i < n; ++i) {
            frame.push_back(LabeledDetection{
                rand_int(rng, 0, 1) ? BoxLabel::Playing : BoxLabel::NonPlaying,
                static_cast<double>(rand_int(rng, 0, 64)) / 64.0, std::nullopt});
        }
        const bool before = fuse_box_frame(frame);
        const double c = static_cast<double>(rand_int(rng, 1, 640)) / 64.0;
        std::vector<LabeledDetection> scaled = frame;
        for (auto& det : scaled) det.confidence *= c;
        check.expect(fuse_box_frame(scaled) == before, "scale invariance violated");
    }
    for (int trial = 0; trial < 200; ++trial) {
        // mirror a playing multiset onto non-playing: an exact tie
        std::vector<LabeledDetection> frame;
        const int n = rand_int(rng, 0, 8);
        for (int i = 0; i < n; ++i) {
            const double conf = static_cast<double>(rand_int(rng, 0, 64)) / 64.0;
            frame.push_back(LabeledDetection{BoxLabel::Playing, conf, std::nullopt});
            frame.push_back(LabeledDetection{BoxLabel::NonPlaying, conf, std::nullopt});
        }
        check.expect(!fuse_box_frame(frame), "tie did not resolve to non-playing");
    }

    // voting threshold monotonicity
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rand_int(rng, 1, 200);
        std::vector<FrameDecision> window;
        const double density = rand_real(rng, 0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            window.push_back(FrameDecision{i, rand_real(rng, 0.0, 1.0) < density});
        }
        const double lo = rand_real(rng, 0.0, 1.0);
        const double hi = rand_real(rng, lo, 1.0);
        check.expect(!(vote_window(window, hi) && !vote_window(window, lo)),
                     "raising the threshold revived a vote");
    }

    // merge idempotence, gap guarantee, coarsening, disjoint outputs
    for (int trial = 0; trial < 200; ++trial) {
        const TimeSequence seq = random_sequence(rng, 40);
        const double gap1 = rand_real(rng, 0.0, 4.0);
        const double gap2 = gap1 + rand_real(rng, 0.0, 4.0);
        const TimeSequence fine = merge_segments(seq, gap1);    // ctor re-checks disjointness
        const TimeSequence coarse = merge_segments(seq, gap2);
        check.expect(merge_segments(fine, gap1) == fine, "merge not idempotent");
        for (std::size_t i = 0; i + 1 < fine.size(); ++i) {
            check.expect(fine.segments()[i + 1].start_s - fine.segments()[i].end_s >= gap1,
                         "output gap below the threshold");
        }
        for (const auto& segment : fine) {
            bool contained = false;
            for (const auto& out : coarse) {
                contained |= out.start_s <= segment.start_s && segment.end_s <= out.end_s;
            }
            check.expect(contained, "larger gap is not a coarsening");
        }
    }

    // voting-level outputs always satisfy the sequence invariants
    for (int trial = 0; trial < 200; ++trial) {
        PipelineConfig config;
        config.window_k = rand_int(rng, 1, 40);
        config.vote_threshold = rand_real(rng, 0.0, 1.0);
        const int n = rand_int(rng, 1, 300);
        std::vector<FrameDecision> decisions;
        const double density = rand_real(rng, 0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            decisions.push_back(FrameDecision{i, rand_real(rng, 0.0, 1.0) < density});
        }
        try {
            const TimeSequence seq = initial_segments(decisions, config);
            const auto& segs = seq.segments();
            for (std::size_t i = 0; i < segs.size(); ++i) {
                check.expect(segs[i].start_s < segs[i].end_s, "degenerate segment");
                if (i) {
                    check.expect(segs[i - 1].end_s <= segs[i].start_s, "overlap");
                }
            }
        } catch (const Error& e) {
            check.expect(false, std::string("invariant rejected: ") + e.what());
        }
    }

    // harmonic-mean bound, exhaustively for counts <= 50
    for (std::int64_t d = 0; d <= 50; ++d) {
        for (std::int64_t a = 0; a <= 50; ++a) {
            for (std::int64_t c = 0; c <= std::min(d, a); ++c) {
                const EvalReport r = evaluate(c, d, a);
                const double lo = std::min(r.precision, r.recall);
                const double hi = std::max(r.precision, r.recall);
                if (r.precision + r.recall > 0.0) {
                    check.expect(lo <= r.combined && r.combined <= hi,
                                 "combined metric escaped [min(P,R), max(P,R)]");
                } else {
                    check.expect(r.combined == 0.0, "combined nonzero with P+R = 0");
                }
                if (d == a) {
                    check.expect(r.precision == r.recall, "P != R despite equal counts");
                }
            }
        }
    }
}

// 5. byte-identical determinism plus cut-list write -> read identity
void criterion_determinism(Check& check) {
    SimParams params;
    params.n_rallies = 8;
    params.seed = 20240005;
    params.false_negative_rate = 0.2;
    params.false_positive_rate = 0.2;
    const SyntheticTruth synthetic = generate_ground_truth(params);

    PipelineConfig config;
    for (int repeat = 0; repeat < 2; ++repeat) {
        const auto first = corrupt_labels(synthetic.frame_labels, 0.2, 0.2, 99);
        const auto second = corrupt_labels(synthetic.frame_labels, 0.2, 0.2, 99);
        const TimeSequence seq_a =
            merge_segments(initial_segments(first, config), config.merge_gap_s);
        const TimeSequence seq_b =
            merge_segments(initial_segments(second, config), config.merge_gap_s);
        for (const auto format : {CutlistFormat::Tabular, CutlistFormat::Structured}) {
            check.expect(render_cutlist(seq_a, config.fps, format) ==
                             render_cutlist(seq_b, config.fps, format),
                         "repeated runs differ at the byte level");
        }
    }

    std::mt19937 rng(20240006);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<TimeSegment> segments;
        std::int64_t ms = rand_int(rng, 0, 4000);
        const int n = rand_int(rng, 0, 10);
        for (int i = 0; i < n; ++i) {
            const std::int64_t length_ms = rand_int(rng, 1, 20000);
            segments.push_back(TimeSegment{static_cast<double>(ms) / 1000.0,
                                           static_cast<double>(ms + length_ms) / 1000.0});
            ms += length_ms + rand_int(rng, 0, 30000);
        }
        const TimeSequence seq(segments);
        const auto format =
            trial % 2 == 0 ? CutlistFormat::Tabular : CutlistFormat::Structured;
        std::istringstream in(render_cutlist(seq, FrameRate(25, 1), format));
        check.expect(parse_cutlist(in, "roundtrip") == seq,
                     "write -> read was not the identity at trial " + std::to_string(trial));
    }
}

// 6. noiseless synthetic streams recover the truth within the window
//    quantization bound, 50 seeded trials
void criterion_noiseless_recovery(Check& check) {
    PipelineConfig config;
    const double bound = config.fps.seconds(config.window_k);
    for (int trial = 0; trial < 50; ++trial) {
        SimParams params;
        params.n_rallies = 10;
        params.seed = 20240100 + static_cast<std::uint64_t>(trial);
        const SyntheticTruth synthetic = generate_ground_truth(params);

        std::vector<FrameDecision> decisions;
        for (std::size_t i = 0; i < synthetic.frame_labels.size(); ++i) {
            decisions.push_back(
                FrameDecision{static_cast<std::int64_t>(i), synthetic.frame_labels[i]});
        }
        const TimeSequence found =
            merge_segments(initial_segments(decisions, config), config.merge_gap_s);

        const auto& rallies = synthetic.truth.rallies.segments();
        if (found.size() != rallies.size()) {
            check.expect(false, "segment count mismatch at trial " + std::to_string(trial));
            return;
        }
        for (std::size_t i = 0; i < rallies.size(); ++i) {
            const double start_err = std::abs(found.segments()[i].start_s - rallies[i].start_s);
            const double end_err = std::abs(found.segments()[i].end_s - rallies[i].end_s);
            check.expect(start_err <= bound && end_err <= bound,
                         "boundary error above k/fps at trial " + std::to_string(trial));
        }
    }
}

struct Criterion {
    std::string name;
    double budget_s;   // 0 = no stated budget
    std::function<void(Check&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1. eval reproduces the reference score rows exactly", 1.0, criterion_metrics},
        {"2. pipeline equals brute-force oracle on 1000 instances", 30.0, criterion_oracle},
        {"3. 20% frame noise amplifies to mean C >= 0.95", 60.0,
         criterion_noise_amplification},
        {"4. property suites (fusion/voting/merge/metrics)", 0.0, criterion_properties},
        {"5. determinism and cut-list round-trip", 0.0, criterion_determinism},
        {"6. noiseless recovery within window quantization", 0.0,
         criterion_noiseless_recovery},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_s > 0.0 && elapsed >= criterion.budget_s) {
            check.expect(false, "runtime budget exceeded");
        }
        std::printf("[%s] %s (%.2f s)%s%s\n", check.ok ? "PASS" : "FAIL",
                    criterion.name.c_str(), elapsed, check.detail.empty() ? "" : " - ",
                    check.detail.c_str());
        failures += check.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
