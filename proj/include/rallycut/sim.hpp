#ifndef RALLYCUT_SIM_HPP
#define RALLYCUT_SIM_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "rallycut/metrics.hpp"
#include "rallycut/types.hpp"

namespace rallycut {

/// Deterministic uniform source: mt19937_64 (whose output sequence is
/// pinned by the standard) mapped to [0,1) through the top 53 bits, so
/// the same seed reproduces bit-identical draws on every platform.
/// std::uniform_real_distribution is avoided on purpose: its sequence
/// is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + next_unit() * (hi - lo); }
    bool bernoulli(double p) { return next_unit() < p; }

private:
    std::mt19937_64 engine_;
};

/// Stateless seed derivation for independent sub-streams (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

struct SimParams {
    int n_rallies = 10;
    double rally_min_s = 3.0;
    double rally_max_s = 15.0;
    double break_min_s = 5.0;
    double break_max_s = 30.0;
    FrameRate fps{25, 1};
    double false_negative_rate = 0.0;   // playing frame reported non-playing
    double false_positive_rate = 0.0;   // non-playing frame reported playing
    std::uint64_t seed = 0;

    void validate() const;
};

struct SyntheticTruth {
    GroundTruth truth;
    std::vector<bool> frame_labels;   // frame i covers [i/fps, (i+1)/fps)
};

/// Break/rally/break/... layout starting and ending with a break,
/// lengths drawn uniformly from the configured ranges. Deterministic
/// per seed.
SyntheticTruth generate_ground_truth(const SimParams& params);

/// Flips each label independently: true->false with false_negative_rate,
/// false->true with false_positive_rate. One draw per frame, so streams
/// with equal seeds stay aligned across rate changes.
std::vector<FrameDecision> corrupt_labels(const std::vector<bool>& labels,
                                          double false_negative_rate,
                                          double false_positive_rate,
                                          std::uint64_t seed);

/// Naive reference for the voting + merging levels: builds explicit
/// window lists, votes each by its playing fraction, scans out runs and
/// merges by repeatedly coalescing the closest pair under the gap until
/// nothing changes. Test oracle; shares no logic with the fast path
/// beyond the frames->seconds conversion.
TimeSequence brute_force_segments(std::span<const FrameDecision> decisions,
                                  const PipelineConfig& config);

struct NoiseStudyCell {
    double error_rate = 0.0;
    int window_k = 0;
    double vote_threshold = 0.0;
    double merge_gap_s = 0.0;
    int trials = 0;
    double frame_accuracy_mean = 0.0;   // fusion-level accuracy actually realized
    double precision_mean = 0.0;
    double precision_min = 0.0;
    double recall_mean = 0.0;
    double recall_min = 0.0;
    double combined_mean = 0.0;
    double combined_min = 0.0;
};

struct NoiseStudyGrid {
    std::vector<double> error_rates{0.05, 0.1, 0.2, 0.3};
    std::vector<int> window_sizes{25};
    std::vector<double> vote_thresholds{0.5};
    std::vector<double> merge_gaps_s{1.0};
    SimParams base;        // noise rates are overridden per cell
    int trials = 100;
    double min_coverage = 0.5;
};

/// Full-pipeline rally metrics against synthetic truth, per grid cell,
/// averaged over seeded trials. Shows the frame-level error rate next
/// to the rally-level scores it turns into.
std::vector<NoiseStudyCell> run_noise_study(const NoiseStudyGrid& grid);

} // namespace rallycut

#endif
