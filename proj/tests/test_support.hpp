#ifndef RALLYCUT_TEST_SUPPORT_HPP
#define RALLYCUT_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include <doctest.h>

#include "rallycut/types.hpp"

namespace rallycut::test {

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a rallycut::Error");
    return ErrorCode::InternalError;
}

/// Dyadic confidence grid (multiples of 1/64) keeps every sum and
/// product in the fusion properties exact in double precision.
inline double dyadic(std::mt19937& rng, int max_num = 64, int denom = 64) {
    std::uniform_int_distribution<int> dist(0, max_num);
    return static_cast<double>(dist(rng)) / static_cast<double>(denom);
}

inline int rand_int(std::mt19937& rng, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng);
}

inline double rand_real(std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

inline TimeSequence random_sequence(std::mt19937& rng, int max_segments,
                                    double max_duration_s = 10.0,
                                    double max_gap_s = 5.0) {
    const int n = rand_int(rng, 0, max_segments);
    std::vector<TimeSegment> segments;
    double t = rand_real(rng, 0.0, max_gap_s);
    for (int i = 0; i < n; ++i) {
        const double duration = rand_real(rng, 0.01, max_duration_s);
        segments.push_back(TimeSegment{t, t + duration});
        t += duration + rand_real(rng, 0.0, max_gap_s);
    }
    return TimeSequence(std::move(segments));
}

inline std::vector<FrameDecision> random_decisions(std::mt19937& rng, int count,
                                                   double playing_prob,
                                                   std::int64_t first_frame = 0) {
    std::vector<FrameDecision> decisions;
    decisions.reserve(static_cast<std::size_t>(count));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
        decisions.push_back(FrameDecision{first_frame + i, unit(rng) < playing_prob});
    }
    return decisions;
}

} // namespace rallycut::test

#endif
