#include "rallycut/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rallycut {

namespace {

double overlap_seconds(const TimeSegment& a, const TimeSegment& b) {
    return std::max(0.0, std::min(a.end_s, b.end_s) - std::max(a.start_s, b.start_s));
}

} // namespace

MatchResult match_rallies(std::span<const TimeSegment> detected, const GroundTruth& actual,
                          double min_coverage) {
    if (!(min_coverage > 0.0 && min_coverage <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "min_coverage must be in (0, 1]");
    }

    std::vector<std::size_t> order(detected.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (detected[a].start_s != detected[b].start_s) {
            return detected[a].start_s < detected[b].start_s;
        }
        return detected[a].end_s < detected[b].end_s;
    });

    const auto& rallies = actual.rallies.segments();
    std::vector<bool> taken(rallies.size(), false);

    MatchResult result;
    for (const std::size_t det_idx : order) {
        const TimeSegment& seg = detected[det_idx];
        for (std::size_t r = 0; r < rallies.size(); ++r) {
            if (taken[r]) continue;
            const double overlap = overlap_seconds(seg, rallies[r]);
            if (overlap >= min_coverage * rallies[r].duration()) {
                taken[r] = true;
                result.matches.push_back(RallyMatch{det_idx, r, overlap});
                break;
            }
        }
    }
    result.correctly_detected = static_cast<std::int64_t>(result.matches.size());
    return result;
}

EvalReport evaluate(std::int64_t correctly_detected, std::int64_t detected,
                    std::int64_t actual) {
    if (correctly_detected < 0 || detected < 0 || actual < 0) {
        throw Error(ErrorCode::CountInconsistency, "rally counts must be nonnegative");
    }
    if (correctly_detected > detected) {
        throw Error(ErrorCode::CountInconsistency,
                    "correctly detected (" + std::to_string(correctly_detected) +
                    ") exceeds detected (" + std::to_string(detected) + ")");
    }
    if (correctly_detected > actual) {
        throw Error(ErrorCode::CountInconsistency,
                    "correctly detected (" + std::to_string(correctly_detected) +
                    ") exceeds actual (" + std::to_string(actual) + ")");
    }

    EvalReport report;
    report.correctly_detected = correctly_detected;
    report.detected = detected;
    report.actual = actual;
    report.precision = detected > 0
                           ? static_cast<double>(correctly_detected) / static_cast<double>(detected)
                           : 0.0;
    report.recall = actual > 0
                        ? static_cast<double>(correctly_detected) / static_cast<double>(actual)
                        : 0.0;
    // 2PR/(P+R) restated on the raw counts: 2*cd/(d+a). Exact where the
    // float composition of P and R would wobble at the last bit.
    report.combined = detected + actual > 0
                          ? 2.0 * static_cast<double>(correctly_detected) /
                                static_cast<double>(detected + actual)
                          : 0.0;
    return report;
}

double compression_ratio(double before_s, double after_s) {
    if (!(before_s > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "duration before clipping must be > 0");
    }
    return after_s / before_s;
}

int rounded_percent(double fraction) {
    return static_cast<int>(std::floor(fraction * 100.0 + 0.5));
}

} // namespace rallycut
