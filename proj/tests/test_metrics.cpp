#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "rallycut/metrics.hpp"
#include "test_support.hpp"

using namespace rallycut;
using rallycut::test::code_of;

TEST_SUITE("metrics") {

TEST_CASE("reported count triples reproduce their scores") {
    // 17/17/17
    EvalReport r = evaluate(17, 17, 17);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.combined == 1.0);
    CHECK(rounded_percent(r.precision) == 100);

    // 91/94/94 -> 96.8% everywhere, 97 after rounding
    r = evaluate(91, 94, 94);
    CHECK(r.precision == 91.0 / 94.0);
    CHECK(r.recall == 91.0 / 94.0);
    CHECK(r.combined == 182.0 / 188.0);
    CHECK(rounded_percent(r.precision) == 97);
    CHECK(rounded_percent(r.recall) == 97);
    CHECK(rounded_percent(r.combined) == 97);

    // 88/92/91 -> 95.7 / 96.7 / 96.2, i.e. 96 / 97 / 96
    r = evaluate(88, 92, 91);
    CHECK(r.precision == 88.0 / 92.0);
    CHECK(r.recall == 88.0 / 91.0);
    CHECK(rounded_percent(r.precision) == 96);
    CHECK(rounded_percent(r.recall) == 97);
    CHECK(rounded_percent(r.combined) == 96);

    r = evaluate(0, 5, 5);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.combined == 0.0);
}

TEST_CASE("zero denominators score zero instead of erroring") {
    const EvalReport r = evaluate(0, 0, 0);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.combined == 0.0);
}

TEST_CASE("inconsistent counts are rejected") {
    CHECK(code_of([] { evaluate(5, 4, 5); }) == ErrorCode::CountInconsistency);
    CHECK(code_of([] { evaluate(5, 5, 4); }) == ErrorCode::CountInconsistency);
    CHECK(code_of([] { evaluate(-1, 5, 5); }) == ErrorCode::CountInconsistency);
}

TEST_CASE("combined agrees with the harmonic mean route and stays bounded") {
    for (std::int64_t d = 0; d <= 50; ++d) {
        for (std::int64_t a = 0; a <= 50; ++a) {
            for (std::int64_t c = 0; c <= std::min(d, a); ++c) {
                const EvalReport r = evaluate(c, d, a);
                if (d == a) CHECK(r.precision == r.recall);
                if (r.precision == r.recall) CHECK(r.combined == r.precision);
                if (r.precision + r.recall > 0.0) {
                    const double harmonic = 2.0 * r.precision * r.recall /
                                            (r.precision + r.recall);
                    CHECK(r.combined == doctest::Approx(harmonic).epsilon(1e-12));
                    CHECK(r.combined >= std::min(r.precision, r.recall));
                    CHECK(r.combined <= std::max(r.precision, r.recall));
                } else {
                    CHECK(r.combined == 0.0);
                }
            }
        }
    }
}

TEST_CASE("rally matching is one-to-one and earliest-first") {
    const GroundTruth contained{TimeSequence({{2.0, 8.0}})};
    CHECK(match_rallies(TimeSequence({{0.0, 10.0}}).segments(), contained, 0.5)
              .correctly_detected == 1);

    const GroundTruth far{TimeSequence({{5.0, 8.0}})};
    CHECK(match_rallies(TimeSequence({{0.0, 1.0}}).segments(), far, 0.5)
              .correctly_detected == 0);

    // one detection spanning two rallies matches only one of them
    const GroundTruth two{TimeSequence({{1.0, 3.0}, {6.0, 9.0}})};
    const MatchResult result =
        match_rallies(TimeSequence({{0.0, 10.0}}).segments(), two, 0.5);
    CHECK(result.correctly_detected == 1);
    REQUIRE(result.matches.size() == 1);
    CHECK(result.matches[0].actual_index == 0); // earliest eligible rally wins
}

TEST_CASE("coverage below the threshold does not count") {
    const GroundTruth truth{TimeSequence({{0.0, 10.0}})};
    // covers 4 of 10 seconds
    CHECK(match_rallies(TimeSequence({{0.0, 4.0}}).segments(), truth, 0.5)
              .correctly_detected == 0);
    // covers 5 of 10: >= min_coverage counts
    CHECK(match_rallies(TimeSequence({{0.0, 5.0}}).segments(), truth, 0.5)
              .correctly_detected == 1);
    CHECK(code_of([&] {
              match_rallies(TimeSequence({{0.0, 5.0}}).segments(), truth, 0.0);
          }) == ErrorCode::InvalidConfig);
}

TEST_CASE("matching count is stable under permutation of the detected list") {
    std::mt19937 rng(7401);
    for (int trial = 0; trial < 200; ++trial) {
        const TimeSequence truth_seq = test::random_sequence(rng, 12);
        const GroundTruth truth{truth_seq};
        std::vector<TimeSegment> detected = test::random_sequence(rng, 12).segments();
        const auto baseline = match_rallies(detected, truth, 0.5).correctly_detected;
        std::shuffle(detected.begin(), detected.end(), rng);
        CHECK(match_rallies(detected, truth, 0.5).correctly_detected == baseline);
    }
}

TEST_CASE("adding a detected segment never lowers the match count") {
    std::mt19937 rng(7402);
    for (int trial = 0; trial < 300; ++trial) {
        const GroundTruth truth{test::random_sequence(rng, 10)};
        std::vector<TimeSegment> detected = test::random_sequence(rng, 10).segments();
        const auto before = match_rallies(detected, truth, 0.5).correctly_detected;
        const double start = test::rand_real(rng, 0.0, 60.0);
        detected.push_back(TimeSegment{start, start + test::rand_real(rng, 0.1, 10.0)});
        CHECK(match_rallies(detected, truth, 0.5).correctly_detected >= before);
    }
}

TEST_CASE("adding an actual rally never lowers the match count") {
    std::mt19937 rng(7403);
    for (int trial = 0; trial < 300; ++trial) {
        const std::vector<TimeSegment> detected = test::random_sequence(rng, 10).segments();
        const TimeSequence truth_seq = test::random_sequence(rng, 10);
        const auto before =
            match_rallies(detected, GroundTruth{truth_seq}, 0.5).correctly_detected;

        // grow the truth by one rally dropped into a free spot
        std::vector<TimeSegment> grown = truth_seq.segments();
        const double tail =
            grown.empty() ? 0.0 : grown.back().end_s + test::rand_real(rng, 0.0, 5.0);
        grown.push_back(TimeSegment{tail, tail + test::rand_real(rng, 0.1, 10.0)});
        const auto after =
            match_rallies(detected, GroundTruth{TimeSequence(grown)}, 0.5)
                .correctly_detected;
        CHECK(after >= before);
    }
}

TEST_CASE("compression ratio") {
    CHECK(compression_ratio(401.0, 222.0) == doctest::Approx(0.5536).epsilon(1e-3));
    CHECK(compression_ratio(930.0, 473.0) == doctest::Approx(0.5086).epsilon(1e-3));
    CHECK(compression_ratio(120.0, 120.0) == 1.0);
    CHECK(code_of([] { compression_ratio(0.0, 1.0); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("percent rounding is half-up") {
    CHECK(rounded_percent(0.0) == 0);
    CHECK(rounded_percent(1.0) == 100);
    CHECK(rounded_percent(0.9649) == 96);
    CHECK(rounded_percent(0.9651) == 97);
    CHECK(rounded_percent(0.125) == 13);  // 12.5 is exact in binary; .5 rounds up
    CHECK(rounded_percent(0.961748) == 96);
}

} // TEST_SUITE
