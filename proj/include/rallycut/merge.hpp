#ifndef RALLYCUT_MERGE_HPP
#define RALLYCUT_MERGE_HPP

#include "rallycut/types.hpp"

namespace rallycut {

/// Coalesces consecutive segments whose gap is strictly shorter than
/// merge_gap_s, transitively, in one left-to-right pass. Every gap in
/// the output is >= merge_gap_s; a gap of exactly merge_gap_s survives.
TimeSequence merge_segments(const TimeSequence& seq, double merge_gap_s);

/// Sum of segment durations in seconds.
double total_duration(const TimeSequence& seq);

} // namespace rallycut

#endif
