"""Deterministic sports-highlight segmentation over per-frame detector records.

The heavy lifting lives in the compiled ``_rallycut`` extension; this
package re-exports its public surface.
"""

from ._rallycut import (  # noqa: F401
    BoxLabel,
    CutlistFormat,
    EvalReport,
    FrameDecision,
    FrameDecisionSummary,
    FrameRate,
    FrameRecord,
    GroundTruth,
    HighlightResult,
    LabeledDetection,
    MatchResult,
    Mode,
    NoiseStudyCell,
    NoiseStudyGrid,
    PipelineConfig,
    PoseObservation,
    PoseOrdering,
    RallyMatch,
    RallycutError,
    SimParams,
    StreamWarning,
    SyntheticTruth,
    TimeSegment,
    TimeSequence,
    ValidatedStream,
    __version__,
    brute_force_segments,
    compression_ratio,
    corrupt_labels,
    derive_seed,
    evaluate,
    extract_segments,
    fuse_box_frame,
    fuse_frame,
    fuse_pose_frame,
    fuse_stream,
    generate_ground_truth,
    initial_segments,
    load_detection_stream,
    load_ground_truth,
    match_rallies,
    merge_segments,
    parse_cutlist_text,
    parse_detection_stream_text,
    partition_windows,
    quantize_ms,
    read_cutlist,
    render_cutlist,
    render_study_csv,
    render_trim_script,
    rounded_percent,
    run_noise_study,
    run_pipeline,
    total_duration,
    validate_stream,
    vote_window,
    write_cutlist,
)
