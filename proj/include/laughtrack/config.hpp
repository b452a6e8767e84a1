#pragma once

#include <string>
#include <string_view>

namespace laughtrack {

// User-tunable detector thresholds. Everything here is re-applied by
// recompute without touching audio or parses.
struct ThresholdConfig {
    double disconnect_max_sim = 0.15;  // 0 turns the disconnection detector off
    double repeat_min_sim = 0.85;
    double speed_N = 1.0;
    double speed_M = 1.5;
    double pause_min_s = 0.5;
    double volume_delta_db = 3.0;
    double pitch_M = 1.5;
    double cluster_eps = 0.35;
    int cluster_min_pts = 2;

    // Throws ValidationError("service", ...) naming the offending field.
    void validate() const;

    friend bool operator==(const ThresholdConfig&, const ThresholdConfig&) = default;
};

struct FrameParams {
    double hop_s = 0.010;
    double window_s = 0.040;
    double f0_min_hz = 75.0;
    double f0_max_hz = 500.0;
    double clarity_min = 0.45;
    double silence_rms = 1e-3;

    friend bool operator==(const FrameParams&, const FrameParams&) = default;
};

struct TextRankParams {
    int window = 4;
    double damping = 0.85;
    double tolerance = 1e-6;
    int max_iterations = 100;
    int top_k = 5;

    friend bool operator==(const TextRankParams&, const TextRankParams&) = default;
};

struct AnalysisConfig {
    ThresholdConfig thresholds;
    FrameParams frames;
    TextRankParams textrank;
    int max_subphrase_len = 6;
    double merge_resolution_s = 0.0;

    void validate() const;

    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Applies one `name=value` override (threshold or textrank field names,
// e.g. "pause_min_s=1.0"). Throws ValidationError on an unknown name or a
// malformed value; does not validate the resulting config.
void apply_override(AnalysisConfig& config, std::string_view assignment);

}  // namespace laughtrack
