#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "laughtrack/config.hpp"
#include "laughtrack/types.hpp"

namespace laughtrack::audio {

struct FrameSeries {
    double hop_s = 0.010;
    double window_s = 0.040;
    std::vector<double> rms;
    std::vector<std::optional<double>> f0_hz;  // absent = unvoiced

    std::size_t size() const { return rms.size(); }
    double center_s(std::size_t i) const { return static_cast<double>(i) * hop_s + window_s / 2.0; }
};

struct FrameValue {
    double rms = 0.0;
    std::optional<double> f0_hz;
};

// One analysis window: RMS and a normalized-autocorrelation pitch estimate.
// `n` may be shorter than the nominal window at the end of a track.
FrameValue analyze_window(const float* x, std::size_t n, int sample_rate, const FrameParams& params);

// ceil(duration / hop) frames; frame i covers [i*hop, i*hop + window).
// Parallel over frames when built with OpenMP.
FrameSeries analyze_frames(const AudioTrack& track, const FrameParams& params = {});

// Single-threaded reference; results are bit-identical to analyze_frames.
FrameSeries analyze_frames_serial(const AudioTrack& track, const FrameParams& params = {});

}  // namespace laughtrack::audio
