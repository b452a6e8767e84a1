#pragma once

#include <optional>
#include <span>
#include <vector>

#include "laughtrack/annotation.hpp"
#include "laughtrack/config.hpp"
#include "laughtrack/frames.hpp"
#include "laughtrack/types.hpp"

namespace laughtrack::audio {

inline constexpr double kDbEpsilon = 1e-10;
// Below this spread (Hz) a sentence's pitch statistics count as flat, so
// estimator jitter on monotone speech cannot produce stress flags.
inline constexpr double kMinPitchSpreadHz = 1.0;

struct WordAcoustics {
    double spm = 0.0;
    double mean_rms = 0.0;
    double mean_db = 0.0;
    std::optional<double> mean_f0;
    std::optional<double> f0_range;

    friend bool operator==(const WordAcoustics&, const WordAcoustics&) = default;
};

double syllables_per_minute(int syllables, double duration_s);

// Statistics over frames whose centers fall in [start_s, end_s]; the single
// nearest frame when none do.
WordAcoustics word_acoustics(const WordToken& word, const FrameSeries& frames);

std::vector<WordAcoustics> sentence_acoustics(const Sentence& sentence, const FrameSeries& frames);

// `acoustics` is parallel to sentence.tokens in all detectors below.
std::vector<FeatureAnnotation> detect_speed_variation(const Sentence& sentence,
                                                      std::span<const WordAcoustics> acoustics,
                                                      const ThresholdConfig& config);

// Gaps between consecutive tokens of a time-ordered sequence; targets index
// into `tokens` and name the word after the gap.
std::vector<FeatureAnnotation> detect_pauses(std::span<const WordToken> tokens, const ThresholdConfig& config);

// Per-sentence pause annotations for a snippet, including gaps that cross a
// sentence boundary (attached to the first word of the later sentence).
std::vector<std::vector<FeatureAnnotation>> detect_snippet_pauses(const Snippet& snippet,
                                                                  const ThresholdConfig& config);

std::vector<FeatureAnnotation> detect_volume_variation(const Sentence& sentence,
                                                       std::span<const WordAcoustics> acoustics,
                                                       const ThresholdConfig& config);

std::vector<FeatureAnnotation> detect_pitch_stress(const Sentence& sentence,
                                                   std::span<const WordAcoustics> acoustics,
                                                   const ThresholdConfig& config);

}  // namespace laughtrack::audio
