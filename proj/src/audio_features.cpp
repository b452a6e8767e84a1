#include "laughtrack/audio_features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace laughtrack::audio {

namespace {

struct Stats {
    double mean = 0.0;
    double sd = 0.0;  // population
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

FeatureAnnotation word_flag(FeatureKind kind, std::size_t at, double magnitude) {
    return {kind, {static_cast<int>(at)}, magnitude, false};
}

}  // namespace

double syllables_per_minute(int syllables, double duration_s) {
    return static_cast<double>(syllables) * 60.0 / std::max(duration_s, 0.001);
}

WordAcoustics word_acoustics(const WordToken& word, const FrameSeries& frames) {
    WordAcoustics wa;
    wa.spm = syllables_per_minute(word.syllables, word.end_s - word.start_s);
    if (frames.size() == 0) {
        wa.mean_db = 20.0 * std::log10(kDbEpsilon);
        return wa;
    }

    std::vector<std::size_t> picked;
    // Frame centers are i*hop + window/2; solve for the index range.
    const double first = std::ceil((word.start_s - frames.window_s / 2.0) / frames.hop_s - 1e-9);
    const double last = std::floor((word.end_s - frames.window_s / 2.0) / frames.hop_s + 1e-9);
    for (double i = std::max(0.0, first); i <= last && i < static_cast<double>(frames.size()); i += 1.0)
        picked.push_back(static_cast<std::size_t>(i));
    if (picked.empty()) {
        const double mid = (word.start_s + word.end_s) / 2.0;
        double idx = std::round((mid - frames.window_s / 2.0) / frames.hop_s);
        idx = std::clamp(idx, 0.0, static_cast<double>(frames.size() - 1));
        picked.push_back(static_cast<std::size_t>(idx));
    }

    double rms_sum = 0.0, f0_sum = 0.0;
    double f0_lo = std::numeric_limits<double>::infinity(), f0_hi = -f0_lo;
    int voiced = 0;
    for (auto i : picked) {
        rms_sum += frames.rms[i];
        if (const auto& f = frames.f0_hz[i]) {
            f0_sum += *f;
            f0_lo = std::min(f0_lo, *f);
            f0_hi = std::max(f0_hi, *f);
            ++voiced;
        }
    }
    wa.mean_rms = rms_sum / static_cast<double>(picked.size());
    wa.mean_db = 20.0 * std::log10(wa.mean_rms + kDbEpsilon);
    if (voiced > 0) {
        wa.mean_f0 = f0_sum / voiced;
        wa.f0_range = f0_hi - f0_lo;
    }
    return wa;
}

std::vector<WordAcoustics> sentence_acoustics(const Sentence& sentence, const FrameSeries& frames) {
    std::vector<WordAcoustics> out;
    out.reserve(sentence.tokens.size());
    for (const auto& t : sentence.tokens) out.push_back(word_acoustics(t, frames));
    return out;
}

std::vector<FeatureAnnotation> detect_speed_variation(const Sentence& sentence,
                                                      std::span<const WordAcoustics> acoustics,
                                                      const ThresholdConfig& config) {
    std::vector<FeatureAnnotation> out;
    const std::size_t n = std::min(sentence.tokens.size(), acoustics.size());
    if (n < 2) return out;
    std::vector<double> spm;
    for (std::size_t i = 0; i < n; ++i) spm.push_back(acoustics[i].spm);
    const Stats s = stats_of(spm);
    if (!(s.mean > 0.0)) return out;
    // With zero spread every word sits at mean +- M*sd; only the ratio test applies.
    const bool spread = s.sd > 1e-9 * s.mean;
    const double fast_ratio = (1.0 + config.speed_N) * s.mean;
    const double slow_ratio = s.mean / (1.0 + config.speed_N);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = spm[i];
        if (v >= fast_ratio || (spread && v >= s.mean + config.speed_M * s.sd))
            out.push_back(word_flag(FeatureKind::faster, i, v / s.mean));
        else if (v <= slow_ratio || (spread && v <= s.mean - config.speed_M * s.sd))
            out.push_back(word_flag(FeatureKind::slower, i, v / s.mean));
    }
    return out;
}

std::vector<FeatureAnnotation> detect_pauses(std::span<const WordToken> tokens, const ThresholdConfig& config) {
    std::vector<FeatureAnnotation> out;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const double gap = tokens[i].start_s - tokens[i - 1].end_s;
        if (gap > config.pause_min_s) out.push_back(word_flag(FeatureKind::pause, i, gap));
    }
    return out;
}

std::vector<std::vector<FeatureAnnotation>> detect_snippet_pauses(const Snippet& snippet,
                                                                  const ThresholdConfig& config) {
    std::vector<WordToken> flat;
    std::vector<std::pair<std::size_t, int>> where;  // (sentence, word) per flat index
    for (std::size_t s = 0; s < snippet.sentences.size(); ++s)
        for (std::size_t w = 0; w < snippet.sentences[s].tokens.size(); ++w) {
            flat.push_back(snippet.sentences[s].tokens[w]);
            where.emplace_back(s, static_cast<int>(w));
        }
    std::vector<std::vector<FeatureAnnotation>> out(snippet.sentences.size());
    for (auto a : detect_pauses(flat, config)) {
        auto [s, w] = where[static_cast<std::size_t>(a.targets.front())];
        a.targets = {w};
        out[s].push_back(std::move(a));
    }
    return out;
}

std::vector<FeatureAnnotation> detect_volume_variation(const Sentence& sentence,
                                                       std::span<const WordAcoustics> acoustics,
                                                       const ThresholdConfig& config) {
    std::vector<FeatureAnnotation> out;
    const std::size_t n = std::min(sentence.tokens.size(), acoustics.size());
    for (std::size_t i = 1; i < n; ++i) {
        const double delta = acoustics[i].mean_db - acoustics[i - 1].mean_db;
        if (delta >= config.volume_delta_db) out.push_back(word_flag(FeatureKind::louder, i, delta));
        else if (delta <= -config.volume_delta_db) out.push_back(word_flag(FeatureKind::softer, i, delta));
    }
    return out;
}

std::vector<FeatureAnnotation> detect_pitch_stress(const Sentence& sentence,
                                                   std::span<const WordAcoustics> acoustics,
                                                   const ThresholdConfig& config) {
    std::vector<FeatureAnnotation> out;
    const std::size_t n = std::min(sentence.tokens.size(), acoustics.size());
    std::vector<std::size_t> voiced;
    std::vector<double> f0, range;
    for (std::size_t i = 0; i < n; ++i)
        if (acoustics[i].mean_f0) {
            voiced.push_back(i);
            f0.push_back(*acoustics[i].mean_f0);
            range.push_back(acoustics[i].f0_range.value_or(0.0));
        }
    if (voiced.size() < 2) return out;
    const Stats sf = stats_of(f0), sr = stats_of(range);
    const bool f0_spread = sf.sd >= kMinPitchSpreadHz;
    const bool range_spread = sr.sd >= kMinPitchSpreadHz;
    for (std::size_t k = 0; k < voiced.size(); ++k) {
        const double zf = f0_spread ? (f0[k] - sf.mean) / sf.sd : 0.0;
        const double zr = range_spread ? (range[k] - sr.mean) / sr.sd : 0.0;
        const bool high = f0_spread && f0[k] >= sf.mean + config.pitch_M * sf.sd;
        const bool varied = range_spread && range[k] >= sr.mean + config.pitch_M * sr.sd;
        if (high || varied) out.push_back(word_flag(FeatureKind::stress, voiced[k], std::max(zf, zr)));
    }
    return out;
}

}  // namespace laughtrack::audio
