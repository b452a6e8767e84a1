#include "laughtrack/frames.hpp"

#include <algorithm>
#include <cmath>

#include "laughtrack/error.hpp"

namespace laughtrack::audio {

namespace {

struct Layout {
    std::size_t count = 0;
    std::size_t hop = 0;
    std::size_t window = 0;
};

Layout layout_for(const AudioTrack& track, const FrameParams& params) {
    if (track.samples.empty() || track.sample_rate <= 0)
        throw ValidationError("audio-features", "cannot analyze an empty track");
    Layout l;
    l.hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(params.hop_s * track.sample_rate)));
    l.window = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(params.window_s * track.sample_rate)));
    l.count = static_cast<std::size_t>(std::ceil(track.duration() / params.hop_s - 1e-9));
    l.count = std::max<std::size_t>(l.count, 1);
    return l;
}

FrameSeries empty_series(const Layout& l, const FrameParams& params) {
    FrameSeries fs;
    fs.hop_s = params.hop_s;
    fs.window_s = params.window_s;
    fs.rms.resize(l.count);
    fs.f0_hz.resize(l.count);
    return fs;
}

FrameValue frame_at(const AudioTrack& track, const Layout& l, const FrameParams& params, std::size_t i) {
    const std::size_t begin = std::min(i * l.hop, track.samples.size());
    const std::size_t end = std::min(begin + l.window, track.samples.size());
    return analyze_window(track.samples.data() + begin, end - begin, track.sample_rate, params);
}

}  // namespace

FrameValue analyze_window(const float* x, std::size_t n, int sample_rate, const FrameParams& params) {
    FrameValue out;
    if (n == 0) return out;
    double energy = 0.0;
    for (std::size_t k = 0; k < n; ++k) energy += static_cast<double>(x[k]) * x[k];
    out.rms = std::sqrt(energy / static_cast<double>(n));
    if (out.rms < params.silence_rms) return out;

    const auto lag_min = static_cast<std::size_t>(std::floor(sample_rate / params.f0_max_hz));
    const auto lag_max = static_cast<std::size_t>(std::ceil(sample_rate / params.f0_min_hz));
    // Need at least one full period of the lowest pitch left over at lag_max.
    if (lag_min < 1 || n < lag_max + lag_max / 2 + 2) return out;

    // Normalized cross-correlation of the window with its own lagged copy,
    // one extra lag on each side for peak detection.
    const std::size_t lo = lag_min - 1, hi = lag_max + 1;
    std::vector<double> r(hi - lo + 1, 0.0);
    for (std::size_t lag = lo; lag <= hi; ++lag) {
        double xy = 0.0, xx = 0.0, yy = 0.0;
        for (std::size_t k = 0; k + lag < n; ++k) {
            const double a = x[k], b = x[k + lag];
            xy += a * b;
            xx += a * a;
            yy += b * b;
        }
        r[lag - lo] = (xx > 0.0 && yy > 0.0) ? xy / std::sqrt(xx * yy) : 0.0;
    }

    double global = 0.0;
    for (std::size_t lag = lag_min; lag <= lag_max; ++lag) global = std::max(global, r[lag - lo]);
    if (global < params.clarity_min) return out;

    // Earliest local maximum close to the best one; avoids octave errors
    // from picking a multiple of the true period.
    for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
        const double c = r[lag - lo], left = r[lag - lo - 1], right = r[lag - lo + 1];
        if (c < left || c < right || c < 0.9 * global) continue;
        double shift = 0.0;
        const double denom = left - 2.0 * c + right;
        if (denom < 0.0) shift = std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
        const double f0 = sample_rate / (static_cast<double>(lag) + shift);
        if (c >= params.clarity_min && f0 >= params.f0_min_hz * 0.99 && f0 <= params.f0_max_hz * 1.01)
            out.f0_hz = std::clamp(f0, params.f0_min_hz, params.f0_max_hz);
        break;
    }
    return out;
}

FrameSeries analyze_frames(const AudioTrack& track, const FrameParams& params) {
    const Layout l = layout_for(track, params);
    FrameSeries fs = empty_series(l, params);
    const auto count = static_cast<long long>(l.count);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
        auto v = frame_at(track, l, params, static_cast<std::size_t>(i));
        fs.rms[static_cast<std::size_t>(i)] = v.rms;
        fs.f0_hz[static_cast<std::size_t>(i)] = v.f0_hz;
    }
    return fs;
}

FrameSeries analyze_frames_serial(const AudioTrack& track, const FrameParams& params) {
    const Layout l = layout_for(track, params);
    FrameSeries fs = empty_series(l, params);
    for (std::size_t i = 0; i < l.count; ++i) {
        auto v = frame_at(track, l, params, i);
        fs.rms[i] = v.rms;
        fs.f0_hz[i] = v.f0_hz;
    }
    return fs;
}

}  // namespace laughtrack::audio
