#include "laughtrack/config.hpp"

#include <cmath>

#include "laughtrack/error.hpp"
#include "laughtrack/text_util.hpp"

namespace laughtrack {

namespace {

[[noreturn]] void bad(const std::string& why) { throw ValidationError("service", "config: " + why); }

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) bad(std::string(name) + " must be positive");
}

}  // namespace

void ThresholdConfig::validate() const {
    if (!(disconnect_max_sim >= 0.0) || !std::isfinite(disconnect_max_sim))
        bad("disconnect_max_sim must be non-negative");
    require_positive(repeat_min_sim, "repeat_min_sim");
    if (!(disconnect_max_sim < repeat_min_sim)) bad("disconnect_max_sim must be below repeat_min_sim");
    require_positive(speed_N, "speed_N");
    require_positive(speed_M, "speed_M");
    require_positive(pause_min_s, "pause_min_s");
    require_positive(volume_delta_db, "volume_delta_db");
    require_positive(pitch_M, "pitch_M");
    require_positive(cluster_eps, "cluster_eps");
    if (cluster_eps > 2.0) bad("cluster_eps is a cosine distance and cannot exceed 2");
    if (cluster_min_pts < 1) bad("cluster_min_pts must be at least 1");
}

void AnalysisConfig::validate() const {
    thresholds.validate();
    require_positive(frames.hop_s, "hop_s");
    require_positive(frames.window_s, "window_s");
    require_positive(frames.f0_min_hz, "f0_min_hz");
    if (!(frames.f0_max_hz > frames.f0_min_hz)) bad("f0_max_hz must exceed f0_min_hz");
    if (!(frames.clarity_min >= 0.0 && frames.clarity_min <= 1.0)) bad("clarity_min must lie in [0, 1]");
    if (!(frames.silence_rms >= 0.0)) bad("silence_rms must be non-negative");
    if (textrank.window < 2) bad("textrank window must be at least 2");
    if (!(textrank.damping > 0.0 && textrank.damping < 1.0)) bad("textrank damping must lie in (0, 1)");
    require_positive(textrank.tolerance, "textrank tolerance");
    if (textrank.max_iterations < 1) bad("textrank max_iterations must be at least 1");
    if (textrank.top_k < 1) bad("textrank top_k must be at least 1");
    if (max_subphrase_len < 1) bad("max_subphrase_len must be at least 1");
    if (!(merge_resolution_s >= 0.0)) bad("merge_resolution_s must be non-negative");
}

void apply_override(AnalysisConfig& config, std::string_view assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string_view::npos) bad("override '" + std::string(assignment) + "' is not name=value");
    auto name = std::string(text::trim(assignment.substr(0, eq)));
    auto value = text::trim(assignment.substr(eq + 1));

    auto& t = config.thresholds;
    auto set_real = [&](double& field) {
        if (!text::parse_double(value, field)) bad("value for " + name + " is not a number");
    };
    auto set_int = [&](int& field) {
        long long v = 0;
        if (!text::parse_int(value, v)) bad("value for " + name + " is not an integer");
        field = static_cast<int>(v);
    };

    if (name == "disconnect_max_sim") set_real(t.disconnect_max_sim);
    else if (name == "repeat_min_sim") set_real(t.repeat_min_sim);
    else if (name == "speed_N") set_real(t.speed_N);
    else if (name == "speed_M") set_real(t.speed_M);
    else if (name == "pause_min_s") set_real(t.pause_min_s);
    else if (name == "volume_delta_db") set_real(t.volume_delta_db);
    else if (name == "pitch_M") set_real(t.pitch_M);
    else if (name == "cluster_eps") set_real(t.cluster_eps);
    else if (name == "cluster_min_pts") set_int(t.cluster_min_pts);
    else if (name == "max_subphrase_len") set_int(config.max_subphrase_len);
    else if (name == "merge_resolution_s") set_real(config.merge_resolution_s);
    else if (name == "textrank_window") set_int(config.textrank.window);
    else if (name == "textrank_damping") set_real(config.textrank.damping);
    else if (name == "textrank_tolerance") set_real(config.textrank.tolerance);
    else if (name == "textrank_max_iterations") set_int(config.textrank.max_iterations);
    else if (name == "top_k") set_int(config.textrank.top_k);
    else bad("unknown setting '" + name + "'");
}

}  // namespace laughtrack
