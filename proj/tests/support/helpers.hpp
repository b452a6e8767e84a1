#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "laughtrack/lexicon.hpp"
#include "laughtrack/pipeline.hpp"
#include "laughtrack/text_util.hpp"
#include "laughtrack/types.hpp"

namespace testing {

namespace fs = std::filesystem;
using namespace laughtrack;

inline fs::path data_dir() { return LAUGHTRACK_DATA_DIR; }
inline fs::path fixture_dir(const std::string& name) { return data_dir() / "fixtures" / name; }
inline const char* kFixtures[] = {"cop-demo", "italy", "ted-spam"};

inline const lexicon::LexiconSet& bundled() {
    static const auto lex = lexicon::load_bundled(data_dir());
    return lex;
}

// Analyzed fixture under the default config, cached per name.
inline const SpeechDocument& fixture_doc(const std::string& name) {
    static std::map<std::string, SpeechDocument> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, analyze_bundle(read_bundle(fixture_dir(name)), bundled(), {}).document).first;
    return it->second;
}

// Sentence from whitespace-separated words, each 0.3 s long with 0.1 s gaps.
inline Sentence make_sentence(const std::string& text, double start = 0.0) {
    Sentence s;
    double t = start;
    for (auto w : text::split_ws(text)) {
        if (text::is_punctuation(w)) continue;
        WordToken tok;
        tok.surface = std::string(w);
        tok.norm = text::normalize_word(w);
        tok.sent_index = static_cast<int>(s.tokens.size());
        tok.start_s = t;
        tok.end_s = t + 0.3;
        t += 0.4;
        s.tokens.push_back(std::move(tok));
    }
    refresh_span(s);
    return s;
}

// Sine tone segments; `segments` holds (start_s, end_s, freq_hz, amplitude).
struct Segment {
    double start_s, end_s, hz, amp;
};

inline AudioTrack tones(double duration_s, const std::vector<Segment>& segments, int sample_rate = 16000) {
    AudioTrack t;
    t.sample_rate = sample_rate;
    t.samples.assign(static_cast<std::size_t>(std::llround(duration_s * sample_rate)), 0.0f);
    for (const auto& seg : segments) {
        auto i0 = static_cast<std::size_t>(std::llround(seg.start_s * sample_rate));
        auto i1 = std::min(t.samples.size(), static_cast<std::size_t>(std::llround(seg.end_s * sample_rate)));
        for (auto i = i0; i < i1; ++i)
            t.samples[i] = static_cast<float>(seg.amp * std::sin(2.0 * std::numbers::pi * seg.hz *
                                                                 static_cast<double>(i - i0) / sample_rate));
    }
    return t;
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "laughtrack-test-XXXXXX").string();
        path = ::mkdtemp(tmpl.data());
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace testing
