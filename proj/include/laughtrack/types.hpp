#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace laughtrack {

struct SpeechMeta {
    std::string id;
    std::string title;
    std::string speaker;
    std::string category;
    std::uint64_t views = 0;
    double duration_s = 0.0;
};

struct WordToken {
    std::string surface;
    std::string norm;
    int sent_index = 0;  // position within its sentence
    double start_s = 0.0;
    double end_s = 0.0;
    std::vector<std::string> phones;
    int syllables = 1;
    std::optional<std::string> pos;  // universal POS tag when a parse is supplied
    std::optional<std::string> lemma;
    bool interpolated = false;  // timing filled in rather than read from the alignment
};

struct SentenceId {
    int snippet = -1;  // -1 while unsegmented or in the trailing tail
    int sentence = 0;

    friend bool operator==(const SentenceId&, const SentenceId&) = default;
    friend auto operator<=>(const SentenceId&, const SentenceId&) = default;
};

struct TimeSpan {
    double start = 0.0;
    double end = 0.0;

    double length() const { return end - start; }
    friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

struct Sentence {
    SentenceId id;
    int line = 0;  // 0-based position in the transcript's sentence sequence
    std::vector<WordToken> tokens;
    bool is_punchline = false;
    TimeSpan span_s;

    std::string text() const;
};

struct Snippet {
    int index = 0;
    std::vector<Sentence> sentences;
    TimeSpan span_s;

    const Sentence& punchline() const { return sentences.back(); }
    int context_length() const { return static_cast<int>(sentences.size()) - 1; }
};

struct LaughterEvent {
    double time_s = 0.0;
    int after_sentence = 0;  // transcript sentence line the marker follows
};

struct AudioTrack {
    std::vector<float> samples;  // mono, [-1, 1]
    int sample_rate = 0;

    double duration() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// Recomputes span_s from the tokens.
void refresh_span(Sentence& sentence);

}  // namespace laughtrack
