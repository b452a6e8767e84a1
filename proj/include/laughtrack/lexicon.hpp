#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "laughtrack/types.hpp"

namespace laughtrack::lexicon {

using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Pronunciations: CMU Pronouncing Dictionary text format.

class PronunciationLexicon {
public:
    static PronunciationLexicon parse(std::string_view bytes);

    // Case-insensitive; nullptr when out of vocabulary.
    const std::vector<std::string>* find(std::string_view word) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, std::vector<std::string>> entries_;
};

// ---------------------------------------------------------------------------
// Sentiment clues: subjectivity-clues `key=value` format.

enum class Polarity { positive, negative, neutral, both };
enum class Strength { strong, weak };

struct SentimentClue {
    std::string word;
    std::optional<std::string> pos;  // clue POS (adj, noun, verb, adverb); absent = anypos
    Polarity polarity = Polarity::neutral;
    Strength strength = Strength::weak;
    bool subjective = false;
};

class SentimentLexicon {
public:
    static SentimentLexicon parse(std::string_view bytes);

    // First clue for `word` whose POS is compatible with the token's
    // universal POS tag. With no tag, the first clue for the word.
    const SentimentClue* find(std::string_view word, const std::optional<std::string>& upos) const;
    std::size_t size() const { return clues_.size(); }

private:
    std::vector<SentimentClue> clues_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_word_;
};

// ---------------------------------------------------------------------------
// Word vectors: `word v1 ... vd` text format (an optional `count dim` header
// line is skipped).

class VectorTable {
public:
    static VectorTable parse(std::string_view bytes);

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return index_.size(); }
    // Exact lowercase match, then the word with a possessive 's stripped.
    std::optional<std::span<const float>> find(std::string_view word) const;

    // Appends a vector; used by tests that build toy tables.
    void add(std::string word, std::span<const float> values);

private:
    std::size_t dim_ = 0;
    std::vector<float> data_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Precomputed phrase vectors keyed by phrase_key(); overrides mean pooling.
class PhraseEmbeddings {
public:
    static PhraseEmbeddings parse(std::string_view bytes);

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return rows_.size(); }
    const Vector* find_key(const std::string& key) const;
    void add(std::string key, Vector v);
    const std::unordered_map<std::string, Vector>& rows() const { return rows_; }

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, Vector> rows_;
};

// Hex FNV-1a of the normalized words joined by single spaces.
std::string phrase_key(const std::vector<std::string>& norms);

// ---------------------------------------------------------------------------

struct PhraseToken {
    std::string norm;
    std::optional<std::string> pos;
};

bool is_stopword(std::string_view norm);
bool is_content_pos(std::string_view upos);
// Content word: tagged NOUN/PROPN/VERB/ADJ/ADV when a tag is known,
// otherwise any non-stopword.
bool is_content(std::string_view norm, const std::optional<std::string>& pos);
bool is_content(const WordToken& token);

// Vowel-group count over [aeiouy], minus a silent final e on words longer
// than three letters, never below 1.
int heuristic_syllables(std::string_view word);

struct LoadReport {
    std::size_t pronunciations = 0;
    std::size_t sentiment_clues = 0;
    std::size_t vectors = 0;
    std::size_t dimension = 0;
};

class LexiconSet {
public:
    PronunciationLexicon pronunciations;
    SentimentLexicon sentiment;
    VectorTable vectors;
    std::optional<PhraseEmbeddings> phrases;

    LoadReport report() const;

    std::optional<std::vector<std::string>> phones_of(std::string_view word) const;
    int syllable_count(std::string_view word) const;
    std::optional<std::span<const float>> vector_of(std::string_view word) const { return vectors.find(word); }

    // Mean of the in-vocabulary content-word vectors; absent when none.
    std::optional<Vector> phrase_vector(std::span<const PhraseToken> tokens) const;
    std::optional<Vector> phrase_vector(std::span<const WordToken> tokens) const;
};

LexiconSet load_resources(const std::filesystem::path& pronunciations,
                          const std::filesystem::path& sentiment,
                          const std::filesystem::path& vectors);

// Standard bundled resource names under a data directory's lexicon/ folder.
LexiconSet load_bundled(const std::filesystem::path& data_dir);

std::string read_file(const std::filesystem::path& path);

// dot(a, b) / sqrt(|a|^2 |b|^2). Throws std::invalid_argument on a dimension
// mismatch or a zero-norm input. Identical inputs give exactly 1.
template <typename A, typename B>
double cosine_similarity(std::span<const A> a, std::span<const B> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine_similarity: dimension mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a[i], y = b[i];
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine_similarity: zero-norm vector");
    double c = dot / std::sqrt(na * nb);
    return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

inline double cosine_similarity(const Vector& a, const Vector& b) {
    return cosine_similarity(std::span<const double>(a), std::span<const double>(b));
}

}  // namespace laughtrack::lexicon
