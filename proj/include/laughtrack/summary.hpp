#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "laughtrack/annotation.hpp"
#include "laughtrack/config.hpp"
#include "laughtrack/types.hpp"

namespace laughtrack::summary {

struct Keyword {
    std::string text;  // one or two words, lemma when known
    double score = 0.0;
    int snippet = 0;
    int frequency = 0;  // occurrences across the whole speech
    double anchor_time_s = 0.0;

    friend bool operator==(const Keyword&, const Keyword&) = default;
};

struct Occurrence {
    int snippet = 0;  // -1 for the unsnippeted tail
    int sentence = 0;
    int token = 0;
    double time_s = 0.0;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Undirected co-occurrence graph over a snippet's content words: two
// distinct words are linked with weight equal to the number of times they
// appear within `window` positions of each other in the content-word
// sequence.
struct CooccurrenceGraph {
    std::vector<std::string> nodes;  // first-appearance order
    std::vector<std::vector<std::pair<int, double>>> adjacency;
};

// Lemma when the token carries one, else the normalized word.
std::string term_of(const WordToken& token);

CooccurrenceGraph cooccurrence_graph(const Snippet& snippet, int window);

struct RankResult {
    std::vector<double> scores;  // divided by the maximum
    int iterations = 0;
    double final_delta = 0.0;
};

// s <- (1 - d) + d * sum_j w_ij / W_j * s_j from all-ones, stopping when
// the largest change drops below the tolerance or after max_iterations.
RankResult textrank(const CooccurrenceGraph& graph, const TextRankParams& params);

// Top keywords of one snippet; frequency is left at zero for the caller
// to fill from keyword_occurrences.
std::vector<Keyword> extract_keywords(const Snippet& snippet, const TextRankParams& params);

// Case-insensitive matches on lemma or normalized word; a two-word keyword
// matches adjacent tokens within a sentence. Time-ordered.
std::vector<Occurrence> keyword_occurrences(const std::vector<Snippet>& snippets, const std::vector<Sentence>& tail,
                                            std::string_view keyword);

struct PunchlineRow {
    int snippet = 0;
    double time_s = 0.0;
    int text_count = 0;
    int audio_count = 0;
    KindCounts counts{};

    friend bool operator==(const PunchlineRow&, const PunchlineRow&) = default;
};

struct Band {
    double start_s = 0.0;
    double end_s = 0.0;
    std::vector<int> punchlines;  // indices into TimeMatrixSummary::punchlines

    friend bool operator==(const Band&, const Band&) = default;
};

struct TimeMatrixSummary {
    double duration_s = 0.0;
    std::vector<PunchlineRow> punchlines;
    KindCounts feature_totals{};
    std::vector<Keyword> keywords;
    std::vector<Band> merged_bands;
    double merge_resolution_s = 0.0;

    friend bool operator==(const TimeMatrixSummary&, const TimeMatrixSummary&) = default;
};

struct PunchlineInput {
    int snippet = 0;
    double time_s = 0.0;  // end of the punchline sentence
    const std::vector<FeatureAnnotation>* annotations = nullptr;
};

PunchlineRow tally(int snippet, double time_s, const std::vector<FeatureAnnotation>& annotations);

// Consecutive punchlines closer than `resolution_s` share a band.
std::vector<Band> merge_bands(const std::vector<PunchlineRow>& rows, double resolution_s);

TimeMatrixSummary build_time_matrix(double duration_s, const std::vector<PunchlineInput>& punchlines,
                                    std::vector<Keyword> keywords, double resolution_s);

}  // namespace laughtrack::summary
