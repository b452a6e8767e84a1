#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "laughtrack/config.hpp"
#include "laughtrack/conllu.hpp"
#include "laughtrack/lexicon.hpp"
#include "laughtrack/types.hpp"

namespace laughtrack::graph {

struct PhraseSpan {
    int sentence = 0;  // index within the snippet
    int first = 0;     // inclusive word range
    int last = 0;
    std::string text;
    std::string substituted_text;
    std::optional<lexicon::Vector> vector;

    int length() const { return last - first + 1; }
    friend bool operator==(const PhraseSpan&, const PhraseSpan&) = default;
};

// ---------------------------------------------------------------------------
// Subphrases

// For every noun, verb or copular-predicate head: the head alone, its full
// subtree span, its nominal core (head plus adjacent det/amod/compound
// dependents) and, for verbs, the head through its right-side arguments.
// Spans over max_len words fall back to the nominal core; non-contiguous
// spans are skipped; identical ranges are emitted once, ordered by
// (first, last).
std::vector<PhraseSpan> induce_subphrases(const WordTree& tree, const Sentence& sentence, int sentence_index,
                                          int max_len);

// Used when no parse is supplied: each content word, plus every window of
// two or three words that starts and ends on a content word.
std::vector<PhraseSpan> fallback_subphrases(const Sentence& sentence, int sentence_index);

// ---------------------------------------------------------------------------
// Coreference

struct Mention {
    int sentence = 0;  // transcript sentence position (Sentence::line)
    int first = 0;
    int last = 0;
    friend bool operator==(const Mention&, const Mention&) = default;
};

struct CorefChain {
    int id = 0;
    std::string representative;
    std::vector<Mention> mentions;
    friend bool operator==(const CorefChain&, const CorefChain&) = default;
};

// `rep_text<TAB>sent:first-last;sent:first-last;...`, 0-based sentence and
// inclusive word indices. Rejects chains with fewer than two mentions.
std::vector<CorefChain> parse_coref(std::string_view bytes);

// Rejects mentions outside the transcript.
void check_chains(const std::vector<CorefChain>& chains, const std::vector<const Sentence*>& sentences);

// Links each third-person pronoun to the nearest preceding noun-phrase head
// in the same sentence or the two before it. `sentences` is the transcript
// order; heads are NOUN/PROPN tokens, or capitalized non-stopwords when
// untagged.
std::vector<CorefChain> fallback_chains(const std::vector<const Sentence*>& sentences);

bool is_pronoun(std::string_view norm);
bool is_possessive_pronoun(std::string_view norm);

// Representative as a replacement for a pronoun: the modifier form for
// possessives ("the Italian community" -> "Italian"), otherwise the phrase
// without leading determiners.
std::string substitute_for(std::string_view pronoun_norm, std::string_view representative);

// Fills substituted_text: pronouns covered by a chain mention are replaced
// by substitute_for(). Mentions address sentences by Sentence::line.
void apply_coreference(std::vector<PhraseSpan>& spans, const std::vector<const Sentence*>& snippet_sentences,
                       const std::vector<CorefChain>& chains);

// The substituted text of one span; when `tokens` is given it receives the
// words to embed (original words keep their tags, replacements are untagged).
std::string substitute_span(const PhraseSpan& span, const Sentence& sentence, const std::vector<CorefChain>* chains,
                            std::vector<lexicon::PhraseToken>* tokens);

// ---------------------------------------------------------------------------
// Clustering

// Density clustering with distance 1 - cosine similarity. Neighbourhoods are
// inclusive (d <= eps) and count the point itself. Returns a label per
// point, -1 for noise; labels number clusters in discovery order.
std::vector<int> dbscan(const std::vector<lexicon::Vector>& points, double eps, int min_pts);

struct ConceptCluster {
    int id = 0;
    int color = 0;
    std::vector<PhraseSpan> members;  // one per sentence, sentence order
    friend bool operator==(const ConceptCluster&, const ConceptCluster&) = default;
};

struct ContextLink {
    int from = 0;  // sentence indices within the snippet, from < to
    int to = 0;
    int cluster = 0;
    friend bool operator==(const ContextLink&, const ContextLink&) = default;
};

inline constexpr int kPaletteSize = 8;

// `labels` from dbscan over `spans`. Keeps, per sentence, the member closest
// to the cluster centroid (ties: longer span, then earlier); drops clusters
// left inside one sentence; renumbers by first occurrence.
std::vector<ConceptCluster> reduce_redundancy(const std::vector<PhraseSpan>& spans, const std::vector<int>& labels);

std::vector<ContextLink> links_for(const std::vector<ConceptCluster>& clusters);

struct SentenceNode {
    int sentence = 0;
    int length = 0;  // word count
    bool punchline = false;
    friend bool operator==(const SentenceNode&, const SentenceNode&) = default;
};

struct ContextGraph {
    int snippet = 0;
    std::vector<SentenceNode> nodes;
    std::vector<PhraseSpan> spans;  // every embedded candidate, for inspection
    std::vector<ConceptCluster> clusters;
    std::vector<ContextLink> links;
    friend bool operator==(const ContextGraph&, const ContextGraph&) = default;
};

struct GraphInputs {
    const Snippet* snippet = nullptr;
    // One entry per snippet sentence; absent entries use the fallback spans.
    std::vector<std::optional<WordTree>> trees;
    const std::vector<CorefChain>* chains = nullptr;
    const lexicon::PhraseEmbeddings* phrases = nullptr;  // overrides mean pooling when it covers a phrase
};

// Vector for the phrase's substituted words: the precomputed row keyed by
// phrase_key() when supplied, else mean pooling. Uncovered phrases are
// dropped when the precomputed rows live in a different dimension.
std::optional<lexicon::Vector> embed_phrase(const std::vector<lexicon::PhraseToken>& tokens,
                                            const lexicon::LexiconSet& lex,
                                            const lexicon::PhraseEmbeddings* phrases);

ContextGraph build_context_graph(const GraphInputs& inputs, const lexicon::LexiconSet& lex,
                                 const AnalysisConfig& config);

}  // namespace laughtrack::graph
