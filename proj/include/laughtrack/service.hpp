#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laughtrack/annotation.hpp"
#include "laughtrack/document.hpp"
#include "laughtrack/lexicon.hpp"
#include "laughtrack/pipeline.hpp"
#include "laughtrack/store.hpp"

namespace laughtrack {

struct HumorFocusFilter {
    std::optional<int> min_context;
    std::optional<int> max_context;
    std::vector<FeatureKind> text_kinds;   // punchline needs at least one of these
    std::vector<FeatureKind> audio_kinds;  // and at least one of these
    std::optional<std::string> keyword;

    // Rejects negative or inverted bounds and kinds listed under the wrong
    // modality.
    void validate() const;
};

// Whether one snippet passes the filter (which must be valid).
bool snippet_matches(const AnalyzedSnippet& snippet, const HumorFocusFilter& filter);

struct SpeechListing {
    SpeechMeta meta;
    int laughter_count = 0;
    std::vector<double> barcode;  // punchline times / duration
    int version = 0;
};

enum class SortKey { laughter_count, views, title, duration };
SortKey parse_sort_key(std::string_view name);

// The query surface shared by the HTTP server and the CLI.
class Service {
public:
    Service(SpeechStore& store, const lexicon::LexiconSet& lex, AnalysisConfig defaults = {});

    // Runs the pipeline and persists the result; returns the speech id.
    std::string ingest(const BundleInputs& bundle, const std::optional<AnalysisConfig>& config = std::nullopt);

    // Stable sort (numeric keys descending, title ascending) over id order.
    // `query`, when set, keeps speeches whose title, speaker or category
    // contains it (case-insensitive).
    std::vector<SpeechListing> list(SortKey key, const std::optional<std::string>& query = std::nullopt) const;

    std::shared_ptr<const SpeechDocument> document(const std::string& id) const;
    summary::TimeMatrixSummary summary(const std::string& id, std::optional<double> resolution_s) const;
    std::vector<int> filter_snippets(const std::string& id, const HumorFocusFilter& filter) const;
    const AnalyzedSnippet& snippet(const SpeechDocument& doc, int index) const;
    std::vector<summary::Occurrence> occurrences(const std::string& id, const std::string& keyword) const;
    // WAV bytes of one sentence.
    std::string audio_clip(const std::string& id, int snippet_index, int sentence_index) const;
    // Returns the new version.
    int recompute(const std::string& id, const ThresholdConfig& thresholds);

    SpeechStore& store() { return store_; }
    const lexicon::LexiconSet& lexicons() const { return lex_; }
    const AnalysisConfig& defaults() const { return defaults_; }

private:
    SpeechStore& store_;
    const lexicon::LexiconSet& lex_;
    AnalysisConfig defaults_;
};

Json to_json(const SpeechListing& l);
Json snippet_detail_json(const AnalyzedSnippet& s);

}  // namespace laughtrack
