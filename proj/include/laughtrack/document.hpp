#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "laughtrack/annotation.hpp"
#include "laughtrack/audio_features.hpp"
#include "laughtrack/config.hpp"
#include "laughtrack/context_graph.hpp"
#include "laughtrack/summary.hpp"
#include "laughtrack/types.hpp"

namespace laughtrack {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

struct AnalyzedSnippet {
    Snippet snippet;
    // Parallel to snippet.sentences (and, inside, to each sentence's tokens).
    std::vector<std::vector<audio::WordAcoustics>> acoustics;
    std::vector<std::optional<graph::WordTree>> trees;
    std::vector<std::vector<FeatureAnnotation>> annotations;
    graph::ContextGraph graph;
    std::vector<summary::Keyword> keywords;

};

// Everything needed to re-render a speech, and to re-run every detector
// without the audio or the original parses.
struct SpeechDocument {
    int schema_version = kSchemaVersion;
    int version = 1;
    SpeechMeta meta;
    AnalysisConfig config;
    std::vector<AnalyzedSnippet> snippets;
    std::vector<Sentence> tail;
    std::vector<graph::CorefChain> chains;
    bool chains_supplied = false;  // false: chains came from the fallback resolver
    std::map<std::string, lexicon::Vector> phrase_rows;
    summary::TimeMatrixSummary summary;
    bool audio_retained = false;

    int laughter_count() const { return static_cast<int>(snippets.size()); }
};

Json to_json(const SpeechMeta& meta);
Json to_json(const AnalysisConfig& config);
Json to_json(const ThresholdConfig& config);
Json to_json(const FeatureAnnotation& a);
Json to_json(const Sentence& s);
Json to_json(const graph::ContextGraph& g);
Json to_json(const summary::Keyword& k);
Json to_json(const summary::TimeMatrixSummary& s);
Json to_json(const AnalyzedSnippet& s);
Json to_json(const SpeechDocument& doc);

SpeechMeta meta_from_json(const Json& j);
ThresholdConfig thresholds_from_json(const Json& j, ThresholdConfig base = {});
AnalysisConfig config_from_json(const Json& j);
summary::TimeMatrixSummary summary_from_json(const Json& j);
// Throws ValidationError("service", ...) on a schema mismatch or a malformed
// document.
SpeechDocument document_from_json(const Json& j);

std::string serialize(const SpeechDocument& doc);
SpeechDocument deserialize(const std::string& text);

}  // namespace laughtrack
