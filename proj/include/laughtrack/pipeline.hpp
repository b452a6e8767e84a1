#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "laughtrack/document.hpp"
#include "laughtrack/lexicon.hpp"

namespace laughtrack {

// Raw bytes of one speech's input files. The last three are optional.
struct BundleInputs {
    std::string transcript;
    std::string alignment;
    std::string audio;
    std::string meta;
    std::optional<std::string> conllu;
    std::optional<std::string> coref;
    std::optional<std::string> phrases;
};

// Reads transcript.txt, alignment.csv, audio.wav, meta.txt and, when
// present, parse.conllu, coref.tsv and phrases.csv. A missing required file
// is rejected by the stage that needs it.
BundleInputs read_bundle(const std::filesystem::path& dir);

struct IngestResult {
    SpeechDocument document;
    AudioTrack audio;
};

// Full pipeline: parse and segment, attach parses and pronunciations,
// analyze audio, annotate, build graphs and the summary.
IngestResult analyze_bundle(const BundleInputs& bundle, const lexicon::LexiconSet& lex, const AnalysisConfig& config);

// Re-runs detectors, clustering and summaries from the stored tokens,
// acoustics, trees and chains. Increments the version.
SpeechDocument recompute(const SpeechDocument& doc, const lexicon::LexiconSet& lex, const ThresholdConfig& thresholds);

// Annotations, graphs, keywords and summary from the document's stored
// inputs under doc.config. Used by both of the above.
void annotate_document(SpeechDocument& doc, const lexicon::LexiconSet& lex);

// The summary with bands regrouped at another resolution.
summary::TimeMatrixSummary summary_at(const SpeechDocument& doc, double resolution_s);

}  // namespace laughtrack
