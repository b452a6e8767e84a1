#pragma once

#include <string>

#include "laughtrack/document.hpp"

namespace laughtrack::render {

// Short tag printed after annotated words, e.g. "pol" or "stress".
std::string_view tag_of(FeatureKind kind);

// One sentence with inline tags: annotated words get a {tag,...} suffix and
// pauses are drawn as "|0.62s|" between the two words they separate.
std::string inline_sentence(const Sentence& sentence, const std::vector<FeatureAnnotation>& annotations);

// Plain-text rendering of a whole document for terminals.
std::string document_text(const SpeechDocument& doc);

}  // namespace laughtrack::render
