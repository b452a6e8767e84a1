#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laughtrack/annotation.hpp"
#include "laughtrack/config.hpp"
#include "laughtrack/lexicon.hpp"
#include "laughtrack/types.hpp"

namespace laughtrack::features {

// Positions of the sentence's content words, in order.
std::vector<int> content_positions(const Sentence& sentence);

// Least similar pair of in-vocabulary content words; emitted only when the
// similarity is at most disconnect_max_sim (and that threshold is non-zero).
std::optional<FeatureAnnotation> detect_disconnection(const Sentence& sentence,
                                                      const lexicon::LexiconSet& lex,
                                                      const ThresholdConfig& config);

// Most similar content-word pair; identical normalized words score 1.0 even
// when out of vocabulary. Emitted when the similarity reaches repeat_min_sim.
std::optional<FeatureAnnotation> detect_intra_repetition(const Sentence& sentence,
                                                         const lexicon::LexiconSet& lex,
                                                         const ThresholdConfig& config);

std::vector<FeatureAnnotation> annotate_sentiment(const Sentence& sentence, const lexicon::LexiconSet& lex);

// Phones come from the token (filled at ingest) or, failing that, the lexicon.
std::vector<FeatureAnnotation> detect_alliteration(const Sentence& sentence, const lexicon::LexiconSet& lex);
std::vector<FeatureAnnotation> detect_rhyme(const Sentence& sentence, const lexicon::LexiconSet& lex);

// Phones from the last primary-stressed vowel to the end, stress digits
// removed and joined by '-'. Falls back to the last secondary-stressed
// vowel; empty when no vowel carries stress.
std::string rhyme_key(const std::vector<std::string>& phones);
std::string strip_stress(const std::string& phone);

std::vector<FeatureAnnotation> annotate_sentence_text(const Sentence& sentence,
                                                      const lexicon::LexiconSet& lex,
                                                      const ThresholdConfig& config);

}  // namespace laughtrack::features
