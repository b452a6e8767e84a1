#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace laughtrack {

// Order matters: annotations are sorted by kind, and the per-kind count
// arrays in summaries follow this order.
enum class FeatureKind {
    disconnection,
    intra_repetition,
    polarity,
    subjectivity,
    alliteration,
    rhyme,
    faster,
    slower,
    pause,
    louder,
    softer,
    stress,
};

inline constexpr std::size_t kFeatureKindCount = 12;

inline constexpr std::array<FeatureKind, kFeatureKindCount> kAllKinds = {
    FeatureKind::disconnection, FeatureKind::intra_repetition, FeatureKind::polarity,
    FeatureKind::subjectivity,  FeatureKind::alliteration,     FeatureKind::rhyme,
    FeatureKind::faster,        FeatureKind::slower,           FeatureKind::pause,
    FeatureKind::louder,        FeatureKind::softer,           FeatureKind::stress,
};

std::string_view to_string(FeatureKind kind);
std::optional<FeatureKind> parse_kind(std::string_view name);

bool is_text_kind(FeatureKind kind);
inline bool is_audio_kind(FeatureKind kind) { return !is_text_kind(kind); }
// Kinds whose targets are exactly two word positions.
bool is_pair_kind(FeatureKind kind);
// Kinds whose targets form a chain of two or more positions.
bool is_chain_kind(FeatureKind kind);

struct FeatureAnnotation {
    FeatureKind kind = FeatureKind::disconnection;
    std::vector<int> targets;  // word indices within the sentence, strictly increasing
    double magnitude = 0.0;
    bool sentence_flag = false;

    friend bool operator==(const FeatureAnnotation&, const FeatureAnnotation&) = default;
};

// Stable sort by (kind, first target).
void sort_annotations(std::vector<FeatureAnnotation>& annotations);

// Empty string when the annotation is well formed for a sentence of
// `sentence_length` words, otherwise a description of the problem.
std::string check_annotation(const FeatureAnnotation& a, int sentence_length);

using KindCounts = std::array<int, kFeatureKindCount>;

inline std::size_t kind_index(FeatureKind kind) { return static_cast<std::size_t>(kind); }

}  // namespace laughtrack
