#include "laughtrack/annotation.hpp"

#include <algorithm>

namespace laughtrack {

namespace {

constexpr std::array<std::string_view, kFeatureKindCount> kNames = {
    "disconnection", "intra_repetition", "polarity", "subjectivity", "alliteration", "rhyme",
    "faster",        "slower",           "pause",    "louder",       "softer",       "stress",
};

}  // namespace

std::string_view to_string(FeatureKind kind) { return kNames[kind_index(kind)]; }

std::optional<FeatureKind> parse_kind(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return kAllKinds[i];
    return std::nullopt;
}

bool is_text_kind(FeatureKind kind) { return kind_index(kind) <= kind_index(FeatureKind::rhyme); }

bool is_pair_kind(FeatureKind kind) {
    return kind == FeatureKind::disconnection || kind == FeatureKind::intra_repetition;
}

bool is_chain_kind(FeatureKind kind) {
    return kind == FeatureKind::alliteration || kind == FeatureKind::rhyme;
}

void sort_annotations(std::vector<FeatureAnnotation>& annotations) {
    std::stable_sort(annotations.begin(), annotations.end(),
                     [](const FeatureAnnotation& a, const FeatureAnnotation& b) {
                         if (a.kind != b.kind) return kind_index(a.kind) < kind_index(b.kind);
                         return a.targets.front() < b.targets.front();
                     });
}

std::string check_annotation(const FeatureAnnotation& a, int sentence_length) {
    if (a.targets.empty()) return "no targets";
    for (std::size_t i = 0; i < a.targets.size(); ++i) {
        if (a.targets[i] < 0 || a.targets[i] >= sentence_length) return "target out of range";
        if (i > 0 && a.targets[i] <= a.targets[i - 1]) return "targets not strictly increasing";
    }
    if (is_pair_kind(a.kind) && a.targets.size() != 2) return "pair kind without exactly two targets";
    if (is_chain_kind(a.kind) && a.targets.size() < 2) return "chain kind with fewer than two targets";
    return {};
}

}  // namespace laughtrack
