#include "laughtrack/service.hpp"

#include <algorithm>

#include "laughtrack/error.hpp"
#include "laughtrack/ingest.hpp"
#include "laughtrack/text_util.hpp"
#include "laughtrack/wav.hpp"

namespace laughtrack {

namespace {

[[noreturn]] void bad(const std::string& why) { throw ValidationError("service", why); }

bool has_any(const std::vector<FeatureAnnotation>& annotations, const std::vector<FeatureKind>& kinds) {
    return std::any_of(annotations.begin(), annotations.end(), [&](const FeatureAnnotation& a) {
        return std::find(kinds.begin(), kinds.end(), a.kind) != kinds.end();
    });
}

}  // namespace

void HumorFocusFilter::validate() const {
    if (min_context && *min_context < 0) bad("min_context must be non-negative");
    if (max_context && *max_context < 0) bad("max_context must be non-negative");
    if (min_context && max_context && *min_context > *max_context) bad("min_context exceeds max_context");
    for (auto k : text_kinds)
        if (!is_text_kind(k)) bad(std::string(to_string(k)) + " is not a text feature");
    for (auto k : audio_kinds)
        if (!is_audio_kind(k)) bad(std::string(to_string(k)) + " is not an audio feature");
}

bool snippet_matches(const AnalyzedSnippet& a, const HumorFocusFilter& f) {
    const int ctx = a.snippet.context_length();
    if (f.min_context && ctx < *f.min_context) return false;
    if (f.max_context && ctx > *f.max_context) return false;
    const auto& punch = a.annotations.back();
    if (!f.text_kinds.empty() && !has_any(punch, f.text_kinds)) return false;
    if (!f.audio_kinds.empty() && !has_any(punch, f.audio_kinds)) return false;
    if (f.keyword) {
        if (summary::keyword_occurrences({a.snippet}, {}, *f.keyword).empty()) return false;
    }
    return true;
}

SortKey parse_sort_key(std::string_view name) {
    if (name == "laughter_count") return SortKey::laughter_count;
    if (name == "views") return SortKey::views;
    if (name == "title") return SortKey::title;
    if (name == "duration") return SortKey::duration;
    bad("unknown sort key '" + std::string(name) + "' (laughter_count, views, title, duration)");
}

Service::Service(SpeechStore& store, const lexicon::LexiconSet& lex, AnalysisConfig defaults)
    : store_(store), lex_(lex), defaults_(std::move(defaults)) {
    defaults_.validate();
}

std::string Service::ingest(const BundleInputs& bundle, const std::optional<AnalysisConfig>& config) {
    auto result = analyze_bundle(bundle, lex_, config.value_or(defaults_));
    const auto id = result.document.meta.id;
    std::lock_guard lock(store_.writer(id));
    if (store_.contains(id)) result.document.version = store_.get(id)->version + 1;
    store_.put(result.document, &result.audio);
    return id;
}

std::vector<SpeechListing> Service::list(SortKey key, const std::optional<std::string>& query) const {
    std::vector<SpeechListing> out;
    const auto needle = query ? text::to_lower(*query) : std::string();
    for (const auto& doc : store_.all()) {
        if (query) {
            auto hay = text::to_lower(doc->meta.title + "\n" + doc->meta.speaker + "\n" + doc->meta.category);
            if (hay.find(needle) == std::string::npos) continue;
        }
        SpeechListing l;
        l.meta = doc->meta;
        l.laughter_count = doc->laughter_count();
        l.version = doc->version;
        for (const auto& row : doc->summary.punchlines) l.barcode.push_back(row.time_s / doc->meta.duration_s);
        out.push_back(std::move(l));
    }
    std::stable_sort(out.begin(), out.end(), [key](const SpeechListing& a, const SpeechListing& b) {
        switch (key) {
            case SortKey::laughter_count: return a.laughter_count > b.laughter_count;
            case SortKey::views: return a.meta.views > b.meta.views;
            case SortKey::duration: return a.meta.duration_s > b.meta.duration_s;
            case SortKey::title: return a.meta.title < b.meta.title;
        }
        return false;
    });
    return out;
}

std::shared_ptr<const SpeechDocument> Service::document(const std::string& id) const { return store_.get(id); }

summary::TimeMatrixSummary Service::summary(const std::string& id, std::optional<double> resolution_s) const {
    auto doc = store_.get(id);
    return summary_at(*doc, resolution_s.value_or(doc->config.merge_resolution_s));
}

std::vector<int> Service::filter_snippets(const std::string& id, const HumorFocusFilter& filter) const {
    filter.validate();
    auto doc = store_.get(id);
    std::vector<int> out;
    for (const auto& a : doc->snippets)
        if (snippet_matches(a, filter)) out.push_back(a.snippet.index);
    return out;
}

const AnalyzedSnippet& Service::snippet(const SpeechDocument& doc, int index) const {
    if (index < 0 || index >= static_cast<int>(doc.snippets.size()))
        throw NotFound("snippet " + std::to_string(index) + " not found in '" + doc.meta.id + "'");
    return doc.snippets[static_cast<std::size_t>(index)];
}

std::vector<summary::Occurrence> Service::occurrences(const std::string& id, const std::string& keyword) const {
    auto doc = store_.get(id);
    std::vector<Snippet> plain;
    for (const auto& a : doc->snippets) plain.push_back(a.snippet);
    return summary::keyword_occurrences(plain, doc->tail, keyword);
}

std::string Service::audio_clip(const std::string& id, int snippet_index, int sentence_index) const {
    auto doc = store_.get(id);
    const auto& a = snippet(*doc, snippet_index);
    if (sentence_index < 0 || sentence_index >= static_cast<int>(a.snippet.sentences.size()))
        throw NotFound("sentence " + std::to_string(sentence_index) + " not found in snippet " +
                       std::to_string(snippet_index));
    const auto track = store_.audio(id);
    const auto& span = a.snippet.sentences[static_cast<std::size_t>(sentence_index)].span_s;
    return wav::encode_string(ingest::clip_audio(track, {span.start, std::min(span.end, track.duration())}));
}

int Service::recompute(const std::string& id, const ThresholdConfig& thresholds) {
    thresholds.validate();
    std::lock_guard lock(store_.writer(id));
    auto next = laughtrack::recompute(*store_.get(id), lex_, thresholds);
    store_.put(next);
    return next.version;
}

Json to_json(const SpeechListing& l) {
    return {{"meta", to_json(l.meta)},
            {"laughter_count", l.laughter_count},
            {"barcode", l.barcode},
            {"version", l.version}};
}

Json snippet_detail_json(const AnalyzedSnippet& s) { return to_json(s); }

}  // namespace laughtrack
