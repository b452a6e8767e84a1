#include "laughtrack/pipeline.hpp"

#include <fstream>

#include "laughtrack/audio_features.hpp"
#include "laughtrack/conllu.hpp"
#include "laughtrack/error.hpp"
#include "laughtrack/frames.hpp"
#include "laughtrack/ingest.hpp"
#include "laughtrack/text_features.hpp"

namespace laughtrack {

namespace {

std::optional<std::string> read_optional(const std::filesystem::path& p) {
    if (!std::filesystem::exists(p)) return std::nullopt;
    return lexicon::read_file(p);
}

std::string read_required(const std::filesystem::path& p) {
    if (!std::filesystem::exists(p)) throw ValidationError("ingest", "bundle is missing " + p.filename().string());
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void attach_pronunciations(std::vector<Sentence>& sentences, const lexicon::LexiconSet& lex) {
    for (auto& s : sentences)
        for (auto& t : s.tokens) {
            if (auto phones = lex.phones_of(t.norm)) t.phones = *phones;
            t.syllables = lex.syllable_count(t.norm);
        }
}

std::vector<FeatureAnnotation> annotate_sentence(const Sentence& s, const std::vector<audio::WordAcoustics>& ac,
                                                 std::vector<FeatureAnnotation> pauses,
                                                 const lexicon::LexiconSet& lex, const ThresholdConfig& t) {
    auto out = features::annotate_sentence_text(s, lex, t);
    out.insert(out.end(), pauses.begin(), pauses.end());
    for (auto&& a : audio::detect_speed_variation(s, ac, t)) out.push_back(std::move(a));
    for (auto&& a : audio::detect_volume_variation(s, ac, t)) out.push_back(std::move(a));
    for (auto&& a : audio::detect_pitch_stress(s, ac, t)) out.push_back(std::move(a));
    sort_annotations(out);
    return out;
}

}  // namespace

BundleInputs read_bundle(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw ValidationError("ingest", "bundle directory " + dir.string() + " not found");
    BundleInputs b;
    b.transcript = read_required(dir / "transcript.txt");
    b.alignment = read_required(dir / "alignment.csv");
    b.audio = read_required(dir / "audio.wav");
    b.meta = read_required(dir / "meta.txt");
    b.conllu = read_optional(dir / "parse.conllu");
    b.coref = read_optional(dir / "coref.tsv");
    b.phrases = read_optional(dir / "phrases.csv");
    return b;
}

IngestResult analyze_bundle(const BundleInputs& bundle, const lexicon::LexiconSet& lex, const AnalysisConfig& config) {
    config.validate();
    auto parsed = ingest::parse_bundle(bundle.transcript, bundle.alignment, bundle.audio, bundle.meta);
    attach_pronunciations(parsed.sentences, lex);

    // Parses cover every transcript sentence, tail included.
    std::vector<std::optional<graph::WordTree>> trees(parsed.sentences.size());
    if (bundle.conllu) {
        auto deps = graph::parse_conllu(*bundle.conllu);
        if (deps.size() != parsed.sentences.size())
            throw ValidationError("context-graph", "parse has " + std::to_string(deps.size()) +
                                                       " sentences but the transcript has " +
                                                       std::to_string(parsed.sentences.size()));
        for (std::size_t i = 0; i < deps.size(); ++i) {
            trees[i] = graph::project_tree(deps[i], parsed.sentences[i]);
            graph::tag_tokens(*trees[i], parsed.sentences[i]);
        }
    }

    SpeechDocument doc;
    doc.meta = parsed.meta;
    doc.config = config;
    std::vector<const Sentence*> all;
    for (const auto& s : parsed.sentences) all.push_back(&s);
    if (bundle.coref) {
        doc.chains = graph::parse_coref(*bundle.coref);
        graph::check_chains(doc.chains, all);
        doc.chains_supplied = true;
    } else {
        doc.chains = graph::fallback_chains(all);
    }
    if (bundle.phrases) {
        auto table = lexicon::PhraseEmbeddings::parse(*bundle.phrases);
        for (const auto& [k, v] : table.rows()) doc.phrase_rows[k] = v;
    }

    auto seg = ingest::segment_snippets(parsed.sentences, parsed.laughter);
    const auto frames = audio::analyze_frames(parsed.audio, config.frames);
    for (auto& snip : seg.snippets) {
        AnalyzedSnippet a;
        for (const auto& s : snip.sentences) {
            a.acoustics.push_back(audio::sentence_acoustics(s, frames));
            a.trees.push_back(trees[static_cast<std::size_t>(s.line)]);
        }
        a.snippet = std::move(snip);
        doc.snippets.push_back(std::move(a));
    }
    doc.tail = std::move(seg.tail);
    doc.audio_retained = true;
    annotate_document(doc, lex);
    return {std::move(doc), std::move(parsed.audio)};
}

void annotate_document(SpeechDocument& doc, const lexicon::LexiconSet& lex) {
    const auto& t = doc.config.thresholds;
    std::optional<lexicon::PhraseEmbeddings> phrases;
    if (!doc.phrase_rows.empty()) {
        phrases.emplace();
        for (const auto& [k, v] : doc.phrase_rows) phrases->add(k, v);
    }

    for (auto& a : doc.snippets) {
        auto pauses = audio::detect_snippet_pauses(a.snippet, t);
        a.annotations.clear();
        for (std::size_t k = 0; k < a.snippet.sentences.size(); ++k)
            a.annotations.push_back(annotate_sentence(a.snippet.sentences[k], a.acoustics[k], std::move(pauses[k]), lex, t));

        graph::GraphInputs in;
        in.snippet = &a.snippet;
        in.trees = a.trees;
        in.chains = &doc.chains;
        in.phrases = phrases ? &*phrases : nullptr;
        a.graph = graph::build_context_graph(in, lex, doc.config);
        a.keywords = summary::extract_keywords(a.snippet, doc.config.textrank);
    }

    std::vector<Snippet> plain;
    for (const auto& a : doc.snippets) plain.push_back(a.snippet);
    std::vector<summary::Keyword> keywords;
    std::vector<summary::PunchlineInput> punchlines;
    for (auto& a : doc.snippets) {
        for (auto& k : a.keywords) {
            k.frequency = static_cast<int>(summary::keyword_occurrences(plain, doc.tail, k.text).size());
            keywords.push_back(k);
        }
        punchlines.push_back({a.snippet.index, a.snippet.punchline().span_s.end, &a.annotations.back()});
    }
    doc.summary = summary::build_time_matrix(doc.meta.duration_s, punchlines, std::move(keywords),
                                             doc.config.merge_resolution_s);
}

SpeechDocument recompute(const SpeechDocument& doc, const lexicon::LexiconSet& lex, const ThresholdConfig& thresholds) {
    thresholds.validate();
    SpeechDocument next = doc;
    next.config.thresholds = thresholds;
    next.version = doc.version + 1;
    annotate_document(next, lex);
    return next;
}

summary::TimeMatrixSummary summary_at(const SpeechDocument& doc, double resolution_s) {
    if (!(resolution_s >= 0.0)) throw ValidationError("service", "merge resolution must be non-negative");
    auto s = doc.summary;
    s.merge_resolution_s = resolution_s;
    s.merged_bands = summary::merge_bands(s.punchlines, resolution_s);
    return s;
}

}  // namespace laughtrack
