#include "laughtrack/context_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "laughtrack/text_util.hpp"

namespace laughtrack::graph {

namespace {

lexicon::Vector normalized(const lexicon::Vector& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    lexicon::Vector out(v);
    if (n > 0.0)
        for (auto& x : out) x /= n;
    return out;
}

bool has_content(const std::vector<lexicon::PhraseToken>& tokens) {
    return std::any_of(tokens.begin(), tokens.end(),
                       [](const lexicon::PhraseToken& t) { return lexicon::is_content(t.norm, t.pos); });
}

}  // namespace

std::optional<lexicon::Vector> embed_phrase(const std::vector<lexicon::PhraseToken>& tokens,
                                            const lexicon::LexiconSet& lex,
                                            const lexicon::PhraseEmbeddings* phrases) {
    if (phrases) {
        std::vector<std::string> norms;
        for (const auto& t : tokens)
            if (!t.norm.empty()) norms.push_back(t.norm);
        if (const auto* row = phrases->find_key(lexicon::phrase_key(norms))) return *row;
        if (phrases->size() > 0 && phrases->dimension() != lex.vectors.dimension()) return std::nullopt;
    }
    return lex.phrase_vector(std::span<const lexicon::PhraseToken>(tokens));
}

std::vector<ConceptCluster> reduce_redundancy(const std::vector<PhraseSpan>& spans, const std::vector<int>& labels) {
    std::map<int, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < spans.size() && i < labels.size(); ++i)
        if (labels[i] >= 0 && spans[i].vector) by_label[labels[i]].push_back(i);

    std::vector<ConceptCluster> kept;
    for (const auto& [label, members] : by_label) {
        (void)label;
        lexicon::Vector centroid(spans[members.front()].vector->size(), 0.0);
        for (auto m : members) {
            auto v = normalized(*spans[m].vector);
            for (std::size_t d = 0; d < centroid.size(); ++d) centroid[d] += v[d];
        }
        for (auto& x : centroid) x /= static_cast<double>(members.size());

        std::map<int, std::pair<std::size_t, double>> best;  // sentence -> (span, similarity)
        for (auto m : members) {
            const double sim = lexicon::cosine_similarity(*spans[m].vector, centroid);
            auto it = best.find(spans[m].sentence);
            if (it == best.end()) {
                best.emplace(spans[m].sentence, std::make_pair(m, sim));
                continue;
            }
            const auto& cur = spans[it->second.first];
            const bool better = sim > it->second.second ||
                                (sim == it->second.second &&
                                 (spans[m].length() > cur.length() ||
                                  (spans[m].length() == cur.length() && spans[m].first < cur.first)));
            if (better) it->second = {m, sim};
        }
        if (best.size() < 2) continue;
        ConceptCluster c;
        for (const auto& [sentence, pick] : best) c.members.push_back(spans[pick.first]);
        kept.push_back(std::move(c));
    }

    std::stable_sort(kept.begin(), kept.end(), [](const ConceptCluster& a, const ConceptCluster& b) {
        const auto& x = a.members.front();
        const auto& y = b.members.front();
        return std::tie(x.sentence, x.first, x.last) < std::tie(y.sentence, y.first, y.last);
    });
    for (std::size_t i = 0; i < kept.size(); ++i) {
        kept[i].id = static_cast<int>(i);
        kept[i].color = static_cast<int>(i) % kPaletteSize;
    }
    return kept;
}

std::vector<ContextLink> links_for(const std::vector<ConceptCluster>& clusters) {
    std::vector<ContextLink> links;
    for (const auto& c : clusters)
        for (std::size_t a = 0; a < c.members.size(); ++a)
            for (std::size_t b = a + 1; b < c.members.size(); ++b)
                links.push_back({c.members[a].sentence, c.members[b].sentence, c.id});
    std::sort(links.begin(), links.end(), [](const ContextLink& x, const ContextLink& y) {
        return std::tie(x.from, x.to, x.cluster) < std::tie(y.from, y.to, y.cluster);
    });
    return links;
}

ContextGraph build_context_graph(const GraphInputs& inputs, const lexicon::LexiconSet& lex,
                                 const AnalysisConfig& config) {
    const Snippet& snippet = *inputs.snippet;
    ContextGraph g;
    g.snippet = snippet.index;
    std::vector<const Sentence*> sentences;
    for (std::size_t k = 0; k < snippet.sentences.size(); ++k) {
        const auto& s = snippet.sentences[k];
        sentences.push_back(&s);
        g.nodes.push_back({static_cast<int>(k), static_cast<int>(s.tokens.size()), s.is_punchline});
    }

    std::vector<PhraseSpan> spans;
    for (std::size_t k = 0; k < sentences.size(); ++k) {
        const bool parsed = k < inputs.trees.size() && inputs.trees[k].has_value();
        auto found = parsed ? induce_subphrases(*inputs.trees[k], *sentences[k], static_cast<int>(k),
                                                config.max_subphrase_len)
                            : fallback_subphrases(*sentences[k], static_cast<int>(k));
        spans.insert(spans.end(), found.begin(), found.end());
    }
    for (auto& span : spans) {
        const auto& sent = *sentences[static_cast<std::size_t>(span.sentence)];
        std::vector<lexicon::PhraseToken> tokens;
        span.substituted_text = substitute_span(span, sent, inputs.chains, &tokens);
        if (!has_content(tokens)) continue;
        span.vector = embed_phrase(tokens, lex, inputs.phrases);
        if (span.vector && std::all_of(span.vector->begin(), span.vector->end(), [](double x) { return x == 0.0; }))
            span.vector.reset();
        if (span.vector) g.spans.push_back(std::move(span));
    }

    if (sentences.size() >= 2 && !g.spans.empty()) {
        std::vector<lexicon::Vector> points;
        for (const auto& s : g.spans) points.push_back(*s.vector);
        auto labels = dbscan(points, config.thresholds.cluster_eps, config.thresholds.cluster_min_pts);
        g.clusters = reduce_redundancy(g.spans, labels);
        g.links = links_for(g.clusters);
    }
    return g;
}

}  // namespace laughtrack::graph
