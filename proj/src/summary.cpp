#include "laughtrack/summary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "laughtrack/lexicon.hpp"
#include "laughtrack/text_util.hpp"

namespace laughtrack::summary {

namespace {

struct ContentWord {
    int sentence;
    int token;
    std::string term;
};

std::vector<ContentWord> content_sequence(const Snippet& snippet) {
    std::vector<ContentWord> out;
    for (std::size_t s = 0; s < snippet.sentences.size(); ++s) {
        const auto& toks = snippet.sentences[s].tokens;
        for (std::size_t t = 0; t < toks.size(); ++t)
            if (lexicon::is_content(toks[t])) out.push_back({static_cast<int>(s), static_cast<int>(t), term_of(toks[t])});
    }
    return out;
}

bool token_matches(const WordToken& t, std::string_view word) {
    return t.norm == word || (t.lemma && text::to_lower(*t.lemma) == word);
}

}  // namespace

std::string term_of(const WordToken& token) {
    if (token.lemma && !token.lemma->empty()) return text::to_lower(*token.lemma);
    return token.norm;
}

CooccurrenceGraph cooccurrence_graph(const Snippet& snippet, int window) {
    CooccurrenceGraph g;
    std::map<std::string, int> index;
    std::vector<int> seq;
    for (const auto& w : content_sequence(snippet)) {
        auto [it, fresh] = index.try_emplace(w.term, static_cast<int>(g.nodes.size()));
        if (fresh) g.nodes.push_back(w.term);
        seq.push_back(it->second);
    }
    std::vector<std::map<int, double>> weights(g.nodes.size());
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size() && j < i + static_cast<std::size_t>(window); ++j) {
            if (seq[i] == seq[j]) continue;
            weights[static_cast<std::size_t>(seq[i])][seq[j]] += 1.0;
            weights[static_cast<std::size_t>(seq[j])][seq[i]] += 1.0;
        }
    g.adjacency.resize(g.nodes.size());
    for (std::size_t i = 0; i < weights.size(); ++i)
        for (auto [j, w] : weights[i]) g.adjacency[i].emplace_back(j, w);
    return g;
}

RankResult textrank(const CooccurrenceGraph& graph, const TextRankParams& params) {
    const std::size_t n = graph.nodes.size();
    RankResult r;
    if (n == 0) return r;
    std::vector<double> strength(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (auto [j, w] : graph.adjacency[i]) strength[i] += w;

    std::vector<double> s(n, 1.0), next(n);
    for (int it = 0; it < params.max_iterations; ++it) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (auto [j, w] : graph.adjacency[i]) acc += w / strength[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(j)];
            next[i] = (1.0 - params.damping) + params.damping * acc;
            delta = std::max(delta, std::abs(next[i] - s[i]));
        }
        s.swap(next);
        r.iterations = it + 1;
        r.final_delta = delta;
        if (delta < params.tolerance) break;
    }
    const double top = *std::max_element(s.begin(), s.end());
    for (auto& x : s) x /= top;
    r.scores = std::move(s);
    return r;
}

std::vector<Keyword> extract_keywords(const Snippet& snippet, const TextRankParams& params) {
    auto graph = cooccurrence_graph(snippet, params.window);
    const std::size_t n = graph.nodes.size();
    if (n == 0) return {};
    auto rank = textrank(graph, params);

    std::map<std::string, int> index;
    for (std::size_t i = 0; i < n; ++i) index[graph.nodes[i]] = static_cast<int>(i);

    // Ties broken by first appearance (node order).
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rank.scores[a] > rank.scores[b]; });
    const auto top_n = std::min<std::size_t>(
        n, std::max<std::size_t>(static_cast<std::size_t>(params.top_k), (n + 2) / 3));
    std::vector<bool> top(n, false);
    for (std::size_t k = 0; k < top_n; ++k) top[static_cast<std::size_t>(order[k])] = true;

    struct Candidate {
        std::string text;
        double score;
        double anchor;
        int first_seen;
    };
    std::vector<Candidate> cands;
    std::map<std::string, std::size_t> seen;
    int position = 0;
    auto offer = [&](std::string text, double score, double anchor) {
        if (seen.count(text)) return;
        seen[text] = cands.size();
        cands.push_back({std::move(text), score, anchor, position});
    };
    for (const auto& sent : snippet.sentences) {
        const auto& toks = sent.tokens;
        for (std::size_t t = 0; t < toks.size(); ++t, ++position) {
            if (!lexicon::is_content(toks[t])) continue;
            const int a = index[term_of(toks[t])];
            if (!top[static_cast<std::size_t>(a)]) continue;
            offer(graph.nodes[static_cast<std::size_t>(a)], rank.scores[static_cast<std::size_t>(a)], toks[t].start_s);
            if (t + 1 < toks.size() && lexicon::is_content(toks[t + 1])) {
                const int b = index[term_of(toks[t + 1])];
                if (top[static_cast<std::size_t>(b)] && a != b)
                    offer(graph.nodes[static_cast<std::size_t>(a)] + " " + graph.nodes[static_cast<std::size_t>(b)],
                          (rank.scores[static_cast<std::size_t>(a)] + rank.scores[static_cast<std::size_t>(b)]) / 2.0,
                          toks[t].start_s);
            }
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.first_seen < y.first_seen;
    });
    std::vector<Keyword> out;
    for (std::size_t k = 0; k < cands.size() && k < static_cast<std::size_t>(params.top_k); ++k)
        out.push_back({cands[k].text, cands[k].score, snippet.index, 0, cands[k].anchor});
    return out;
}

std::vector<Occurrence> keyword_occurrences(const std::vector<Snippet>& snippets, const std::vector<Sentence>& tail,
                                            std::string_view keyword) {
    std::vector<std::string> words;
    for (auto w : text::split_ws(keyword)) words.push_back(text::normalize_word(w));
    std::vector<Occurrence> out;
    if (words.empty()) return out;
    auto scan = [&](int snippet, const std::vector<Sentence>& sentences) {
        for (std::size_t s = 0; s < sentences.size(); ++s) {
            const auto& toks = sentences[s].tokens;
            for (std::size_t t = 0; t + words.size() <= toks.size(); ++t) {
                bool hit = true;
                for (std::size_t k = 0; k < words.size() && hit; ++k) hit = token_matches(toks[t + k], words[k]);
                if (hit) out.push_back({snippet, static_cast<int>(s), static_cast<int>(t), toks[t].start_s});
            }
        }
    };
    for (const auto& snip : snippets) scan(snip.index, snip.sentences);
    scan(-1, tail);
    std::stable_sort(out.begin(), out.end(), [](const Occurrence& a, const Occurrence& b) { return a.time_s < b.time_s; });
    return out;
}

PunchlineRow tally(int snippet, double time_s, const std::vector<FeatureAnnotation>& annotations) {
    PunchlineRow row;
    row.snippet = snippet;
    row.time_s = time_s;
    for (const auto& a : annotations) {
        ++row.counts[kind_index(a.kind)];
        if (is_text_kind(a.kind)) ++row.text_count;
        else ++row.audio_count;
    }
    return row;
}

std::vector<Band> merge_bands(const std::vector<PunchlineRow>& rows, double resolution_s) {
    std::vector<Band> bands;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!bands.empty() && rows[i].time_s - rows[i - 1].time_s < resolution_s) {
            bands.back().end_s = rows[i].time_s;
            bands.back().punchlines.push_back(static_cast<int>(i));
            continue;
        }
        bands.push_back({rows[i].time_s, rows[i].time_s, {static_cast<int>(i)}});
    }
    return bands;
}

TimeMatrixSummary build_time_matrix(double duration_s, const std::vector<PunchlineInput>& punchlines,
                                    std::vector<Keyword> keywords, double resolution_s) {
    TimeMatrixSummary out;
    out.duration_s = duration_s;
    out.merge_resolution_s = resolution_s;
    for (const auto& p : punchlines) {
        static const std::vector<FeatureAnnotation> none;
        out.punchlines.push_back(tally(p.snippet, p.time_s, p.annotations ? *p.annotations : none));
    }
    std::stable_sort(out.punchlines.begin(), out.punchlines.end(),
                     [](const PunchlineRow& a, const PunchlineRow& b) { return a.time_s < b.time_s; });
    for (const auto& row : out.punchlines)
        for (std::size_t k = 0; k < kFeatureKindCount; ++k) out.feature_totals[k] += row.counts[k];
    out.keywords = std::move(keywords);
    out.merged_bands = merge_bands(out.punchlines, resolution_s);
    return out;
}

}  // namespace laughtrack::summary
