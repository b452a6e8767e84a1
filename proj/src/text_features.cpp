#include "laughtrack/text_features.hpp"

#include <map>

namespace laughtrack::features {

namespace {

struct PairScan {
    int i = -1, j = -1;
    double sim = 0.0;
};

std::vector<std::string> phones_for(const WordToken& t, const lexicon::LexiconSet& lex) {
    if (!t.phones.empty()) return t.phones;
    if (auto p = lex.phones_of(t.norm)) return *p;
    return {};
}

double polarity_sign(lexicon::Polarity p) {
    return p == lexicon::Polarity::positive ? 1.0 : (p == lexicon::Polarity::negative ? -1.0 : 0.0);
}

// Groups eligible tokens by `key_of`; keeps groups of two or more that are
// not a single word repeated.
template <typename KeyFn>
std::vector<FeatureAnnotation> chains(const Sentence& sentence, const lexicon::LexiconSet& lex,
                                      FeatureKind kind, KeyFn key_of) {
    std::map<std::string, std::vector<int>> groups;
    std::vector<std::string> order;  // first-appearance order of keys
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        const auto& t = sentence.tokens[i];
        if (t.norm.empty() || lexicon::is_stopword(t.norm)) continue;
        auto phones = phones_for(t, lex);
        if (phones.empty()) continue;
        auto key = key_of(phones);
        if (key.empty()) continue;
        auto& g = groups[key];
        if (g.empty()) order.push_back(key);
        g.push_back(static_cast<int>(i));
    }
    std::vector<FeatureAnnotation> out;
    for (const auto& key : order) {
        const auto& members = groups[key];
        if (members.size() < 2) continue;
        bool distinct = false;
        for (int m : members)
            if (sentence.tokens[m].norm != sentence.tokens[members.front()].norm) distinct = true;
        if (!distinct) continue;
        out.push_back({kind, members, static_cast<double>(members.size()), false});
    }
    return out;
}

}  // namespace

std::vector<int> content_positions(const Sentence& sentence) {
    std::vector<int> out;
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
        if (lexicon::is_content(sentence.tokens[i])) out.push_back(static_cast<int>(i));
    return out;
}

std::optional<FeatureAnnotation> detect_disconnection(const Sentence& sentence,
                                                      const lexicon::LexiconSet& lex,
                                                      const ThresholdConfig& config) {
    if (config.disconnect_max_sim <= 0.0) return std::nullopt;
    std::vector<std::pair<int, std::span<const float>>> words;
    for (int i : content_positions(sentence))
        if (auto v = lex.vector_of(sentence.tokens[i].norm)) words.emplace_back(i, *v);

    std::optional<PairScan> best;
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            double s = lexicon::cosine_similarity(words[a].second, words[b].second);
            if (!best || s < best->sim) best = PairScan{words[a].first, words[b].first, s};
        }
    if (!best || best->sim > config.disconnect_max_sim) return std::nullopt;
    return FeatureAnnotation{FeatureKind::disconnection, {best->i, best->j}, best->sim, true};
}

std::optional<FeatureAnnotation> detect_intra_repetition(const Sentence& sentence,
                                                         const lexicon::LexiconSet& lex,
                                                         const ThresholdConfig& config) {
    auto positions = content_positions(sentence);
    std::vector<std::optional<std::span<const float>>> vecs;
    for (int i : positions) vecs.push_back(lex.vector_of(sentence.tokens[i].norm));

    std::optional<PairScan> best;
    for (std::size_t a = 0; a < positions.size(); ++a)
        for (std::size_t b = a + 1; b < positions.size(); ++b) {
            double s;
            if (sentence.tokens[positions[a]].norm == sentence.tokens[positions[b]].norm) s = 1.0;
            else if (vecs[a] && vecs[b]) s = lexicon::cosine_similarity(*vecs[a], *vecs[b]);
            else continue;
            if (!best || s > best->sim) best = PairScan{positions[a], positions[b], s};
        }
    if (!best || best->sim < config.repeat_min_sim) return std::nullopt;
    return FeatureAnnotation{FeatureKind::intra_repetition, {best->i, best->j}, best->sim, true};
}

std::vector<FeatureAnnotation> annotate_sentiment(const Sentence& sentence, const lexicon::LexiconSet& lex) {
    std::vector<FeatureAnnotation> out;
    bool any_strong = false;
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        const auto& t = sentence.tokens[i];
        const auto* clue = lex.sentiment.find(t.norm, t.pos);
        if (!clue) continue;
        const bool strong = clue->strength == lexicon::Strength::strong;
        any_strong = any_strong || strong;
        const int at = static_cast<int>(i);
        if (double sign = polarity_sign(clue->polarity); sign != 0.0)
            out.push_back({FeatureKind::polarity, {at}, sign * (strong ? 1.0 : 0.5), false});
        if (clue->subjective) out.push_back({FeatureKind::subjectivity, {at}, 1.0, false});
    }
    for (auto& a : out) a.sentence_flag = any_strong;
    return out;
}

std::string strip_stress(const std::string& phone) {
    std::string out = phone;
    while (!out.empty() && out.back() >= '0' && out.back() <= '9') out.pop_back();
    return out;
}

std::string rhyme_key(const std::vector<std::string>& phones) {
    auto last_with = [&](char digit) -> std::optional<std::size_t> {
        for (std::size_t k = phones.size(); k-- > 0;)
            if (!phones[k].empty() && phones[k].back() == digit) return k;
        return std::nullopt;
    };
    auto from = last_with('1');
    if (!from) from = last_with('2');
    if (!from) return {};
    std::string key;
    for (std::size_t k = *from; k < phones.size(); ++k) {
        if (!key.empty()) key += '-';
        key += strip_stress(phones[k]);
    }
    return key;
}

std::vector<FeatureAnnotation> detect_alliteration(const Sentence& sentence, const lexicon::LexiconSet& lex) {
    return chains(sentence, lex, FeatureKind::alliteration,
                  [](const std::vector<std::string>& phones) { return strip_stress(phones.front()); });
}

std::vector<FeatureAnnotation> detect_rhyme(const Sentence& sentence, const lexicon::LexiconSet& lex) {
    return chains(sentence, lex, FeatureKind::rhyme, rhyme_key);
}

std::vector<FeatureAnnotation> annotate_sentence_text(const Sentence& sentence,
                                                      const lexicon::LexiconSet& lex,
                                                      const ThresholdConfig& config) {
    std::vector<FeatureAnnotation> out;
    if (auto a = detect_disconnection(sentence, lex, config)) out.push_back(*a);
    if (auto a = detect_intra_repetition(sentence, lex, config)) out.push_back(*a);
    for (auto& a : annotate_sentiment(sentence, lex)) out.push_back(std::move(a));
    for (auto& a : detect_alliteration(sentence, lex)) out.push_back(std::move(a));
    for (auto& a : detect_rhyme(sentence, lex)) out.push_back(std::move(a));
    sort_annotations(out);
    return out;
}

}  // namespace laughtrack::features
