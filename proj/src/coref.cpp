#include <algorithm>
#include <array>

#include "laughtrack/context_graph.hpp"
#include "laughtrack/error.hpp"
#include "laughtrack/text_util.hpp"

namespace laughtrack::graph {

namespace {

constexpr const char* kStage = "context-graph";

constexpr std::array<std::string_view, 12> kThirdPerson = {
    "he", "him", "she", "it", "they", "them", "himself", "herself", "itself", "themselves", "hers", "theirs"};
constexpr std::array<std::string_view, 4> kPossessive = {"his", "her", "its", "their"};
constexpr std::array<std::string_view, 8> kDeterminers = {"the", "a", "an", "this", "that", "these", "those", "some"};

bool is_determiner(std::string_view norm) {
    return std::find(kDeterminers.begin(), kDeterminers.end(), norm) != kDeterminers.end();
}

bool is_np_head(const WordToken& t) {
    if (t.pos) return *t.pos == "NOUN" || *t.pos == "PROPN";
    if (t.norm.empty() || lexicon::is_stopword(t.norm) || is_pronoun(t.norm)) return false;
    return std::isupper(static_cast<unsigned char>(t.surface.front())) != 0;
}

}  // namespace

bool is_possessive_pronoun(std::string_view norm) {
    return std::find(kPossessive.begin(), kPossessive.end(), norm) != kPossessive.end();
}

bool is_pronoun(std::string_view norm) {
    return is_possessive_pronoun(norm) || std::find(kThirdPerson.begin(), kThirdPerson.end(), norm) != kThirdPerson.end();
}

std::vector<CorefChain> parse_coref(std::string_view bytes) {
    std::vector<CorefChain> chains;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (text::trim(line).empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos) throw ValidationError(kStage, "coref line needs rep<TAB>mentions", i + 1);
        CorefChain chain;
        chain.id = static_cast<int>(chains.size());
        chain.representative = std::string(text::trim(line.substr(0, tab)));
        if (chain.representative.empty()) throw ValidationError(kStage, "empty coref representative", i + 1);
        for (auto item : text::split(line.substr(tab + 1), ';')) {
            item = text::trim(item);
            if (item.empty()) continue;
            auto colon = item.find(':');
            auto dash = item.find('-', colon == std::string_view::npos ? 0 : colon);
            long long s = 0, a = 0, b = 0;
            if (colon == std::string_view::npos || dash == std::string_view::npos ||
                !text::parse_int(item.substr(0, colon), s) ||
                !text::parse_int(item.substr(colon + 1, dash - colon - 1), a) ||
                !text::parse_int(item.substr(dash + 1), b) || s < 0 || a < 0 || b < a)
                throw ValidationError(kStage, "bad coref mention '" + std::string(item) + "'", i + 1);
            chain.mentions.push_back({static_cast<int>(s), static_cast<int>(a), static_cast<int>(b)});
        }
        if (chain.mentions.size() < 2) throw ValidationError(kStage, "coref chain needs at least two mentions", i + 1);
        chains.push_back(std::move(chain));
    }
    return chains;
}

void check_chains(const std::vector<CorefChain>& chains, const std::vector<const Sentence*>& sentences) {
    for (const auto& c : chains)
        for (const auto& m : c.mentions) {
            if (m.sentence >= static_cast<int>(sentences.size()) ||
                m.last >= static_cast<int>(sentences[static_cast<std::size_t>(m.sentence)]->tokens.size()))
                throw ValidationError(kStage, "coref mention " + std::to_string(m.sentence) + ":" +
                                                  std::to_string(m.first) + "-" + std::to_string(m.last) +
                                                  " is outside the transcript");
        }
}

std::vector<CorefChain> fallback_chains(const std::vector<const Sentence*>& sentences) {
    std::vector<CorefChain> chains;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        const auto& toks = sentences[s]->tokens;
        for (std::size_t w = 0; w < toks.size(); ++w) {
            if (!is_pronoun(toks[w].norm)) continue;
            // Walk backwards: earlier words of this sentence, then up to two
            // previous sentences.
            std::optional<Mention> antecedent;
            for (std::size_t back = 0; back <= 2 && back <= s && !antecedent; ++back) {
                const auto sent = s - back;
                const auto& cand = sentences[sent]->tokens;
                std::size_t end = back == 0 ? w : cand.size();
                for (std::size_t k = end; k-- > 0;)
                    if (is_np_head(cand[k])) {
                        antecedent = Mention{static_cast<int>(sent), static_cast<int>(k), static_cast<int>(k)};
                        break;
                    }
            }
            if (!antecedent) continue;
            CorefChain c;
            c.id = static_cast<int>(chains.size());
            const auto& head = sentences[static_cast<std::size_t>(antecedent->sentence)]
                                   ->tokens[static_cast<std::size_t>(antecedent->first)];
            c.representative = std::string(text::strip_outer_punct(head.surface));
            c.mentions = {*antecedent, Mention{static_cast<int>(s), static_cast<int>(w), static_cast<int>(w)}};
            chains.push_back(std::move(c));
        }
    }
    return chains;
}

std::string substitute_for(std::string_view pronoun_norm, std::string_view representative) {
    std::vector<std::string> words;
    for (auto w : text::split_ws(representative)) words.emplace_back(w);
    std::size_t skip = 0;
    while (skip < words.size() && is_determiner(text::normalize_word(words[skip]))) ++skip;
    words.erase(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(skip));
    if (words.empty()) return std::string(representative);
    if (!is_possessive_pronoun(pronoun_norm)) return text::join(words, " ");
    if (words.size() == 1) return words.front() + "'s";
    words.pop_back();
    return text::join(words, " ");
}

std::string substitute_span(const PhraseSpan& span, const Sentence& sentence, const std::vector<CorefChain>* chains,
                            std::vector<lexicon::PhraseToken>* tokens) {
    std::vector<std::string> words;
    for (int i = span.first; i <= span.last; ++i) {
        const auto& tok = sentence.tokens[static_cast<std::size_t>(i)];
        std::optional<std::string> replacement;
        if (chains && is_pronoun(tok.norm)) {
            for (const auto& c : *chains) {
                bool covered = std::any_of(c.mentions.begin(), c.mentions.end(), [&](const Mention& m) {
                    return m.sentence == sentence.line && m.first <= i && i <= m.last;
                });
                if (covered && text::normalize_word(c.representative) != tok.norm) {
                    replacement = substitute_for(tok.norm, c.representative);
                    break;
                }
            }
        }
        if (!replacement) {
            words.emplace_back(text::strip_outer_punct(tok.surface));
            if (tokens) tokens->push_back({tok.norm, tok.pos});
            continue;
        }
        for (auto w : text::split_ws(*replacement)) {
            words.emplace_back(w);
            if (tokens) tokens->push_back({text::normalize_word(w), std::nullopt});
        }
    }
    return text::join(words, " ");
}

void apply_coreference(std::vector<PhraseSpan>& spans, const std::vector<const Sentence*>& snippet_sentences,
                       const std::vector<CorefChain>& chains) {
    for (auto& span : spans)
        span.substituted_text =
            substitute_span(span, *snippet_sentences[static_cast<std::size_t>(span.sentence)], &chains, nullptr);
}

}  // namespace laughtrack::graph
