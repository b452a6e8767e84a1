#include <algorithm>
#include <set>

#include "laughtrack/context_graph.hpp"
#include "laughtrack/text_util.hpp"

namespace laughtrack::graph {

namespace {

bool is_core_modifier(const std::string& deprel) {
    return deprel == "det" || deprel == "det:poss" || deprel == "nmod:poss" || deprel == "amod" ||
           deprel == "compound" || deprel == "nummod" || deprel == "flat";
}

bool is_clause_boundary(const std::string& deprel) {
    return deprel == "conj" || deprel == "cc" || deprel == "punct" || deprel == "parataxis";
}

std::pair<int, int> nominal_core(const WordTree& tree, int h) {
    int lo = h, hi = h;
    while (lo - 1 >= 0 && tree.head[lo - 1] == h && is_core_modifier(tree.deprel[lo - 1])) --lo;
    while (hi + 1 < static_cast<int>(tree.size()) && tree.head[hi + 1] == h && is_core_modifier(tree.deprel[hi + 1]))
        ++hi;
    return {lo, hi};
}

// True when [lo, hi] is one connected piece of the tree hanging from lo:
// every other word in the range has its head inside the range.
bool connected_from(const WordTree& tree, int lo, int hi) {
    for (int i = lo + 1; i <= hi; ++i)
        if (tree.head[i] < lo || tree.head[i] > hi) return false;
    return true;
}

std::string span_text(const Sentence& sentence, int first, int last) {
    std::vector<std::string> words;
    for (int i = first; i <= last; ++i)
        words.emplace_back(text::strip_outer_punct(sentence.tokens[static_cast<std::size_t>(i)].surface));
    return text::join(words, " ");
}

PhraseSpan make_span(const Sentence& sentence, int sentence_index, int first, int last) {
    PhraseSpan s;
    s.sentence = sentence_index;
    s.first = first;
    s.last = last;
    s.text = span_text(sentence, first, last);
    s.substituted_text = s.text;
    return s;
}

}  // namespace

std::vector<PhraseSpan> induce_subphrases(const WordTree& tree, const Sentence& sentence, int sentence_index,
                                          int max_len) {
    std::set<std::pair<int, int>> ranges;
    const int n = static_cast<int>(std::min(tree.size(), sentence.tokens.size()));
    for (int h = 0; h < n; ++h) {
        const auto& upos = tree.upos[h];
        const bool noun = upos == "NOUN" || upos == "PROPN";
        const bool verb = upos == "VERB";
        bool predicate = false;
        for (int c : tree.children(h))
            if (tree.deprel[c] == "cop") predicate = true;
        if (!noun && !verb && !predicate) continue;

        ranges.insert({h, h});
        const auto core = nominal_core(tree, h);
        if (noun || predicate) ranges.insert(core);

        bool contiguous = false;
        auto [lo, hi] = tree.subtree_range(h, &contiguous);
        if (contiguous) {
            if (hi - lo + 1 <= max_len) ranges.insert({lo, hi});
            else ranges.insert(core);
        }

        if (verb) {
            int end = h;
            for (int c : tree.children(h)) {
                if (c < h || is_clause_boundary(tree.deprel[c])) continue;
                end = std::max(end, tree.subtree_range(c).second);
            }
            // Only dependents we kept may occupy the range.
            bool clean = end > h && connected_from(tree, h, end);
            for (int i = h + 1; clean && i <= end; ++i) {
                int at = i;
                while (tree.head[at] != h) at = tree.head[at];
                if (is_clause_boundary(tree.deprel[at])) clean = false;
            }
            if (clean && end - h + 1 <= max_len) ranges.insert({h, end});
        }
    }
    std::vector<PhraseSpan> out;
    for (auto [first, last] : ranges)
        if (first == last || last - first + 1 <= max_len) out.push_back(make_span(sentence, sentence_index, first, last));
    return out;
}

std::vector<PhraseSpan> fallback_subphrases(const Sentence& sentence, int sentence_index) {
    std::vector<PhraseSpan> out;
    const int n = static_cast<int>(sentence.tokens.size());
    auto content = [&](int i) { return lexicon::is_content(sentence.tokens[static_cast<std::size_t>(i)]); };
    for (int i = 0; i < n; ++i) {
        if (!content(i)) continue;
        for (int len = 1; len <= 3 && i + len - 1 < n; ++len)
            if (content(i + len - 1)) out.push_back(make_span(sentence, sentence_index, i, i + len - 1));
    }
    return out;
}

}  // namespace laughtrack::graph
