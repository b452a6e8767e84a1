#include "laughtrack/conllu.hpp"

#include <algorithm>

#include "laughtrack/error.hpp"
#include "laughtrack/text_util.hpp"

namespace laughtrack::graph {

namespace {

constexpr const char* kStage = "context-graph";

[[noreturn]] void reject(const std::string& why, std::optional<std::size_t> line = std::nullopt) {
    throw ValidationError(kStage, why, line);
}

void check_tree(const DependencyTree& tree) {
    const auto n = static_cast<int>(tree.tokens.size());
    int roots = 0;
    for (const auto& t : tree.tokens) {
        if (t.head < 0 || t.head > n) reject("head " + std::to_string(t.head) + " outside block", tree.source_line);
        if (t.head == 0) ++roots;
    }
    if (roots != 1) reject("block has " + std::to_string(roots) + " roots (need exactly one)", tree.source_line);
    // Every node must reach the root within n steps.
    for (int i = 0; i < n; ++i) {
        int at = i + 1, steps = 0;
        while (at != 0) {
            if (++steps > n) reject("cyclic heads at token " + std::to_string(i + 1), tree.source_line);
            at = tree.tokens[static_cast<std::size_t>(at - 1)].head;
        }
    }
}

}  // namespace

std::vector<DependencyTree> parse_conllu(std::string_view bytes) {
    std::vector<DependencyTree> trees;
    DependencyTree current;
    auto flush = [&] {
        if (current.tokens.empty()) return;
        check_tree(current);
        trees.push_back(std::move(current));
        current = {};
    };
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view line = lines[i];
        if (text::trim(line).empty()) {
            flush();
            continue;
        }
        if (line.front() == '#') continue;
        auto cols = text::split(line, '\t');
        if (cols.size() != 10) reject("expected 10 tab-separated columns, found " + std::to_string(cols.size()), lineno);
        auto id = cols[0];
        if (id.find('.') != std::string_view::npos) continue;
        if (auto dash = id.find('-'); dash != std::string_view::npos) {
            long long a = 0, b = 0;
            if (!text::parse_int(id.substr(0, dash), a) || !text::parse_int(id.substr(dash + 1), b) || b < a)
                reject("bad multiword range '" + std::string(id) + "'", lineno);
            if (current.tokens.empty() && current.ranges.empty()) current.source_line = lineno;
            current.ranges.push_back({static_cast<int>(a), static_cast<int>(b), std::string(cols[1])});
            continue;
        }
        long long num = 0, head = 0;
        if (!text::parse_int(id, num)) reject("bad token id '" + std::string(id) + "'", lineno);
        if (!text::parse_int(cols[6], head)) reject("bad head '" + std::string(cols[6]) + "'", lineno);
        if (current.tokens.empty() && current.ranges.empty()) current.source_line = lineno;
        if (num != static_cast<long long>(current.tokens.size()) + 1)
            reject("token ids must run 1, 2, 3, ...", lineno);
        DepToken t;
        t.id = static_cast<int>(num);
        t.head = static_cast<int>(head);
        t.form = std::string(cols[1]);
        t.lemma = std::string(cols[2]);
        t.upos = std::string(cols[3]);
        t.deprel = std::string(cols[7]);
        if (t.head == t.id) reject("token " + std::to_string(t.id) + " heads itself (cycle)", lineno);
        current.tokens.push_back(std::move(t));
    }
    flush();
    return trees;
}

int WordTree::root() const {
    for (std::size_t i = 0; i < head.size(); ++i)
        if (head[i] < 0) return static_cast<int>(i);
    return -1;
}

std::vector<int> WordTree::children(int node) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < head.size(); ++i)
        if (head[i] == node) out.push_back(static_cast<int>(i));
    return out;
}

std::pair<int, int> WordTree::subtree_range(int node, bool* contiguous) const {
    std::vector<int> stack{node};
    int lo = node, hi = node, count = 0;
    while (!stack.empty()) {
        int at = stack.back();
        stack.pop_back();
        ++count;
        lo = std::min(lo, at);
        hi = std::max(hi, at);
        for (int c : children(at)) stack.push_back(c);
    }
    if (contiguous) *contiguous = (hi - lo + 1 == count);
    return {lo, hi};
}

WordTree project_tree(const DependencyTree& tree, const Sentence& sentence) {
    const auto n = tree.tokens.size();
    // Surface units: a multiword range or a lone syntactic word.
    struct Unit {
        std::string form;
        std::size_t rep;  // syntactic word carrying the unit's head
        bool punct;
    };
    std::vector<Unit> units;
    std::vector<int> unit_of(n, -1);
    for (std::size_t i = 0; i < n;) {
        const auto id = static_cast<int>(i + 1);
        auto range = std::find_if(tree.ranges.begin(), tree.ranges.end(),
                                  [&](const MultiwordRange& r) { return r.first == id; });
        std::size_t last = i;
        std::string form = tree.tokens[i].form;
        if (range != tree.ranges.end()) {
            if (range->last > static_cast<int>(n)) reject("multiword range past end of block", tree.source_line);
            last = static_cast<std::size_t>(range->last - 1);
            form = range->form;
        }
        std::size_t rep = i;
        bool all_punct = true;
        for (std::size_t k = i; k <= last; ++k) {
            const int h = tree.tokens[k].head;
            if (h == 0 || h < static_cast<int>(i + 1) || h > static_cast<int>(last + 1)) rep = k;
            if (tree.tokens[k].upos != "PUNCT") all_punct = false;
        }
        for (std::size_t k = i; k <= last; ++k) unit_of[k] = static_cast<int>(units.size());
        units.push_back({form, rep, all_punct || text::is_punctuation(form)});
        i = last + 1;
    }

    std::vector<int> word_of(units.size(), -1);
    std::vector<std::size_t> kept;
    for (std::size_t u = 0; u < units.size(); ++u) {
        if (units[u].punct) continue;
        word_of[u] = static_cast<int>(kept.size());
        kept.push_back(u);
    }
    if (kept.size() != sentence.tokens.size())
        reject("parse has " + std::to_string(kept.size()) + " words but sentence " + std::to_string(sentence.line) +
                   " has " + std::to_string(sentence.tokens.size()),
               tree.source_line);

    WordTree out;
    for (std::size_t w = 0; w < kept.size(); ++w) {
        const auto& unit = units[kept[w]];
        const auto& t = tree.tokens[unit.rep];
        if (text::normalize_word(unit.form) != sentence.tokens[w].norm)
            reject("parse word '" + unit.form + "' does not match transcript word '" + sentence.tokens[w].surface + "'",
                   tree.source_line);
        // Climb past punctuation heads.
        int h = t.head;
        while (h != 0 && word_of[static_cast<std::size_t>(unit_of[static_cast<std::size_t>(h - 1)])] < 0)
            h = tree.tokens[static_cast<std::size_t>(h - 1)].head;
        out.head.push_back(h == 0 ? -1 : word_of[static_cast<std::size_t>(unit_of[static_cast<std::size_t>(h - 1)])]);
        out.deprel.push_back(t.deprel);
        out.upos.push_back(t.upos);
        out.lemma.push_back(t.lemma);
    }
    int roots = static_cast<int>(std::count(out.head.begin(), out.head.end(), -1));
    if (roots != 1) reject("projected parse has " + std::to_string(roots) + " roots", tree.source_line);
    return out;
}

void tag_tokens(const WordTree& tree, Sentence& sentence) {
    for (std::size_t i = 0; i < sentence.tokens.size() && i < tree.size(); ++i) {
        sentence.tokens[i].pos = tree.upos[i];
        if (!tree.lemma[i].empty() && tree.lemma[i] != "_") sentence.tokens[i].lemma = text::to_lower(tree.lemma[i]);
    }
}

}  // namespace laughtrack::graph
