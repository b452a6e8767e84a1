#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "laughtrack/types.hpp"

namespace laughtrack::graph {

struct DepToken {
    int id = 0;    // 1-based within the block
    int head = 0;  // 0 = root
    std::string form;
    std::string lemma;
    std::string upos;
    std::string deprel;
};

// Surface token covering several syntactic words, e.g. "I'm" = I + 'm.
struct MultiwordRange {
    int first = 0;
    int last = 0;
    std::string form;
};

struct DependencyTree {
    std::vector<DepToken> tokens;
    std::vector<MultiwordRange> ranges;
    std::size_t source_line = 0;  // first line of the block
};

// Empty nodes (1.1) are skipped; multiword ranges (1-2) are kept aside so
// projection can fold them back into one surface word. Rejects
// malformed rows, heads outside the block, blocks without exactly one root,
// and cycles.
std::vector<DependencyTree> parse_conllu(std::string_view bytes);

// A tree projected onto a transcript sentence: punctuation nodes removed,
// multiword ranges folded into their syntactic head, one node per word
// token, heads re-pointed past removed nodes.
struct WordTree {
    std::vector<int> head;  // word index of the head, -1 for the root
    std::vector<std::string> deprel;
    std::vector<std::string> upos;
    std::vector<std::string> lemma;

    std::size_t size() const { return head.size(); }
    int root() const;
    std::vector<int> children(int node) const;
    // Inclusive [first, last] over the node's subtree, and whether every
    // position in that range belongs to the subtree.
    std::pair<int, int> subtree_range(int node, bool* contiguous = nullptr) const;

    friend bool operator==(const WordTree&, const WordTree&) = default;
};

// Rejects (stage "context-graph") when the non-punctuation forms do not
// match the sentence's words one to one.
WordTree project_tree(const DependencyTree& tree, const Sentence& sentence);

// Copies upos/lemma onto the sentence's tokens.
void tag_tokens(const WordTree& tree, Sentence& sentence);

}  // namespace laughtrack::graph
