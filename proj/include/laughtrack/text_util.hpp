#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace laughtrack::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

// Lowercase and strip leading/trailing punctuation (ASCII punctuation plus
// curly quotes, dashes and ellipsis). Inner characters are kept, so
// "f**king" and "don't" survive intact.
std::string normalize_word(std::string_view surface);
// The same stripping without lowercasing.
std::string_view strip_outer_punct(std::string_view surface);

// True when nothing word-like remains after normalization.
bool is_punctuation(std::string_view surface);

std::vector<std::string> lines_of(std::string_view bytes);

bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

// 64-bit FNV-1a, used to key precomputed phrase embeddings.
std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace laughtrack::text
