#include "laughtrack/text_util.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace laughtrack::text {

namespace {

// UTF-8 punctuation that shows up around words in transcripts.
constexpr std::array<std::string_view, 9> kUnicodePunct = {
    "‘", "’", "“", "”", "–", "—", "…", "«", "»"};

bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

std::size_t leading_punct(std::string_view s) {
    if (s.empty()) return 0;
    if (is_ascii_punct(static_cast<unsigned char>(s.front()))) return 1;
    for (auto p : kUnicodePunct)
        if (s.starts_with(p)) return p.size();
    return 0;
}

std::size_t trailing_punct(std::string_view s) {
    if (s.empty()) return 0;
    if (is_ascii_punct(static_cast<unsigned char>(s.back()))) return 1;
    for (auto p : kUnicodePunct)
        if (s.ends_with(p)) return p.size();
    return 0;
}

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view strip_outer_punct(std::string_view surface) {
    for (;;) {
        auto n = leading_punct(surface);
        if (n == 0) break;
        surface.remove_prefix(n);
    }
    for (;;) {
        auto n = trailing_punct(surface);
        if (n == 0) break;
        surface.remove_suffix(n);
    }
    return surface;
}

std::string normalize_word(std::string_view surface) { return to_lower(strip_outer_punct(surface)); }

bool is_punctuation(std::string_view surface) { return normalize_word(surface).empty(); }

std::vector<std::string> lines_of(std::string_view bytes) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < bytes.size()) {
        auto pos = bytes.find('\n', start);
        auto line = bytes.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                      : pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.emplace_back(line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    // strtod needs a terminated buffer; from_chars for double is missing on
    // some of the toolchains this builds on.
    std::string buf(s);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size();
}

bool parse_int(std::string_view s, long long& out) {
    s = trim(s);
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace laughtrack::text
