#include "laughtrack/types.hpp"

#include <algorithm>

namespace laughtrack {

std::string Sentence::text() const {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t.surface;
    }
    return out;
}

void refresh_span(Sentence& sentence) {
    if (sentence.tokens.empty()) {
        sentence.span_s = {};
        return;
    }
    double lo = sentence.tokens.front().start_s;
    double hi = sentence.tokens.front().end_s;
    for (const auto& t : sentence.tokens) {
        lo = std::min(lo, t.start_s);
        hi = std::max(hi, t.end_s);
    }
    sentence.span_s = {lo, hi};
}

}  // namespace laughtrack
