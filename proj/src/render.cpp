#include "laughtrack/render.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace laughtrack::render {

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

std::string_view tag_of(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::disconnection: return "disc";
        case FeatureKind::intra_repetition: return "rep";
        case FeatureKind::polarity: return "pol";
        case FeatureKind::subjectivity: return "subj";
        case FeatureKind::alliteration: return "allit";
        case FeatureKind::rhyme: return "rhyme";
        case FeatureKind::faster: return "fast";
        case FeatureKind::slower: return "slow";
        case FeatureKind::pause: return "pause";
        case FeatureKind::louder: return "loud";
        case FeatureKind::softer: return "soft";
        case FeatureKind::stress: return "stress";
    }
    return "?";
}

std::string inline_sentence(const Sentence& sentence, const std::vector<FeatureAnnotation>& annotations) {
    const auto n = sentence.tokens.size();
    std::vector<std::vector<std::string>> tags(n);
    std::map<int, double> pause_before;  // word index -> gap seconds
    for (const auto& a : annotations) {
        if (a.kind == FeatureKind::pause && a.targets.size() == 2) {
            pause_before[a.targets[1]] = a.magnitude;
            continue;
        }
        std::string tag(tag_of(a.kind));
        if (a.kind == FeatureKind::polarity) tag += a.magnitude < 0 ? "-" : "+";
        for (int t : a.targets)
            if (t >= 0 && static_cast<std::size_t>(t) < n) tags[static_cast<std::size_t>(t)].push_back(tag);
    }
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (auto it = pause_before.find(static_cast<int>(i)); it != pause_before.end())
            out += " |" + fixed(it->second, 2) + "s|";
        if (i > 0 || !out.empty()) out += ' ';
        out += sentence.tokens[i].surface;
        if (!tags[i].empty()) {
            out += '{';
            for (std::size_t k = 0; k < tags[i].size(); ++k) out += (k ? "," : "") + tags[i][k];
            out += '}';
        }
    }
    return out;
}

std::string document_text(const SpeechDocument& doc) {
    std::ostringstream os;
    os << doc.meta.title << " (" << doc.meta.speaker << ")  id=" << doc.meta.id << "  v" << doc.version << "\n";
    os << doc.laughter_count() << " punchlines over " << fixed(doc.meta.duration_s, 1) << " s\n";
    for (const auto& s : doc.snippets) {
        os << "\nsnippet " << s.snippet.index << "  [" << fixed(s.snippet.span_s.start, 2) << "-"
           << fixed(s.snippet.span_s.end, 2) << " s]  context " << s.snippet.context_length() << "\n";
        for (std::size_t j = 0; j < s.snippet.sentences.size(); ++j) {
            const auto& sent = s.snippet.sentences[j];
            os << (sent.is_punchline ? " >" : "  ") << j << "  " << inline_sentence(sent, s.annotations[j]) << "\n";
        }
        for (const auto& c : s.graph.clusters) {
            os << "    concept " << c.id << ":";
            for (const auto& m : c.members) os << "  [" << m.sentence << "] " << m.substituted_text;
            os << "\n";
        }
        if (!s.keywords.empty()) {
            os << "    keywords:";
            for (const auto& k : s.keywords) os << " " << k.text << "(" << fixed(k.score, 2) << ")";
            os << "\n";
        }
    }
    if (!doc.tail.empty()) {
        os << "\ntail\n";
        for (const auto& sent : doc.tail) os << "    " << sent.text() << "\n";
    }
    return os.str();
}

}  // namespace laughtrack::render
