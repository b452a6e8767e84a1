#include "laughtrack/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "laughtrack/error.hpp"
#include "laughtrack/text_util.hpp"
#include "laughtrack/wav.hpp"

namespace laughtrack::ingest {

namespace {

constexpr const char* kStage = "ingest";
// Allowed mismatch between decoded audio length and declared duration.
constexpr double kDurationSlack = 0.5;
// Seconds per character when a missing run has no aligned neighbour on one side.
constexpr double kEdgeSecondsPerChar = 0.06;

[[noreturn]] void reject(const std::string& why, std::optional<std::size_t> line = std::nullopt) {
    throw ValidationError(kStage, why, line);
}

bool is_laughter_marker(std::string_view inner) {
    return text::to_lower(text::trim(inner)) == "laughter";
}

void add_laughter(Transcript& t) {
    int after = static_cast<int>(t.sentences.size()) - 1;
    if (!t.laughter_after.empty() && t.laughter_after.back() == after) return;
    t.laughter_after.push_back(after);
}

void add_sentence(Transcript& t, std::string_view text, int line) {
    auto trimmed = text::trim(text);
    bool has_word = false;
    for (auto tok : text::split_ws(trimmed))
        if (!text::is_punctuation(tok)) has_word = true;
    if (has_word) t.sentences.push_back({std::string(trimmed), line});
}

}  // namespace

Transcript parse_transcript(std::string_view bytes) {
    Transcript out;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i + 1);
        std::string_view line = lines[i];
        // Text outside markers accumulates into the current sentence; a
        // laughter marker closes it.
        std::string pending;
        std::size_t pos = 0;
        while (pos < line.size()) {
            auto open = line.find('[', pos);
            if (open == std::string_view::npos) {
                pending.append(line.substr(pos));
                break;
            }
            auto close = line.find(']', open + 1);
            if (close == std::string_view::npos) reject("unclosed marker '['", static_cast<std::size_t>(lineno));
            pending.append(line.substr(pos, open - pos));
            if (is_laughter_marker(line.substr(open + 1, close - open - 1))) {
                add_sentence(out, pending, lineno);
                pending.clear();
                add_laughter(out);
            } else {
                pending.push_back(' ');  // other markers ([APPLAUSE], [PAUSE], ...) are dropped
            }
            pos = close + 1;
        }
        add_sentence(out, pending, lineno);
    }
    return out;
}

std::vector<AlignmentRow> parse_alignment(std::string_view bytes) {
    std::vector<AlignmentRow> rows;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = text::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        auto c2 = line.rfind(',');
        auto c1 = c2 == std::string_view::npos || c2 == 0 ? std::string_view::npos
                                                         : line.rfind(',', c2 - 1);
        if (c1 == std::string_view::npos) reject("alignment row needs word,start_s,end_s", i + 1);
        AlignmentRow row;
        auto word = text::trim(line.substr(0, c1));
        if (word.size() >= 2 && word.front() == '"' && word.back() == '"')
            word = word.substr(1, word.size() - 2);
        row.word = std::string(word);
        bool ok_start = text::parse_double(line.substr(c1 + 1, c2 - c1 - 1), row.start_s);
        bool ok_end = text::parse_double(line.substr(c2 + 1), row.end_s);
        if (!ok_start || !ok_end) {
            if (rows.empty() && i == 0) continue;  // header
            reject("unparseable time in alignment row", i + 1);
        }
        if (row.end_s < row.start_s) reject("alignment row ends before it starts", i + 1);
        rows.push_back(std::move(row));
    }
    return rows;
}

SpeechMeta parse_meta(std::string_view bytes) {
    std::map<std::string, std::string> kv;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = text::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        auto sep = line.find_first_of(":=");
        if (sep == std::string_view::npos) reject("metadata line is not key: value", i + 1);
        kv[text::to_lower(text::trim(line.substr(0, sep)))] = std::string(text::trim(line.substr(sep + 1)));
    }
    for (const char* key : {"id", "title", "speaker", "category", "views", "duration_s"})
        if (!kv.count(key)) reject(std::string("metadata missing key '") + key + "'");

    SpeechMeta meta;
    meta.id = kv["id"];
    if (meta.id.empty() || !std::all_of(meta.id.begin(), meta.id.end(), [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
        }))
        reject("metadata id must be a non-empty slug [a-z0-9_-]");
    meta.title = kv["title"];
    meta.speaker = kv["speaker"];
    meta.category = kv["category"];
    long long views = 0;
    if (!text::parse_int(kv["views"], views) || views < 0) reject("metadata views must be a non-negative integer");
    meta.views = static_cast<std::uint64_t>(views);
    if (!text::parse_double(kv["duration_s"], meta.duration_s) || !(meta.duration_s > 0))
        reject("metadata duration_s must be positive");
    return meta;
}

std::vector<Sentence> attach_timings(const Transcript& transcript,
                                     const std::vector<AlignmentRow>& rows) {
    std::vector<Sentence> sentences;
    sentences.reserve(transcript.sentences.size());
    for (std::size_t s = 0; s < transcript.sentences.size(); ++s) {
        Sentence sent;
        sent.line = static_cast<int>(s);
        for (auto tok : text::split_ws(transcript.sentences[s].text)) {
            if (text::is_punctuation(tok)) continue;
            WordToken w;
            w.surface = std::string(tok);
            w.norm = text::normalize_word(tok);
            w.sent_index = static_cast<int>(sent.tokens.size());
            sent.tokens.push_back(std::move(w));
        }
        sentences.push_back(std::move(sent));
    }

    // Flattened view for matching and interpolation across sentence breaks.
    std::vector<WordToken*> flat;
    for (auto& s : sentences)
        for (auto& t : s.tokens) flat.push_back(&t);

    std::vector<bool> aligned(flat.size(), false);
    std::size_t next_row = 0;
    double last_end = -1.0;
    for (std::size_t i = 0; i < flat.size() && next_row < rows.size(); ++i) {
        const auto& row = rows[next_row];
        if (text::normalize_word(row.word) != flat[i]->norm) continue;
        if (row.start_s + 1e-9 < last_end)
            reject("alignment row " + std::to_string(next_row + 1) + " overlaps the previous word");
        flat[i]->start_s = row.start_s;
        flat[i]->end_s = row.end_s;
        last_end = row.end_s;
        aligned[i] = true;
        ++next_row;
    }
    if (next_row < rows.size())
        reject("alignment row " + std::to_string(next_row + 1) + " ('" + rows[next_row].word +
               "') does not match the transcript");

    std::size_t covered = static_cast<std::size_t>(std::count(aligned.begin(), aligned.end(), true));
    if (flat.empty()) reject("transcript has no words");
    double coverage = static_cast<double>(covered) / static_cast<double>(flat.size());
    if (coverage < kMinAlignmentCoverage)
        reject("alignment covers " + std::to_string(covered) + " of " + std::to_string(flat.size()) +
               " transcript tokens (need 95%)");

    for (std::size_t i = 0; i < flat.size();) {
        if (aligned[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < flat.size() && !aligned[j]) ++j;
        double chars = 0.0;
        for (std::size_t k = i; k < j; ++k) chars += static_cast<double>(std::max<std::size_t>(1, flat[k]->norm.size()));
        double lo, hi;
        if (i > 0 && j < flat.size()) {
            lo = flat[i - 1]->end_s;
            hi = flat[j]->start_s;
        } else if (j < flat.size()) {
            hi = flat[j]->start_s;
            lo = std::max(0.0, hi - chars * kEdgeSecondsPerChar);
        } else {
            lo = flat[i - 1]->end_s;
            hi = lo + chars * kEdgeSecondsPerChar;
        }
        double t = lo;
        for (std::size_t k = i; k < j; ++k) {
            double share = static_cast<double>(std::max<std::size_t>(1, flat[k]->norm.size())) / chars;
            flat[k]->start_s = t;
            t = (k + 1 == j) ? hi : t + (hi - lo) * share;
            flat[k]->end_s = t;
            flat[k]->interpolated = true;
        }
        i = j;
    }

    for (auto& s : sentences) refresh_span(s);
    return sentences;
}

ParsedBundle parse_bundle(std::string_view transcript_bytes, std::string_view alignment_bytes,
                          std::string_view audio_bytes, std::string_view meta_bytes) {
    ParsedBundle out;
    out.meta = parse_meta(meta_bytes);
    auto transcript = parse_transcript(transcript_bytes);
    auto rows = parse_alignment(alignment_bytes);
    out.sentences = attach_timings(transcript, rows);
    for (int after : transcript.laughter_after) {
        LaughterEvent ev;
        ev.after_sentence = after;
        ev.time_s = after >= 0 ? out.sentences[static_cast<std::size_t>(after)].span_s.end : 0.0;
        out.laughter.push_back(ev);
    }
    out.audio = wav::decode(std::string(audio_bytes));
    if (std::abs(out.audio.duration() - out.meta.duration_s) > kDurationSlack)
        reject("audio lasts " + std::to_string(out.audio.duration()) + " s but metadata says " +
               std::to_string(out.meta.duration_s) + " s");
    return out;
}

Segmentation segment_snippets(const std::vector<Sentence>& sentences,
                              const std::vector<LaughterEvent>& laughter) {
    Segmentation out;
    int start = 0;
    const int n = static_cast<int>(sentences.size());
    for (const auto& ev : laughter) {
        if (ev.after_sentence < 0) reject("laughter marker before any sentence");
        if (ev.after_sentence >= n) reject("laughter marker references missing sentence " + std::to_string(ev.after_sentence));
        if (ev.after_sentence < start) reject("laughter markers out of order or duplicated");
        Snippet snip;
        snip.index = static_cast<int>(out.snippets.size());
        for (int i = start; i <= ev.after_sentence; ++i) {
            Sentence s = sentences[static_cast<std::size_t>(i)];
            s.id = {snip.index, i - start};
            s.is_punchline = (i == ev.after_sentence);
            snip.sentences.push_back(std::move(s));
        }
        snip.span_s = {snip.sentences.front().span_s.start, snip.sentences.back().span_s.end};
        out.snippets.push_back(std::move(snip));
        start = ev.after_sentence + 1;
    }
    for (int i = start; i < n; ++i) {
        Sentence s = sentences[static_cast<std::size_t>(i)];
        s.id = {-1, i - start};
        s.is_punchline = false;
        out.tail.push_back(std::move(s));
    }
    return out;
}

AudioTrack clip_audio(const AudioTrack& track, TimeSpan span_s) {
    const double duration = track.duration();
    const double half_sample = track.sample_rate > 0 ? 0.5 / track.sample_rate : 0.0;
    if (!(span_s.start >= 0.0) || !(span_s.start < span_s.end) || span_s.end > duration + half_sample)
        reject("clip span [" + std::to_string(span_s.start) + ", " + std::to_string(span_s.end) +
               "] outside track of " + std::to_string(duration) + " s");
    auto first = static_cast<std::size_t>(std::llround(span_s.start * track.sample_rate));
    auto last = static_cast<std::size_t>(std::llround(span_s.end * track.sample_rate));
    last = std::min(last, track.samples.size());
    first = std::min(first, last);
    AudioTrack out;
    out.sample_rate = track.sample_rate;
    out.samples.assign(track.samples.begin() + static_cast<std::ptrdiff_t>(first),
                       track.samples.begin() + static_cast<std::ptrdiff_t>(last));
    return out;
}

}  // namespace laughtrack::ingest
