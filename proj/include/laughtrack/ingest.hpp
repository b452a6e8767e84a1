#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "laughtrack/types.hpp"

namespace laughtrack::ingest {

// Minimum fraction of transcript tokens the alignment must time directly.
inline constexpr double kMinAlignmentCoverage = 0.95;

struct TranscriptLine {
    std::string text;
    int source_line = 0;  // 1-based line in the transcript file
};

struct Transcript {
    std::vector<TranscriptLine> sentences;
    // For each laughter marker: index of the sentence it follows, or -1 when
    // it precedes every sentence. Adjacent markers collapse into one.
    std::vector<int> laughter_after;
};

struct AlignmentRow {
    std::string word;
    double start_s = 0.0;
    double end_s = 0.0;
};

struct ParsedBundle {
    SpeechMeta meta;
    std::vector<Sentence> sentences;
    std::vector<LaughterEvent> laughter;
    AudioTrack audio;
};

struct Segmentation {
    std::vector<Snippet> snippets;
    // Sentences after the final marker; kept but never analyzed.
    std::vector<Sentence> tail;
};

Transcript parse_transcript(std::string_view bytes);
std::vector<AlignmentRow> parse_alignment(std::string_view bytes);
SpeechMeta parse_meta(std::string_view bytes);

// Tokenizes the transcript sentences and attaches alignment timings. Tokens
// the alignment skips are interpolated between their aligned neighbours,
// splitting the gap in proportion to character length.
std::vector<Sentence> attach_timings(const Transcript& transcript,
                                     const std::vector<AlignmentRow>& rows);

ParsedBundle parse_bundle(std::string_view transcript_bytes, std::string_view alignment_bytes,
                          std::string_view audio_bytes, std::string_view meta_bytes);

Segmentation segment_snippets(const std::vector<Sentence>& sentences,
                              const std::vector<LaughterEvent>& laughter);

// Samples [round(start * rate), round(end * rate)).
AudioTrack clip_audio(const AudioTrack& track, TimeSpan span_s);

}  // namespace laughtrack::ingest
