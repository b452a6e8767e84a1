#include <doctest.h>

#include <random>

#include "laughtrack/error.hpp"
#include "laughtrack/ingest.hpp"
#include "laughtrack/wav.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace laughtrack;
using namespace laughtrack::ingest;

namespace {

const char* kCopScene =
    "So when I show up to a crime scene,\n"
    "Somebody is always like, \"are you a cop?\"\n"
    "I don't wanna say I'm a cop cause it's against the law.\n"
    "So they go, \"are you a cop?\"\n"
    "And I go, \"I'll ask the f**king questions, okay?\"\n"
    "[LAUGHTER]\n";

// One row per word, 0.25 s each, back to back from 0.2 s.
std::string alignment_for(const std::string& transcript) {
    std::string out = "word,start_s,end_s\n";
    double t = 0.2;
    for (const auto& line : text::lines_of(transcript)) {
        if (line.find('[') != std::string::npos) continue;
        for (auto w : text::split_ws(line)) {
            if (text::is_punctuation(w)) continue;
            char buf[128];
            std::snprintf(buf, sizeof buf, "%s,%.3f,%.3f\n", text::normalize_word(w).c_str(), t, t + 0.25);
            out += buf;
            t += 0.25;
        }
    }
    return out;
}

std::string meta_text(double duration) {
    return "id: cop-scene\ntitle: Crime scene\nspeaker: Comic\ncategory: comedy\nviews: 10\nduration_s: " +
           std::to_string(duration) + "\n";
}

std::string silent_wav(double seconds, int rate = 16000) {
    AudioTrack t;
    t.sample_rate = rate;
    t.samples.assign(static_cast<std::size_t>(seconds * rate), 0.0f);
    return wav::encode_string(t);
}

std::string rejection_stage(auto&& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        return e.stage();
    }
    return "";
}

}  // namespace

TEST_CASE("transcript markers") {
    SUBCASE("laughter lines close the preceding sentence") {
        auto t = parse_transcript(kCopScene);
        CHECK(t.sentences.size() == 5);
        REQUIRE(t.laughter_after.size() == 1);
        CHECK(t.laughter_after[0] == 4);
        CHECK(t.sentences[4].source_line == 5);
    }
    SUBCASE("no markers") {
        auto t = parse_transcript("one line.\nanother line.\n");
        CHECK(t.sentences.size() == 2);
        CHECK(t.laughter_after.empty());
    }
    SUBCASE("inline marker splits its line") {
        auto t = parse_transcript("first part [LAUGHTER] second part\n");
        REQUIRE(t.sentences.size() == 2);
        CHECK(t.sentences[0].text == "first part");
        CHECK(t.laughter_after == std::vector<int>{0});
    }
    SUBCASE("adjacent markers collapse") {
        auto t = parse_transcript("a joke [LAUGHTER] [laughter]\n[LAUGHTER]\nnext\n");
        CHECK(t.laughter_after == std::vector<int>{0});
    }
    SUBCASE("other markers are dropped") {
        auto t = parse_transcript("And I go, [PAUSE] okay [LOUDER]?\n");
        REQUIRE(t.sentences.size() == 1);
        CHECK(t.laughter_after.empty());
        CHECK(t.sentences[0].text.find("PAUSE") == std::string::npos);
    }
    SUBCASE("marker before any sentence") {
        auto t = parse_transcript("[LAUGHTER]\nhello there\n");
        CHECK(t.laughter_after == std::vector<int>{-1});
    }
    SUBCASE("unclosed marker names its line") {
        try {
            parse_transcript("fine\nstill fine\nbroken [LAUGH\n");
            FAIL("accepted an unclosed marker");
        } catch (const ValidationError& e) {
            CHECK(e.stage() == "ingest");
            CHECK(e.line() == std::optional<std::size_t>(3));
        }
    }
}

TEST_CASE("alignment rows") {
    auto rows = parse_alignment("word,start_s,end_s\n\"hello\",0.10,0.40\nworld,0.5,0.9\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].word == "hello");
    CHECK(rows[1].end_s == doctest::Approx(0.9));
    CHECK_THROWS_AS(parse_alignment("a,1.0,0.5\n"), ValidationError);
    try {
        parse_alignment("a,0,1\nb,x,2\n");
        FAIL("accepted a bad time");
    } catch (const ValidationError& e) {
        CHECK(e.line() == std::optional<std::size_t>(2));
    }
}

TEST_CASE("metadata") {
    auto m = parse_meta(meta_text(10.0));
    CHECK(m.id == "cop-scene");
    CHECK(m.views == 10);
    CHECK_THROWS_AS(parse_meta("id: x\ntitle: t\n"), ValidationError);
    CHECK_THROWS_AS(parse_meta("id: Not A Slug\ntitle: t\nspeaker: s\ncategory: c\nviews: 1\nduration_s: 1\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_meta("id: x\ntitle: t\nspeaker: s\ncategory: c\nviews: 1\nduration_s: 0\n"),
                    ValidationError);
}

TEST_CASE("timings and interpolation") {
    // 40 words, two of them ("bb", "cccc") missing from the alignment between
    // neighbours ending at 1.0 s and starting at 2.0 s: coverage is 38/40.
    Transcript t;
    std::string line;
    std::vector<AlignmentRow> rows;
    double clock = 0.0;
    for (int i = 0; i < 40; ++i) {
        std::string w = i == 10 ? "bb" : i == 11 ? "cccc" : "w" + std::to_string(i);
        line += w + " ";
        if (i == 10 || i == 11) continue;
        const double len = i < 9 ? 0.08 : 0.2;
        if (i == 9) clock = 0.8;
        if (i == 12) clock = 2.0;
        rows.push_back({w, clock, clock + len});
        clock += len;
    }
    t.sentences.push_back({line, 1});
    auto s = attach_timings(t, rows);
    const auto& tok = s[0].tokens;
    REQUIRE(tok[9].end_s == doctest::Approx(1.0));
    REQUIRE(tok[12].start_s == doctest::Approx(2.0));
    // Hand computation: 6 characters over 1.0 s, so bb gets 2/6 and cccc 4/6.
    CHECK(tok[10].start_s == doctest::Approx(1.0));
    CHECK(tok[10].end_s == doctest::Approx(1.0 + 2.0 / 6.0));
    CHECK(tok[11].start_s == doctest::Approx(1.0 + 2.0 / 6.0));
    CHECK(tok[11].end_s == doctest::Approx(2.0));
    CHECK(tok[10].interpolated);
    CHECK_FALSE(tok[9].interpolated);
}

TEST_CASE("timings reject poor alignments") {
    Transcript t;
    std::string line;
    for (int i = 0; i < 40; ++i) line += "w" + std::to_string(i) + " ";
    t.sentences.push_back({line, 1});
    std::vector<AlignmentRow> rows;
    for (int i = 0; i < 40; ++i)
        if (i != 7) rows.push_back({"w" + std::to_string(i), i * 0.5, i * 0.5 + 0.4});

    SUBCASE("one word missing of forty is interpolated inside its neighbours") {
        auto s = attach_timings(t, rows);
        const auto& tok = s[0].tokens;
        CHECK(tok[7].interpolated);
        CHECK(tok[7].start_s == doctest::Approx(tok[6].end_s));
        CHECK(tok[7].end_s == doctest::Approx(tok[8].start_s));
        for (std::size_t i = 1; i < tok.size(); ++i) CHECK(tok[i].start_s >= tok[i - 1].end_s - 1e-12);
    }
    SUBCASE("coverage under 95 percent") {
        rows.erase(rows.begin() + 10, rows.begin() + 13);
        CHECK_THROWS_AS(attach_timings(t, rows), ValidationError);
    }
    SUBCASE("a row that matches nothing") {
        rows.push_back({"zzz", 100.0, 100.5});
        CHECK_THROWS_AS(attach_timings(t, rows), ValidationError);
    }
    SUBCASE("overlapping rows") {
        rows[3].start_s = rows[2].start_s;
        CHECK_THROWS_AS(attach_timings(t, rows), ValidationError);
    }
}

TEST_CASE("cop scene bundle") {
    const std::string transcript = kCopScene;
    auto b = parse_bundle(transcript, alignment_for(transcript), silent_wav(10.0), meta_text(10.0));
    CHECK(b.sentences.size() == 5);
    CHECK(b.laughter.size() == 1);
    CHECK(b.audio.duration() == doctest::Approx(10.0));
    CHECK(b.sentences[4].tokens[6].surface == "f**king");
    CHECK(b.sentences[4].tokens[3].norm == "i'll");
    for (const auto& s : b.sentences)
        for (const auto& tok : s.tokens) CHECK(tok.norm.find('[') == std::string::npos);

    auto seg = segment_snippets(b.sentences, b.laughter);
    REQUIRE(seg.snippets.size() == 1);
    const auto& snip = seg.snippets[0];
    CHECK(snip.sentences.size() == 5);
    CHECK(snip.context_length() == 4);
    CHECK(snip.punchline().is_punchline);
    CHECK(snip.punchline().line == 4);
    for (int i = 0; i < 4; ++i) CHECK_FALSE(snip.sentences[i].is_punchline);
    CHECK(seg.tail.empty());

    CHECK(rejection_stage([&] { parse_bundle(transcript, alignment_for(transcript), silent_wav(3.0), meta_text(10.0)); }) ==
          "ingest");
}

TEST_CASE("segmentation") {
    auto s = [](int line) {
        Sentence x;
        x.line = line;
        x.tokens.push_back({});
        return x;
    };
    std::vector<Sentence> sentences = {s(0), s(1), s(2), s(3), s(4)};
    auto seg = segment_snippets(sentences, {{0.0, 1}, {0.0, 3}});
    REQUIRE(seg.snippets.size() == 2);
    CHECK(seg.snippets[0].sentences.size() == 2);
    CHECK(seg.snippets[1].sentences.front().line == 2);
    CHECK(seg.snippets[1].punchline().line == 3);
    CHECK(seg.tail.size() == 1);
    CHECK_THROWS_AS(segment_snippets(sentences, {{0.0, -1}}), ValidationError);
    CHECK_THROWS_AS(segment_snippets(sentences, {{0.0, 3}, {0.0, 1}}), ValidationError);
    CHECK(segment_snippets(sentences, {}).snippets.empty());
}

TEST_CASE("segmentation partitions the sentences (property)") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 30)(rng);
        std::vector<Sentence> sentences(static_cast<std::size_t>(n));
        std::vector<LaughterEvent> laughter;
        for (int i = 0; i < n; ++i) {
            sentences[static_cast<std::size_t>(i)].line = i;
            if (rng() % 3 == 0) laughter.push_back({0.0, i});
        }
        auto seg = segment_snippets(sentences, laughter);
        REQUIRE(seg.snippets.size() == laughter.size());
        std::vector<int> seen;
        for (std::size_t k = 0; k < seg.snippets.size(); ++k) {
            const auto& sn = seg.snippets[k];
            CHECK(sn.punchline().line == laughter[k].after_sentence);
            int flagged = 0;
            for (const auto& x : sn.sentences) {
                seen.push_back(x.line);
                flagged += x.is_punchline;
            }
            CHECK(flagged == 1);
        }
        for (const auto& x : seg.tail) seen.push_back(x.line);
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        CHECK(seen == all);
    }
}

TEST_CASE("wav codec") {
    auto track = testing::tones(0.5, {{0.0, 0.5, 220.0, 0.5}});
    auto bytes = wav::encode_string(track);
    auto back = wav::decode(bytes);
    CHECK(back.sample_rate == 16000);
    REQUIRE(back.samples.size() == track.samples.size());
    for (std::size_t i = 0; i < back.samples.size(); i += 97)
        CHECK(back.samples[i] == doctest::Approx(track.samples[i]).epsilon(1e-4));

    SUBCASE("stereo is averaged") {
        // 2 frames: (1000, 3000) and (-2000, 0).
        std::string s = "RIFF";
        auto u32 = [&](std::uint32_t v) { for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF)); };
        auto u16 = [&](std::uint16_t v) { s.push_back(static_cast<char>(v & 0xFF)); s.push_back(static_cast<char>(v >> 8)); };
        u32(36 + 8);
        s += "WAVEfmt ";
        u32(16); u16(1); u16(2); u32(8000); u32(8000 * 4); u16(4); u16(16);
        s += "data";
        u32(8);
        u16(1000); u16(3000); u16(static_cast<std::uint16_t>(-2000)); u16(0);
        auto t = wav::decode(s);
        REQUIRE(t.samples.size() == 2);
        CHECK(t.samples[0] == doctest::Approx(2000.0 / 32768.0));
        CHECK(t.samples[1] == doctest::Approx(-1000.0 / 32768.0));
    }
    SUBCASE("unsupported encodings") {
        auto patched = bytes;
        patched[34] = 8;  // bits per sample
        CHECK_THROWS_AS(wav::decode(patched), ValidationError);
        patched = bytes;
        patched[20] = 3;  // IEEE float
        CHECK_THROWS_AS(wav::decode(patched), ValidationError);
        CHECK_THROWS_AS(wav::decode(std::string("RIFF0000WAVE")), ValidationError);
        CHECK_THROWS_AS(wav::decode(std::string("not a wav at all")), ValidationError);
        AudioTrack slow;
        slow.sample_rate = 4000;
        slow.samples.assign(100, 0.0f);
        CHECK_THROWS_AS(wav::decode(wav::encode_string(slow)), ValidationError);
    }
}

TEST_CASE("clip_audio") {
    auto track = testing::tones(10.0, {{1.0, 9.0, 200.0, 0.4}});
    SUBCASE("identity span") {
        auto c = clip_audio(track, {0.0, 10.0});
        CHECK(c.samples == track.samples);
    }
    SUBCASE("one second at 16 kHz") {
        auto c = clip_audio(track, {2.0, 3.0});
        CHECK(c.samples.size() == 16000);
        CHECK(c.sample_rate == 16000);
        CHECK(c.samples.front() == track.samples[32000]);
    }
    SUBCASE("outside the track") {
        CHECK_THROWS_AS(clip_audio(track, {9.0, 11.0}), ValidationError);
        CHECK_THROWS_AS(clip_audio(track, {3.0, 2.0}), ValidationError);
        CHECK_THROWS_AS(clip_audio(track, {-1.0, 2.0}), ValidationError);
    }
}

TEST_CASE("clip RMS equals raw-sample RMS on fixture sentences") {
    const auto dir = testing::fixture_dir("ted-spam");
    const auto raw = lexicon::read_file(dir / "audio.wav");
    const auto track = wav::decode(raw);
    const auto& doc = testing::fixture_doc("ted-spam");
    for (const auto& a : doc.snippets)
        for (const auto& s : a.snippet.sentences) {
            auto clip = clip_audio(track, s.span_s);
            double acc = 0.0;
            for (float x : clip.samples) acc += static_cast<double>(x) * x;
            const double rms = std::sqrt(acc / static_cast<double>(clip.samples.size()));
            const auto first = static_cast<std::size_t>(std::llround(s.span_s.start * 16000));
            const auto last = static_cast<std::size_t>(std::llround(s.span_s.end * 16000));
            CHECK(rms == doctest::Approx(oracle::raw_rms(raw, first, last)).epsilon(1e-9));
        }
}
