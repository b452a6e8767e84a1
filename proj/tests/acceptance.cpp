// One pass/fail line per acceptance criterion. Tolerances and time limits
// are fixed here; the exit status is non-zero when any criterion fails.
#include <httplib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "laughtrack/audio_features.hpp"
#include "laughtrack/context_graph.hpp"
#include "laughtrack/frames.hpp"
#include "laughtrack/http_server.hpp"
#include "laughtrack/ingest.hpp"
#include "laughtrack/service.hpp"
#include "laughtrack/summary.hpp"
#include "laughtrack/text_features.hpp"
#include "laughtrack/wav.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace laughtrack;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kSegmentationLimitS = 5.0;
constexpr double kPairScanLimitS = 2.0;
constexpr double kClusteringLimitS = 5.0;
constexpr double kTextRankTolerance = 1e-6;
constexpr double kLouderDb = 6.02;
constexpr double kLouderToleranceDb = 0.5;
constexpr double kPauseToleranceS = 0.02;

// Collects failed checks for one criterion.
struct Outcome {
    std::vector<std::string> failures;
    std::string note;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> vector_vocabulary() {
    std::vector<std::string> vocab;
    std::ifstream in(testing::data_dir() / "lexicon" / "vectors.txt");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) vocab.push_back(line.substr(0, line.find(' ')));
    return vocab;
}

// ---------------------------------------------------------------------------

void segmentation_law(Outcome& out) {
    static const char* kWords[] = {"so", "the", "cat", "went", "to", "Paris", "and", "never", "came", "back",
                                   "I", "said", "okay", "why", "not", "spam", "dinner", "mom", "badge", "it's"};
    static const char* kEnds[] = {".", "?", "!", ","};
    std::mt19937 rng(1000);
    const auto t0 = Clock::now();
    int transcripts = 0, markers_total = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 25)(rng);
        std::string transcript, alignment = "word,start_s,end_s\n";
        std::vector<std::vector<std::string>> sentence_words;
        std::vector<int> marker_after;
        double t = 0.1;
        for (int s = 0; s < n; ++s) {
            const int len = std::uniform_int_distribution<int>(1, 8)(rng);
            std::vector<std::string> words;
            std::string line;
            for (int w = 0; w < len; ++w) words.push_back(text::normalize_word(kWords[rng() % 20]));
            for (int w = 0; w < len; ++w) {
                line += (w ? " " : "") + words[w];
                char row[96];
                std::snprintf(row, sizeof row, "%s,%.3f,%.3f\n", words[w].c_str(), t, t + 0.08);
                alignment += row;
                t += 0.1;
            }
            line += kEnds[rng() % 4];
            if (rng() % 7 == 0) line += " [APPLAUSE]";
            sentence_words.push_back(std::move(words));
            const bool laugh = rng() % 3 == 0;
            if (laugh) {
                marker_after.push_back(s);
                // Inline at the end of the line, or on a line of its own.
                line += (rng() % 2) ? " [LAUGHTER]" : "\n[Laughter]";
            }
            transcript += line + "\n";
        }
        AudioTrack silent;
        silent.sample_rate = 8000;
        silent.samples.assign(static_cast<std::size_t>(std::ceil((t + 0.2) * 8000)), 0.0f);
        const std::string meta = "id: synth\ntitle: synth\nspeaker: synth\ncategory: synth\nviews: 0\nduration_s: " + std::to_string(silent.duration()) + "\n";

        auto parsed = ingest::parse_bundle(transcript, alignment, wav::encode_string(silent), meta);
        auto seg = ingest::segment_snippets(parsed.sentences, parsed.laughter);
        ++transcripts;
        markers_total += static_cast<int>(marker_after.size());
        if (seg.snippets.size() != marker_after.size()) {
            out.check(false, "transcript " + std::to_string(trial) + ": " + std::to_string(seg.snippets.size()) +
                                 " snippets for " + std::to_string(marker_after.size()) + " markers");
            continue;
        }
        for (std::size_t k = 0; k < seg.snippets.size(); ++k) {
            const auto& snip = seg.snippets[k];
            const auto& punch = snip.punchline();
            std::vector<std::string> got;
            for (const auto& tok : punch.tokens) got.push_back(tok.norm);
            bool only_last = punch.is_punchline;
            for (std::size_t i = 0; i + 1 < snip.sentences.size(); ++i) only_last = only_last && !snip.sentences[i].is_punchline;
            out.check(punch.line == marker_after[k] && got == sentence_words[static_cast<std::size_t>(marker_after[k])] &&
                          only_last,
                      "transcript " + std::to_string(trial) + " snippet " + std::to_string(k) +
                          ": punchline is not the sentence before the marker");
        }
    }
    const double elapsed = seconds_since(t0);
    out.check(elapsed < kSegmentationLimitS, "took " + std::to_string(elapsed) + " s");
    char note[128];
    std::snprintf(note, sizeof note, "%d transcripts, %d markers, %.2f s", transcripts, markers_total, elapsed);
    out.note = note;
}

void incongruity_oracle(Outcome& out) {
    const auto& lex = testing::bundled();
    auto vocab = vector_vocabulary();
    std::mt19937 rng(2);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::vector<Sentence> sentences;
    for (int k = 0; k < 100; ++k) {
        std::string s;
        for (int n = std::uniform_int_distribution<int>(2, 14)(rng); n > 0; --n) s += vocab[pick(rng)] + " ";
        sentences.push_back(testing::make_sentence(s));
    }
    // Thresholds wide open so both detectors always report their extreme pair.
    ThresholdConfig open_min;
    open_min.disconnect_max_sim = 1.0;
    open_min.repeat_min_sim = 2.0;
    ThresholdConfig open_max;
    open_max.disconnect_max_sim = 0.1;
    open_max.repeat_min_sim = -1.0;

    const auto t0 = Clock::now();
    int pairs = 0;
    for (std::size_t k = 0; k < sentences.size(); ++k) {
        const auto& s = sentences[k];
        auto want_min = oracle::pair_scan(s, lex, true, false);
        auto got_min = features::detect_disconnection(s, lex, open_min);
        auto want_max = oracle::pair_scan(s, lex, false, true);
        auto got_max = features::detect_intra_repetition(s, lex, open_max);
        auto same = [](const auto& want, const auto& got) {
            if (want.has_value() != got.has_value()) return false;
            return !want || got->targets == std::vector<int>{want->i, want->j};
        };
        out.check(same(want_min, got_min), "sentence " + std::to_string(k) + ": disconnection differs from the scan");
        out.check(same(want_max, got_max), "sentence " + std::to_string(k) + ": repetition differs from the scan");
        pairs += want_min.has_value() + want_max.has_value();
    }
    const double elapsed = seconds_since(t0);
    out.check(elapsed < kPairScanLimitS, "took " + std::to_string(elapsed) + " s");
    char note[128];
    std::snprintf(note, sizeof note, "100 sentences, %d extreme pairs compared, %.3f s", pairs, elapsed);
    out.note = note;
}

void cop_fixture(Outcome& out) {
    const auto& doc = testing::fixture_doc("cop-demo");
    const auto& a = doc.snippets.at(0);
    const auto& punch = a.snippet.punchline();
    out.check(punch.text().find("I'll ask the f**king questions, okay?") != std::string::npos,
              "punchline text is '" + punch.text() + "'");
    int at = -1;
    for (const auto& t : punch.tokens)
        if (t.norm == "f**king") at = t.sent_index;
    bool pol = false, subj = false;
    for (const auto& x : a.annotations.back()) {
        if (x.targets != std::vector<int>{at}) continue;
        pol = pol || x.kind == FeatureKind::polarity;
        subj = subj || x.kind == FeatureKind::subjectivity;
    }
    out.check(at >= 0 && pol, "no polarity on f**king");
    out.check(at >= 0 && subj, "no subjectivity on f**king");

    const graph::ConceptCluster* cop = nullptr;
    for (const auto& c : a.graph.clusters) {
        int hits = 0;
        for (const auto& m : c.members) hits += m.text.find("cop") != std::string::npos;
        if (hits >= 2 && (!cop || c.members.size() > cop->members.size())) cop = &c;
    }
    std::set<int> where;
    if (cop)
        for (const auto& m : cop->members) where.insert(m.sentence);
    std::string where_text;
    for (int s : where) where_text += (where_text.empty() ? "" : ",") + std::to_string(s);
    out.check(cop != nullptr, "no cop concept cluster");
    out.check(where == std::set<int>{0, 1, 2}, "cop cluster spans sentences {" + where_text + "}, expected {0,1,2}");

    int rank = -1;
    for (std::size_t i = 0; i < a.keywords.size(); ++i)
        if (rank < 0 && a.keywords[i].text == "cop") rank = static_cast<int>(i) + 1;
    out.check(rank >= 1 && rank <= 3, "cop keyword rank " + std::to_string(rank));
    out.note = "cop cluster sentences {" + where_text + "}, cop keyword rank " + std::to_string(rank);
}

void italy_fixture(Outcome& out) {
    const auto& doc = testing::fixture_doc("italy");
    out.check(doc.chains_supplied, "coref chains were not taken from the bundle");
    const auto& g = doc.snippets.at(0).graph;
    const graph::ConceptCluster* evil = nullptr;
    for (const auto& c : g.clusters)
        for (const auto& m : c.members)
            if (m.text == "for being evil") evil = &c;
    bool with_for_evil = false;
    if (evil)
        for (const auto& m : evil->members) with_for_evil = with_for_evil || m.text == "for evil";
    out.check(evil && with_for_evil, "no cluster holding both 'for being evil' and 'for evil'");

    // Sentences 3 and 5 counted from one are indices 2 and 4.
    bool linked = false;
    for (const auto& l : g.links) linked = linked || (l.from == 2 && l.to == 4);
    out.check(linked, "no link between sentences 3 and 5");

    const graph::PhraseSpan* their = nullptr;
    for (const auto& sp : g.spans)
        if (sp.text == "Their people") their = &sp;
    out.check(their && their->substituted_text == "Italian people", "'Their people' not substituted");
    if (their && their->vector) {
        std::vector<lexicon::PhraseToken> toks{{"italian", std::nullopt}, {"people", std::string("NOUN")}};
        auto want = testing::bundled().phrase_vector(std::span<const lexicon::PhraseToken>(toks));
        out.check(want && *want == *their->vector, "'Their people' is not embedded as 'Italian people'");
    } else {
        out.check(false, "'Their people' has no embedding");
    }
    out.note = "evil cluster and link (3,5) present, 'Their people' -> '" +
               (their ? their->substituted_text : std::string("?")) + "'";
}

void clustering_oracle(Outcome& out) {
    std::mt19937 rng(5);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> eps(0.05, 0.6);
    const auto t0 = Clock::now();
    int multi = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 15);
        const int dims = 2 + static_cast<int>(rng() % 9);
        std::vector<lexicon::Vector> centres(1 + rng() % 3, lexicon::Vector(dims));
        for (auto& c : centres)
            for (auto& x : c) x = gauss(rng);
        const double spread = 0.05 + 0.5 * (rng() % 4);
        std::vector<lexicon::Vector> pts;
        for (int i = 0; i < n; ++i) {
            auto p = centres[rng() % centres.size()];
            for (auto& x : p) x += spread * gauss(rng);
            pts.push_back(p);
        }
        const double e = eps(rng);
        const int min_pts = 1 + static_cast<int>(rng() % 4);
        auto got = graph::dbscan(pts, e, min_pts);
        auto want = oracle::dbscan(pts, e, min_pts);
        out.check(oracle::same_partition(got, want), "point set " + std::to_string(trial) + " partitions differ");
        multi += std::set<int>(got.begin(), got.end()).size() > 1;
    }
    const double elapsed = seconds_since(t0);
    out.check(elapsed < kClusteringLimitS, "took " + std::to_string(elapsed) + " s");
    char note[128];
    std::snprintf(note, sizeof note, "200 point sets (%d with several groups), %.3f s", multi, elapsed);
    out.note = note;
}

void textrank_oracle(Outcome& out) {
    const TextRankParams p;
    double worst = 0.0;
    int nodes = 0, graphs = 0;
    for (auto name : testing::kFixtures)
        for (const auto& a : testing::fixture_doc(name).snippets) {
            auto g = summary::cooccurrence_graph(a.snippet, p.window);
            auto got = summary::textrank(g, p);
            auto want = oracle::dense_textrank(a.snippet, p.window, p.damping, p.tolerance, p.max_iterations);
            std::map<std::string, double> ref;
            for (std::size_t i = 0; i < want.terms.size(); ++i) ref[want.terms[i]] = want.scores[i];
            out.check(ref.size() == g.nodes.size(), std::string(name) + ": node sets differ");
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                auto it = ref.find(g.nodes[i]);
                const double d = it == ref.end() ? 1.0 : std::abs(got.scores[i] - it->second);
                worst = std::max(worst, d);
                ++nodes;
            }
            ++graphs;
        }
    out.check(worst <= kTextRankTolerance, "max difference " + std::to_string(worst));
    char note[128];
    std::snprintf(note, sizeof note, "%d graphs, %d nodes, max |diff| %.2e", graphs, nodes, worst);
    out.note = note;
}

// One sine per word over the word's own span, through the WAV codec.
AudioTrack voiced(const Sentence& s, const std::vector<double>& hz, const std::vector<double>& amp) {
    std::vector<testing::Segment> segs;
    for (std::size_t i = 0; i < s.tokens.size(); ++i)
        segs.push_back({s.tokens[i].start_s, s.tokens[i].end_s, hz[i], amp[i]});
    return wav::decode(wav::encode_string(testing::tones(s.span_s.end + 0.2, segs, 16000)));
}

void audio_detectors(Outcome& out) {
    const ThresholdConfig defaults;
    std::ostringstream note;
    note.precision(4);

    // Louder: second word at twice the amplitude.
    auto loud = testing::make_sentence("well okay");
    auto loud_track = voiced(loud, {220, 220}, {0.2, 0.4});
    auto v = audio::detect_volume_variation(loud, audio::sentence_acoustics(loud, audio::analyze_frames(loud_track)), defaults);
    const bool louder = v.size() == 1 && v[0].kind == FeatureKind::louder && v[0].targets == std::vector<int>{1};
    out.check(louder, "doubled word not flagged louder");
    if (louder) {
        out.check(std::abs(v[0].magnitude - kLouderDb) <= kLouderToleranceDb,
                  "louder by " + std::to_string(v[0].magnitude) + " dB");
        note << "louder " << v[0].magnitude << " dB; ";
    }

    // Stress: 880 Hz against 440/450 Hz words. The pitch band is widened to
    // 1 kHz so the 880 Hz tone is not read as its sub-octave.
    auto high = testing::make_sentence("a b c d e");
    FrameParams wide;
    wide.f0_max_hz = 1000.0;
    auto high_track = voiced(high, {440, 450, 440, 450, 880}, {0.3, 0.3, 0.3, 0.3, 0.3});
    auto st = audio::detect_pitch_stress(high, audio::sentence_acoustics(high, audio::analyze_frames(high_track, wide)), defaults);
    out.check(st.size() == 1 && st[0].kind == FeatureKind::stress && st[0].targets == std::vector<int>{4},
              "880 Hz word not the only stressed word");
    note << "stress on word " << (st.empty() ? -1 : st[0].targets.at(0)) << "; ";

    // Pauses: a 0.6 s gap then a 0.4 s gap.
    auto gaps = testing::make_sentence("one two three");
    gaps.tokens[1].start_s = gaps.tokens[0].end_s + 0.6;
    gaps.tokens[1].end_s = gaps.tokens[1].start_s + 0.3;
    gaps.tokens[2].start_s = gaps.tokens[1].end_s + 0.4;
    gaps.tokens[2].end_s = gaps.tokens[2].start_s + 0.3;
    refresh_span(gaps);
    auto p = audio::detect_pauses(gaps.tokens, defaults);
    const bool one_pause = p.size() == 1 && p[0].targets == std::vector<int>{1};
    out.check(one_pause, "expected a single pause before the second word");
    if (one_pause) {
        out.check(std::abs(p[0].magnitude - 0.6) <= kPauseToleranceS, "pause magnitude " + std::to_string(p[0].magnitude));
        note << "pause " << p[0].magnitude << " s; ";
    }

    // SPM: two syllables over exactly 0.4 s.
    WordToken okay;
    okay.norm = "okay";
    okay.syllables = testing::bundled().syllable_count("okay");
    okay.start_s = 0.6;
    okay.end_s = 1.0;
    auto frames = audio::analyze_frames(testing::tones(1.5, {{0.6, 1.0, 220.0, 0.3}}));
    auto wa = audio::word_acoustics(okay, frames);
    out.check(okay.syllables == 2, "okay has " + std::to_string(okay.syllables) + " syllables");
    out.check(wa.spm == 300.0, "spm " + std::to_string(wa.spm));
    note << "spm " << wa.spm;
    out.note = note.str();
}

int count_kinds(const SpeechDocument& d, const std::vector<FeatureKind>& kinds) {
    int n = 0;
    for (const auto& a : d.snippets)
        for (const auto& s : a.annotations)
            for (const auto& x : s)
                for (auto k : kinds) n += x.kind == k;
    return n;
}

void threshold_monotonicity(Outcome& out) {
    struct Axis {
        const char* name;
        std::vector<double> values;  // increasingly strict
        std::function<void(ThresholdConfig&, double)> set;
        std::vector<FeatureKind> kinds;
    };
    const std::vector<Axis> axes = {
        {"pause_min_s", {0.3, 0.5, 0.8, 1.2, 2.5}, [](ThresholdConfig& t, double x) { t.pause_min_s = x; },
         {FeatureKind::pause}},
        {"disconnect_max_sim", {0.6, 0.4, 0.25, 0.1, 0.0},
         [](ThresholdConfig& t, double x) { t.disconnect_max_sim = x; }, {FeatureKind::disconnection}},
        {"speed_M", {1.0, 1.25, 1.5, 2.0, 3.0}, [](ThresholdConfig& t, double x) { t.speed_M = x; },
         {FeatureKind::faster, FeatureKind::slower}},
    };
    std::ostringstream note;
    for (auto name : testing::kFixtures) {
        const auto& base = testing::fixture_doc(name);
        for (const auto& axis : axes) {
            std::vector<int> counts;
            for (double x : axis.values) {
                auto t = base.config.thresholds;
                axis.set(t, x);
                counts.push_back(count_kinds(recompute(base, testing::bundled(), t), axis.kinds));
            }
            bool ok = true;
            for (std::size_t i = 1; i < counts.size(); ++i) ok = ok && counts[i] <= counts[i - 1];
            std::string seq;
            for (int c : counts) seq += (seq.empty() ? "" : ">=") + std::to_string(c);
            out.check(ok, std::string(name) + " " + axis.name + " counts " + seq);
            if (std::string(name) == "ted-spam") note << axis.name << " " << seq << "; ";
        }
    }
    out.note = "3 fixtures x 3 thresholds x 5 values; ted-spam: " + note.str();
}

httplib::MultipartFormDataItems bundle_form(const std::string& name) {
    auto b = read_bundle(testing::fixture_dir(name));
    httplib::MultipartFormDataItems items = {
        {"transcript", b.transcript, "transcript.txt", "text/plain"},
        {"alignment", b.alignment, "alignment.csv", "text/csv"},
        {"audio", b.audio, "audio.wav", "audio/wav"},
        {"meta", b.meta, "meta.txt", "text/plain"},
    };
    if (b.conllu) items.push_back({"conllu", *b.conllu, "parse.conllu", "text/plain"});
    if (b.coref) items.push_back({"coref", *b.coref, "coref.tsv", "text/plain"});
    return items;
}

// Forks a writer that dies partway through writing `id`'s document.
bool killed_ingest(const std::filesystem::path& root, const std::string& fixture) {
    pid_t pid = ::fork();
    if (pid < 0) return false;
    if (pid == 0) {
        SpeechStore store(root);
        Service service(store, testing::bundled());
        store.set_write_hook([](const std::filesystem::path& temp, std::size_t) {
            if (temp.filename().string().find(".json.tmp-") != std::string::npos &&
                temp.filename().string().rfind("index", 0) != 0)
                ::kill(::getpid(), SIGKILL);
        });
        service.ingest(read_bundle(testing::fixture_dir(fixture)));
        ::_exit(0);
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    return WIFSIGNALED(status) && WTERMSIG(status) == SIGKILL;
}

void service_round_trip(Outcome& out) {
    testing::TempDir dir;
    {
        SpeechStore store(dir.path);
        Service service(store, testing::bundled());
        HttpServer server(service);
        const int port = server.bind("127.0.0.1", 0);
        out.check(port > 0, "could not bind");
        if (port <= 0) return;
        std::thread th([&] { server.serve(); });
        server.wait_until_ready();
        httplib::Client c("127.0.0.1", port);
        c.set_read_timeout(120, 0);
        auto json = [&](const std::string& path) {
            auto r = c.Get(path);
            return r && r->status == 200 ? Json::parse(r->body) : Json();
        };

        for (auto name : testing::kFixtures) {
            auto r = c.Post("/speeches", bundle_form(name));
            out.check(r && r->status == 201, std::string("ingest of ") + name + " failed");
        }
        auto listed = json("/speeches");
        out.check(listed.size() == 3, "list returned " + std::to_string(listed.size()) + " speeches");
        for (const auto& l : listed) {
            const std::string id = l.at("meta").at("id");
            const std::string base = "/speeches/" + id;
            const int laughs = l.at("laughter_count");
            const std::string transcript = lexicon::read_file(testing::fixture_dir(id) / "transcript.txt");
            int markers = 0;
            for (std::size_t at = 0; (at = text::to_lower(transcript).find("[laughter]", at)) != std::string::npos; ++at)
                ++markers;
            out.check(laughs == markers, id + ": laughter_count " + std::to_string(laughs) + " vs " +
                                             std::to_string(markers) + " markers");
            auto summary = json(base + "/summary");
            out.check(summary.is_object() && static_cast<int>(summary.at("punchlines").size()) == laughs,
                      id + ": summary punchlines differ from laughter events");
            std::map<std::string, int> recount;
            for (int k = 0; k < laughs; ++k) {
                auto detail = json(base + "/snippets/" + std::to_string(k));
                if (!detail.is_object()) {
                    out.check(false, id + ": snippet " + std::to_string(k) + " missing");
                    continue;
                }
                const auto& sentences = detail.at("sentences");
                for (const auto& x : sentences.back().at("annotations")) ++recount[x.at("kind").get<std::string>()];
                auto clip = c.Get(base + "/snippets/" + std::to_string(k) + "/audio/" +
                                  std::to_string(sentences.size() - 1));
                out.check(clip && clip->status == 200 && clip->get_header_value("Content-Type") == "audio/wav" &&
                              !wav::decode(clip->body).samples.empty(),
                          id + ": audio clip for snippet " + std::to_string(k));
            }
            if (summary.is_object())
                for (auto k : kAllKinds) {
                    const std::string key(to_string(k));
                    out.check(summary.at("feature_totals").at(key) == recount[key], id + ": feature_totals." + key);
                }
            auto filtered = json(base + "/snippets");
            out.check(filtered.is_object() && static_cast<int>(filtered.at("snippets").size()) == laughs,
                      id + ": unfiltered snippet list");

            auto before = json(base);
            auto rc = c.Post(base + "/recompute", "{}", "application/json");
            auto after = json(base);
            out.check(rc && rc->status == 200 && after.at("version") == before.at("version").get<int>() + 1,
                      id + ": recompute did not bump the version");
            before["version"] = after["version"];
            out.check(before == after, id + ": recompute with the same config changed the analysis");
        }
        server.stop();
        th.join();
    }

    // Atomicity: a writer killed while writing leaves either the previous
    // document or nothing, never a torn one.
    const auto before = lexicon::read_file(dir.path / "italy.json");
    out.check(killed_ingest(dir.path, "italy"), "re-ingest writer was not killed mid-write");
    testing::TempDir fresh;
    out.check(killed_ingest(fresh.path, "italy"), "first-ingest writer was not killed mid-write");
    SpeechStore reopened(dir.path);
    out.check(reopened.discarded_temporaries() >= 1, "no torn temporary found after the kill");
    out.check(lexicon::read_file(dir.path / "italy.json") == before, "italy.json changed after a killed write");
    out.check(reopened.all().size() == 3, "store lost speeches after a killed write");
    SpeechStore empty(fresh.path);
    out.check(!empty.contains("italy") && empty.all().empty(), "killed first ingest left a document behind");
    out.note = "3 bundles over HTTP, counts consistent, recompute idempotent, killed writes leave no torn document";
}

}  // namespace

int main() {
    const std::vector<std::pair<int, void (*)(Outcome&)>> criteria = {
        {1, segmentation_law},  {2, incongruity_oracle},     {3, cop_fixture},
        {4, italy_fixture},     {5, clustering_oracle},      {6, textrank_oracle},
        {7, audio_detectors},   {8, threshold_monotonicity}, {9, service_round_trip},
    };
    int failed = 0;
    for (const auto& [n, run] : criteria) {
        Outcome out;
        const auto t0 = Clock::now();
        try {
            run(out);
        } catch (const std::exception& e) {
            out.failures.push_back(std::string("threw: ") + e.what());
        }
        const bool pass = out.failures.empty();
        failed += !pass;
        std::printf("criterion %d: %s  %s (%.2f s)\n", n, pass ? "PASS" : "FAIL", out.note.c_str(), seconds_since(t0));
        for (std::size_t i = 0; i < out.failures.size() && i < 5; ++i) std::printf("    - %s\n", out.failures[i].c_str());
        if (out.failures.size() > 5) std::printf("    - ... %zu more\n", out.failures.size() - 5);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
