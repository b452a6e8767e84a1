#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "laughtrack/summary.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace laughtrack;
using namespace laughtrack::summary;
using testing::make_sentence;

namespace {

std::vector<Snippet> plain_snippets(const SpeechDocument& doc) {
    std::vector<Snippet> out;
    for (const auto& a : doc.snippets) out.push_back(a.snippet);
    return out;
}

// Counts keyword matches by scanning every token of the speech directly.
int recount(const SpeechDocument& doc, const std::string& keyword) {
    auto words = text::split_ws(keyword);
    auto matches = [](const WordToken& t, std::string_view w) {
        auto lw = text::to_lower(w);
        return t.norm == lw || (t.lemma && text::to_lower(*t.lemma) == lw);
    };
    auto scan = [&](const Sentence& s) {
        int n = 0;
        for (std::size_t i = 0; i + words.size() <= s.tokens.size(); ++i) {
            bool ok = true;
            for (std::size_t k = 0; k < words.size(); ++k) ok = ok && matches(s.tokens[i + k], words[k]);
            n += ok;
        }
        return n;
    };
    int n = 0;
    for (const auto& a : doc.snippets)
        for (const auto& s : a.snippet.sentences) n += scan(s);
    for (const auto& s : doc.tail) n += scan(s);
    return n;
}

Snippet snippet_of(const std::vector<std::string>& sentences) {
    Snippet snip;
    double t = 0.0;
    for (const auto& text : sentences) {
        snip.sentences.push_back(make_sentence(text, t));
        t = snip.sentences.back().span_s.end + 0.2;
    }
    snip.sentences.back().is_punchline = true;
    return snip;
}

PunchlineRow row_at(double t) {
    PunchlineRow r;
    r.time_s = t;
    return r;
}

}  // namespace

TEST_CASE("TextRank matches dense power iteration on every fixture snippet") {
    const TextRankParams p;
    int nodes = 0;
    for (auto name : testing::kFixtures) {
        const auto& doc = testing::fixture_doc(name);
        for (const auto& a : doc.snippets) {
            auto g = cooccurrence_graph(a.snippet, p.window);
            auto got = textrank(g, p);
            auto want = oracle::dense_textrank(a.snippet, p.window, p.damping, p.tolerance, p.max_iterations);
            REQUIRE(g.nodes.size() == want.terms.size());
            std::map<std::string, double> ref;
            for (std::size_t i = 0; i < want.terms.size(); ++i) ref[want.terms[i]] = want.scores[i];
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                REQUIRE(ref.count(g.nodes[i]));
                CHECK(std::abs(got.scores[i] - ref[g.nodes[i]]) <= 1e-6);
                CHECK(got.scores[i] >= 0.0);
                ++nodes;
            }
            CHECK(got.final_delta < p.tolerance);
            CHECK(got.iterations < p.max_iterations);
        }
    }
    CHECK(nodes > 100);
}

TEST_CASE("TextRank deltas shrink after burn-in") {
    const int burn_in = 5;
    for (auto name : testing::kFixtures) {
        const auto& doc = testing::fixture_doc(name);
        for (const auto& a : doc.snippets) {
            auto g = cooccurrence_graph(a.snippet, 4);
            TextRankParams p;
            p.tolerance = 0.0;
            double prev = 0.0;
            for (int k = 1; k <= 40; ++k) {
                p.max_iterations = k;
                auto r = textrank(g, p);
                CHECK(r.iterations == k);
                if (k > burn_in) CHECK(r.final_delta <= prev * (1.0 + 1e-9) + 1e-15);
                prev = r.final_delta;
            }
        }
    }
}

TEST_CASE("co-occurrence graph") {
    auto snip = snippet_of({"cats chase mice", "mice fear cats"});
    auto g = cooccurrence_graph(snip, 2);
    REQUIRE(g.nodes == std::vector<std::string>{"cats", "chase", "mice", "fear"});
    // Sequence cats chase mice mice fear cats: adjacent pairs only.
    auto weight = [&](int a, int b) {
        for (auto [n, w] : g.adjacency[a])
            if (n == b) return w;
        return 0.0;
    };
    CHECK(weight(0, 1) == 1.0);
    CHECK(weight(1, 2) == 1.0);
    CHECK(weight(2, 3) == 1.0);
    CHECK(weight(3, 0) == 1.0);
    CHECK(weight(0, 2) == 0.0);
    CHECK(weight(2, 2) == 0.0);  // mice mice is not a self-loop
}

TEST_CASE("single repeated word") {
    auto snip = snippet_of({"cop cop", "cop"});
    auto kw = extract_keywords(snip, {});
    REQUIRE(kw.size() == 1);
    CHECK(kw[0].text == "cop");
    CHECK(kw[0].score == 1.0);
    CHECK(extract_keywords(snippet_of({"the and of"}), {}).empty());
}

TEST_CASE("cop ranks in the top three keywords of the cop snippet") {
    const auto& kw = testing::fixture_doc("cop-demo").snippets.at(0).keywords;
    REQUIRE(kw.size() >= 3);
    bool top3 = false;
    for (int i = 0; i < 3; ++i) top3 = top3 || kw[i].text == "cop";
    CHECK(top3);
    for (std::size_t i = 1; i < kw.size(); ++i) CHECK(kw[i - 1].score >= kw[i].score);
    for (const auto& k : kw) {
        CHECK(k.score > 0.0);
        CHECK(k.score <= 1.0);
        CHECK(text::split_ws(k.text).size() <= 2);
    }
}

TEST_CASE("keyword occurrences") {
    const auto& doc = testing::fixture_doc("cop-demo");
    auto occ = keyword_occurrences(plain_snippets(doc), doc.tail, "cop");
    std::set<int> snippets;
    for (const auto& o : occ) snippets.insert(o.snippet);
    CHECK(snippets.size() >= 2);
    CHECK(static_cast<int>(occ.size()) == recount(doc, "cop"));
    for (std::size_t i = 1; i < occ.size(); ++i) CHECK(occ[i - 1].time_s <= occ[i].time_s);
    for (const auto& o : occ) {
        REQUIRE(o.snippet >= 0);
        const auto& t = doc.snippets[o.snippet].snippet.sentences[o.sentence].tokens[o.token];
        CHECK(t.norm == "cop");
        CHECK(o.time_s == t.start_s);
    }
    CHECK(keyword_occurrences(plain_snippets(doc), doc.tail, "COP").size() == occ.size());
    CHECK(keyword_occurrences(plain_snippets(doc), doc.tail, "zebra").empty());
    CHECK(keyword_occurrences(plain_snippets(doc), doc.tail, "").empty());
}

TEST_CASE("tail sentences are searched too") {
    const auto& doc = testing::fixture_doc("ted-spam");
    REQUIRE_FALSE(doc.tail.empty());
    auto occ = keyword_occurrences(plain_snippets(doc), doc.tail, "thank");
    REQUIRE(occ.size() == 1);
    CHECK(occ[0].snippet == -1);
}

TEST_CASE("keyword frequency equals a recount over the speech") {
    for (auto name : testing::kFixtures) {
        const auto& doc = testing::fixture_doc(name);
        for (const auto& k : doc.summary.keywords) {
            INFO(name << ": " << k.text);
            CHECK(k.frequency == recount(doc, k.text));
            CHECK(k.frequency >= 1);
            auto occ = keyword_occurrences(plain_snippets(doc), doc.tail, k.text);
            REQUIRE_FALSE(occ.empty());
            // The anchor is an occurrence inside the keyword's own snippet.
            bool anchored = false;
            for (const auto& o : occ) anchored = anchored || (o.snippet == k.snippet && o.time_s == k.anchor_time_s);
            CHECK(anchored);
        }
    }
}

TEST_CASE("punchline tallies") {
    std::vector<FeatureAnnotation> ann{{FeatureKind::polarity, {1}, -1.0, true},
                                       {FeatureKind::subjectivity, {1}, 1.0, true},
                                       {FeatureKind::pause, {0}, 0.7, false},
                                       {FeatureKind::louder, {3}, 5.0, false},
                                       {FeatureKind::louder, {4}, 4.0, false}};
    auto r = tally(2, 12.5, ann);
    CHECK(r.snippet == 2);
    CHECK(r.time_s == 12.5);
    CHECK(r.text_count == 2);
    CHECK(r.audio_count == 3);
    CHECK(r.counts[kind_index(FeatureKind::louder)] == 2);
    CHECK(r.counts[kind_index(FeatureKind::stress)] == 0);
}

TEST_CASE("merged bands") {
    auto two = merge_bands({row_at(10.0), row_at(10.8)}, 2.0);
    REQUIRE(two.size() == 1);
    CHECK(two[0].punchlines == std::vector<int>{0, 1});
    CHECK(two[0].start_s == 10.0);
    CHECK(two[0].end_s == 10.8);
    CHECK(merge_bands({row_at(10.0), row_at(10.8)}, 0.5).size() == 2);
    CHECK(merge_bands({row_at(10.0), row_at(10.8)}, 0.0).size() == 2);
    CHECK(merge_bands({}, 2.0).empty());
}

TEST_CASE("band count falls as the resolution grows and bands partition the rows") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> t(0.0, 120.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> times(1 + rng() % 20);
        for (auto& x : times) x = t(rng);
        std::sort(times.begin(), times.end());
        std::vector<PunchlineRow> rows;
        for (double x : times) rows.push_back(row_at(x));
        std::size_t last = rows.size() + 1;
        for (double res : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 200.0}) {
            auto bands = merge_bands(rows, res);
            CHECK(bands.size() <= last);
            last = bands.size();
            std::vector<int> seen;
            for (const auto& b : bands) {
                CHECK(b.start_s <= b.end_s);
                for (int i : b.punchlines) seen.push_back(i);
            }
            std::vector<int> all(rows.size());
            std::iota(all.begin(), all.end(), 0);
            CHECK(seen == all);
            for (std::size_t b = 1; b < bands.size(); ++b) {
                CHECK(bands[b - 1].end_s < bands[b].start_s);
                CHECK(bands[b].start_s - bands[b - 1].end_s >= res);
            }
        }
        CHECK(merge_bands(rows, 1000.0).size() == 1);
    }
}

TEST_CASE("time matrix totals equal a recount of punchline annotations") {
    for (auto name : testing::kFixtures) {
        const auto& doc = testing::fixture_doc(name);
        const auto& s = doc.summary;
        CHECK(s.punchlines.size() == doc.snippets.size());
        CHECK(static_cast<int>(s.punchlines.size()) == doc.laughter_count());
        KindCounts totals{};
        for (std::size_t i = 0; i < doc.snippets.size(); ++i) {
            const auto& row = s.punchlines[i];
            const auto& punch = doc.snippets[i].annotations.back();
            KindCounts mine{};
            for (const auto& a : punch) ++mine[kind_index(a.kind)];
            CHECK(row.counts == mine);
            int text = 0, audio = 0;
            for (auto k : kAllKinds) (is_text_kind(k) ? text : audio) += mine[kind_index(k)];
            CHECK(row.text_count == text);
            CHECK(row.audio_count == audio);
            CHECK(row.time_s == doc.snippets[i].snippet.punchline().span_s.end);
            for (std::size_t k = 0; k < kFeatureKindCount; ++k) totals[k] += mine[k];
            if (i) CHECK(s.punchlines[i - 1].time_s <= row.time_s);
        }
        CHECK(s.feature_totals == totals);
        CHECK(s.duration_s == doc.meta.duration_s);
    }
}

TEST_CASE("TED punchlines cluster at the start and end") {
    const auto& s = testing::fixture_doc("ted-spam").summary;
    REQUIRE(s.punchlines.size() == 4);
    int early = 0, late = 0, middle = 0;
    for (const auto& r : s.punchlines) {
        const double f = r.time_s / s.duration_s;
        if (f < 0.3) ++early;
        else if (f > 0.7) ++late;
        else ++middle;
    }
    CHECK(early >= 2);
    CHECK(late >= 1);
    CHECK(middle == 0);
}
