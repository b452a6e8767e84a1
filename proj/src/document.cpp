#include "laughtrack/document.hpp"

#include "laughtrack/error.hpp"

namespace laughtrack {

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

Json counts_json(const KindCounts& c) {
    Json j = Json::object();
    for (auto k : kAllKinds) j[std::string(to_string(k))] = c[kind_index(k)];
    return j;
}

KindCounts counts_from(const Json& j) {
    KindCounts c{};
    for (auto k : kAllKinds) c[kind_index(k)] = j.value(std::string(to_string(k)), 0);
    return c;
}

Json token_json(const WordToken& t) {
    return {{"surface", t.surface}, {"norm", t.norm},   {"sent_index", t.sent_index}, {"start_s", t.start_s},
            {"end_s", t.end_s},     {"phones", t.phones}, {"syllables", t.syllables}, {"pos", opt(t.pos)},
            {"lemma", opt(t.lemma)}, {"interpolated", t.interpolated}};
}

WordToken token_from(const Json& j) {
    WordToken t;
    t.surface = j.at("surface").get<std::string>();
    t.norm = j.at("norm").get<std::string>();
    t.sent_index = j.at("sent_index").get<int>();
    t.start_s = j.at("start_s").get<double>();
    t.end_s = j.at("end_s").get<double>();
    t.phones = j.at("phones").get<std::vector<std::string>>();
    t.syllables = j.at("syllables").get<int>();
    t.pos = opt_from<std::string>(j, "pos");
    t.lemma = opt_from<std::string>(j, "lemma");
    t.interpolated = j.value("interpolated", false);
    return t;
}

Sentence sentence_from(const Json& j) {
    Sentence s;
    s.id = {j.at("snippet").get<int>(), j.at("sentence").get<int>()};
    s.line = j.at("line").get<int>();
    s.is_punchline = j.at("is_punchline").get<bool>();
    s.span_s = {j.at("span_s").at(0).get<double>(), j.at("span_s").at(1).get<double>()};
    for (const auto& t : j.at("tokens")) s.tokens.push_back(token_from(t));
    return s;
}

FeatureAnnotation annotation_from(const Json& j) {
    FeatureAnnotation a;
    auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw ValidationError("service", "unknown annotation kind " + j.at("kind").dump());
    a.kind = *kind;
    a.targets = j.at("targets").get<std::vector<int>>();
    a.magnitude = j.at("magnitude").get<double>();
    a.sentence_flag = j.at("sentence_flag").get<bool>();
    return a;
}

Json acoustics_json(const audio::WordAcoustics& w) {
    return {{"spm", w.spm},         {"mean_rms", w.mean_rms},         {"mean_db", w.mean_db},
            {"mean_f0", opt(w.mean_f0)}, {"f0_range", opt(w.f0_range)}};
}

audio::WordAcoustics acoustics_from(const Json& j) {
    audio::WordAcoustics w;
    w.spm = j.at("spm").get<double>();
    w.mean_rms = j.at("mean_rms").get<double>();
    w.mean_db = j.at("mean_db").get<double>();
    w.mean_f0 = opt_from<double>(j, "mean_f0");
    w.f0_range = opt_from<double>(j, "f0_range");
    return w;
}

Json tree_json(const graph::WordTree& t) {
    return {{"head", t.head}, {"deprel", t.deprel}, {"upos", t.upos}, {"lemma", t.lemma}};
}

graph::WordTree tree_from(const Json& j) {
    graph::WordTree t;
    t.head = j.at("head").get<std::vector<int>>();
    t.deprel = j.at("deprel").get<std::vector<std::string>>();
    t.upos = j.at("upos").get<std::vector<std::string>>();
    t.lemma = j.at("lemma").get<std::vector<std::string>>();
    return t;
}

Json span_json(const graph::PhraseSpan& s) {
    return {{"sentence", s.sentence}, {"first", s.first}, {"last", s.last}, {"text", s.text},
            {"substituted_text", s.substituted_text}, {"vector", opt(s.vector)}};
}

graph::PhraseSpan span_from(const Json& j) {
    graph::PhraseSpan s;
    s.sentence = j.at("sentence").get<int>();
    s.first = j.at("first").get<int>();
    s.last = j.at("last").get<int>();
    s.text = j.at("text").get<std::string>();
    s.substituted_text = j.at("substituted_text").get<std::string>();
    s.vector = opt_from<lexicon::Vector>(j, "vector");
    return s;
}

graph::ContextGraph graph_from(const Json& j) {
    graph::ContextGraph g;
    g.snippet = j.at("snippet").get<int>();
    for (const auto& n : j.at("nodes"))
        g.nodes.push_back({n.at("sentence").get<int>(), n.at("length").get<int>(), n.at("punchline").get<bool>()});
    for (const auto& s : j.at("spans")) g.spans.push_back(span_from(s));
    for (const auto& c : j.at("clusters")) {
        graph::ConceptCluster cc;
        cc.id = c.at("id").get<int>();
        cc.color = c.at("color").get<int>();
        for (const auto& m : c.at("members")) cc.members.push_back(span_from(m));
        g.clusters.push_back(std::move(cc));
    }
    for (const auto& l : j.at("links"))
        g.links.push_back({l.at("from").get<int>(), l.at("to").get<int>(), l.at("cluster").get<int>()});
    return g;
}

summary::Keyword keyword_from(const Json& j) {
    return {j.at("text").get<std::string>(), j.at("score").get<double>(), j.at("snippet").get<int>(),
            j.at("frequency").get<int>(), j.at("anchor_time_s").get<double>()};
}

Json chain_json(const graph::CorefChain& c) {
    Json mentions = Json::array();
    for (const auto& m : c.mentions) mentions.push_back({m.sentence, m.first, m.last});
    return {{"id", c.id}, {"representative", c.representative}, {"mentions", mentions}};
}

graph::CorefChain chain_from(const Json& j) {
    graph::CorefChain c;
    c.id = j.at("id").get<int>();
    c.representative = j.at("representative").get<std::string>();
    for (const auto& m : j.at("mentions"))
        c.mentions.push_back({m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>()});
    return c;
}

}  // namespace

Json to_json(const SpeechMeta& m) {
    return {{"id", m.id},         {"title", m.title}, {"speaker", m.speaker},
            {"category", m.category}, {"views", m.views}, {"duration_s", m.duration_s}};
}

Json to_json(const ThresholdConfig& c) {
    return {{"disconnect_max_sim", c.disconnect_max_sim},
            {"repeat_min_sim", c.repeat_min_sim},
            {"speed_N", c.speed_N},
            {"speed_M", c.speed_M},
            {"pause_min_s", c.pause_min_s},
            {"volume_delta_db", c.volume_delta_db},
            {"pitch_M", c.pitch_M},
            {"cluster_eps", c.cluster_eps},
            {"cluster_min_pts", c.cluster_min_pts}};
}

Json to_json(const AnalysisConfig& c) {
    return {{"thresholds", to_json(c.thresholds)},
            {"frames",
             {{"hop_s", c.frames.hop_s},
              {"window_s", c.frames.window_s},
              {"f0_min_hz", c.frames.f0_min_hz},
              {"f0_max_hz", c.frames.f0_max_hz},
              {"clarity_min", c.frames.clarity_min},
              {"silence_rms", c.frames.silence_rms}}},
            {"textrank",
             {{"window", c.textrank.window},
              {"damping", c.textrank.damping},
              {"tolerance", c.textrank.tolerance},
              {"max_iterations", c.textrank.max_iterations},
              {"top_k", c.textrank.top_k}}},
            {"max_subphrase_len", c.max_subphrase_len},
            {"merge_resolution_s", c.merge_resolution_s}};
}

Json to_json(const FeatureAnnotation& a) {
    return {{"kind", to_string(a.kind)},
            {"targets", a.targets},
            {"magnitude", a.magnitude},
            {"sentence_flag", a.sentence_flag}};
}

Json to_json(const Sentence& s) {
    Json toks = Json::array();
    for (const auto& t : s.tokens) toks.push_back(token_json(t));
    return {{"snippet", s.id.snippet}, {"sentence", s.id.sentence},       {"line", s.line},
            {"text", s.text()},       {"is_punchline", s.is_punchline}, {"span_s", {s.span_s.start, s.span_s.end}},
            {"tokens", toks}};
}

Json to_json(const graph::ContextGraph& g) {
    Json nodes = Json::array(), spans = Json::array(), clusters = Json::array(), links = Json::array();
    for (const auto& n : g.nodes) nodes.push_back({{"sentence", n.sentence}, {"length", n.length}, {"punchline", n.punchline}});
    for (const auto& s : g.spans) spans.push_back(span_json(s));
    for (const auto& c : g.clusters) {
        Json members = Json::array();
        for (const auto& m : c.members) members.push_back(span_json(m));
        clusters.push_back({{"id", c.id}, {"color", c.color}, {"label", c.members.front().text}, {"members", members}});
    }
    for (const auto& l : g.links) links.push_back({{"from", l.from}, {"to", l.to}, {"cluster", l.cluster}});
    return {{"snippet", g.snippet}, {"nodes", nodes}, {"spans", spans}, {"clusters", clusters}, {"links", links}};
}

Json to_json(const summary::Keyword& k) {
    return {{"text", k.text},
            {"score", k.score},
            {"snippet", k.snippet},
            {"frequency", k.frequency},
            {"anchor_time_s", k.anchor_time_s}};
}

Json to_json(const summary::TimeMatrixSummary& s) {
    Json rows = Json::array(), keywords = Json::array(), bands = Json::array();
    for (const auto& r : s.punchlines)
        rows.push_back({{"snippet", r.snippet},
                        {"time_s", r.time_s},
                        {"text_feature_count", r.text_count},
                        {"audio_feature_count", r.audio_count},
                        {"counts", counts_json(r.counts)}});
    for (const auto& k : s.keywords) keywords.push_back(to_json(k));
    for (const auto& b : s.merged_bands)
        bands.push_back({{"start_s", b.start_s}, {"end_s", b.end_s}, {"punchlines", b.punchlines}});
    return {{"duration_s", s.duration_s},
            {"punchlines", rows},
            {"feature_totals", counts_json(s.feature_totals)},
            {"keywords", keywords},
            {"merged_bands", bands},
            {"merge_resolution_s", s.merge_resolution_s}};
}

Json to_json(const AnalyzedSnippet& s) {
    Json sentences = Json::array();
    for (std::size_t k = 0; k < s.snippet.sentences.size(); ++k) {
        Json sj = to_json(s.snippet.sentences[k]);
        Json ann = Json::array(), ac = Json::array();
        if (k < s.annotations.size())
            for (const auto& a : s.annotations[k]) ann.push_back(to_json(a));
        if (k < s.acoustics.size())
            for (const auto& w : s.acoustics[k]) ac.push_back(acoustics_json(w));
        sj["annotations"] = ann;
        sj["acoustics"] = ac;
        sj["tree"] = (k < s.trees.size() && s.trees[k]) ? tree_json(*s.trees[k]) : Json(nullptr);
        sentences.push_back(std::move(sj));
    }
    Json keywords = Json::array();
    for (const auto& k : s.keywords) keywords.push_back(to_json(k));
    return {{"index", s.snippet.index},
            {"span_s", {s.snippet.span_s.start, s.snippet.span_s.end}},
            {"context_length", s.snippet.context_length()},
            {"sentences", sentences},
            {"graph", to_json(s.graph)},
            {"keywords", keywords}};
}

Json to_json(const SpeechDocument& doc) {
    Json snippets = Json::array(), tail = Json::array(), chains = Json::array(), rows = Json::object();
    for (const auto& s : doc.snippets) snippets.push_back(to_json(s));
    for (const auto& s : doc.tail) tail.push_back(to_json(s));
    for (const auto& c : doc.chains) chains.push_back(chain_json(c));
    for (const auto& [k, v] : doc.phrase_rows) rows[k] = v;
    return {{"schema_version", doc.schema_version},
            {"version", doc.version},
            {"meta", to_json(doc.meta)},
            {"config", to_json(doc.config)},
            {"snippets", snippets},
            {"tail", tail},
            {"coref",
             {{"supplied", doc.chains_supplied}, {"chains", chains}}},
            {"phrase_rows", rows},
            {"summary", to_json(doc.summary)},
            {"audio_retained", doc.audio_retained}};
}

SpeechMeta meta_from_json(const Json& j) {
    SpeechMeta m;
    m.id = j.at("id").get<std::string>();
    m.title = j.at("title").get<std::string>();
    m.speaker = j.at("speaker").get<std::string>();
    m.category = j.at("category").get<std::string>();
    m.views = j.at("views").get<std::uint64_t>();
    m.duration_s = j.at("duration_s").get<double>();
    return m;
}

ThresholdConfig thresholds_from_json(const Json& j, ThresholdConfig c) {
    if (!j.is_object()) throw ValidationError("service", "config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        auto real = [&](double& field) {
            if (!value.is_number()) throw ValidationError("service", "config: " + key + " must be a number");
            field = value.get<double>();
        };
        if (key == "disconnect_max_sim") real(c.disconnect_max_sim);
        else if (key == "repeat_min_sim") real(c.repeat_min_sim);
        else if (key == "speed_N") real(c.speed_N);
        else if (key == "speed_M") real(c.speed_M);
        else if (key == "pause_min_s") real(c.pause_min_s);
        else if (key == "volume_delta_db") real(c.volume_delta_db);
        else if (key == "pitch_M") real(c.pitch_M);
        else if (key == "cluster_eps") real(c.cluster_eps);
        else if (key == "cluster_min_pts") {
            if (!value.is_number_integer()) throw ValidationError("service", "config: cluster_min_pts must be an integer");
            c.cluster_min_pts = value.get<int>();
        } else {
            throw ValidationError("service", "config: unknown threshold '" + key + "'");
        }
    }
    return c;
}

AnalysisConfig config_from_json(const Json& j) {
    AnalysisConfig c;
    c.thresholds = thresholds_from_json(j.at("thresholds"));
    const auto& f = j.at("frames");
    c.frames = {f.at("hop_s").get<double>(),     f.at("window_s").get<double>(),    f.at("f0_min_hz").get<double>(),
                f.at("f0_max_hz").get<double>(), f.at("clarity_min").get<double>(), f.at("silence_rms").get<double>()};
    const auto& t = j.at("textrank");
    c.textrank = {t.at("window").get<int>(), t.at("damping").get<double>(), t.at("tolerance").get<double>(),
                  t.at("max_iterations").get<int>(), t.at("top_k").get<int>()};
    c.max_subphrase_len = j.at("max_subphrase_len").get<int>();
    c.merge_resolution_s = j.at("merge_resolution_s").get<double>();
    return c;
}

summary::TimeMatrixSummary summary_from_json(const Json& j) {
    summary::TimeMatrixSummary s;
    s.duration_s = j.at("duration_s").get<double>();
    for (const auto& r : j.at("punchlines")) {
        summary::PunchlineRow row;
        row.snippet = r.at("snippet").get<int>();
        row.time_s = r.at("time_s").get<double>();
        row.text_count = r.at("text_feature_count").get<int>();
        row.audio_count = r.at("audio_feature_count").get<int>();
        row.counts = counts_from(r.at("counts"));
        s.punchlines.push_back(row);
    }
    s.feature_totals = counts_from(j.at("feature_totals"));
    for (const auto& k : j.at("keywords")) s.keywords.push_back(keyword_from(k));
    for (const auto& b : j.at("merged_bands"))
        s.merged_bands.push_back({b.at("start_s").get<double>(), b.at("end_s").get<double>(),
                                  b.at("punchlines").get<std::vector<int>>()});
    s.merge_resolution_s = j.at("merge_resolution_s").get<double>();
    return s;
}

SpeechDocument document_from_json(const Json& j) {
    try {
        SpeechDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != kSchemaVersion)
            throw ValidationError("service", "unsupported schema_version " + std::to_string(doc.schema_version));
        doc.version = j.at("version").get<int>();
        doc.meta = meta_from_json(j.at("meta"));
        doc.config = config_from_json(j.at("config"));
        for (const auto& sj : j.at("snippets")) {
            AnalyzedSnippet a;
            a.snippet.index = sj.at("index").get<int>();
            a.snippet.span_s = {sj.at("span_s").at(0).get<double>(), sj.at("span_s").at(1).get<double>()};
            for (const auto& s : sj.at("sentences")) {
                a.snippet.sentences.push_back(sentence_from(s));
                std::vector<FeatureAnnotation> ann;
                for (const auto& x : s.at("annotations")) ann.push_back(annotation_from(x));
                a.annotations.push_back(std::move(ann));
                std::vector<audio::WordAcoustics> ac;
                for (const auto& x : s.at("acoustics")) ac.push_back(acoustics_from(x));
                a.acoustics.push_back(std::move(ac));
                a.trees.push_back(s.at("tree").is_null() ? std::nullopt : std::optional(tree_from(s.at("tree"))));
            }
            a.graph = graph_from(sj.at("graph"));
            for (const auto& k : sj.at("keywords")) a.keywords.push_back(keyword_from(k));
            doc.snippets.push_back(std::move(a));
        }
        for (const auto& s : j.at("tail")) doc.tail.push_back(sentence_from(s));
        doc.chains_supplied = j.at("coref").at("supplied").get<bool>();
        for (const auto& c : j.at("coref").at("chains")) doc.chains.push_back(chain_from(c));
        for (const auto& [k, v] : j.at("phrase_rows").items()) doc.phrase_rows[k] = v.get<lexicon::Vector>();
        doc.summary = summary_from_json(j.at("summary"));
        doc.audio_retained = j.at("audio_retained").get<bool>();
        return doc;
    } catch (const Json::exception& e) {
        throw ValidationError("service", std::string("malformed speech document: ") + e.what());
    }
}

std::string serialize(const SpeechDocument& doc) { return to_json(doc).dump(1); }

SpeechDocument deserialize(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ValidationError("service", std::string("speech document is not JSON: ") + e.what());
    }
    return document_from_json(j);
}

}  // namespace laughtrack
