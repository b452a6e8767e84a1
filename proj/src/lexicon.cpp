#include "laughtrack/lexicon.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "laughtrack/error.hpp"
#include "laughtrack/text_util.hpp"

namespace laughtrack::lexicon {

namespace {

constexpr const char* kStage = "lexicon";

// ARPAbet inventory of the CMU dictionary, stress digits stripped.
constexpr std::array<std::string_view, 39> kPhones = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
    "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
    "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};

constexpr std::array<std::string_view, 170> kStopwords = {
    "a",       "about",   "above",  "after",   "again",  "against", "all",     "am",
    "an",      "and",     "any",    "are",     "as",     "at",      "be",      "because",
    "been",    "before",  "being",  "below",   "between", "both",   "but",     "by",
    "can",     "could",   "did",    "do",      "does",   "doing",   "down",    "during",
    "each",    "few",     "for",    "from",    "further", "had",    "has",     "have",
    "having",  "he",      "her",    "here",    "hers",   "herself", "him",     "himself",
    "his",     "how",     "i",      "if",      "in",     "into",    "is",      "it",
    "its",     "itself",  "just",   "me",      "more",   "most",    "my",      "myself",
    "no",      "nor",     "not",    "now",     "of",     "off",     "on",      "once",
    "only",    "or",      "other",  "our",     "ours",   "ourselves", "out",   "over",
    "own",     "same",    "she",    "should",  "so",     "some",    "such",    "than",
    "that",    "the",     "their",  "theirs",  "them",   "themselves", "then", "there",
    "these",   "they",    "this",   "those",   "through", "to",     "too",     "under",
    "until",   "up",      "very",   "was",     "we",     "were",    "what",    "when",
    "where",   "which",   "while",  "who",     "whom",   "why",     "will",    "with",
    "would",   "you",     "your",   "yours",   "yourself", "i'm",   "i'll",    "it's",
    "don't",   "that's",  "you're", "we're",   "they're", "can't",  "'m",      "'s",
    "cause",   "gonna",   "i've",   "we've",   "you've", "they've", "he's",    "she's",
    "i'd",     "you'd",   "he'd",   "she'd",   "we'd",   "they'd",  "isn't",   "aren't",
    "wasn't",  "weren't", "didn't", "doesn't", "won't",  "wouldn't", "couldn't", "shouldn't",
    "there's", "what's",  "let's",  "you'll",  "we'll",  "they'll", "he'll",   "she'll",
};

bool is_known_phone(std::string_view phone) {
    while (!phone.empty() && phone.back() >= '0' && phone.back() <= '9') phone.remove_suffix(1);
    return std::find(kPhones.begin(), kPhones.end(), phone) != kPhones.end();
}

std::optional<std::string> clue_pos_for(const std::optional<std::string>& upos) {
    if (!upos) return std::nullopt;
    if (*upos == "ADJ") return "adj";
    if (*upos == "NOUN" || *upos == "PROPN") return "noun";
    if (*upos == "VERB" || *upos == "AUX") return "verb";
    if (*upos == "ADV") return "adverb";
    return std::string("other");
}

}  // namespace

// ---------------------------------------------------------------------------

PronunciationLexicon PronunciationLexicon::parse(std::string_view bytes) {
    PronunciationLexicon lex;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (line.starts_with(";;;")) continue;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto fields = text::split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() < 2) throw ValidationError(kStage, "pronunciation entry without phones", i + 1);
        std::string word = text::to_lower(fields[0]);
        if (auto paren = word.find('('); paren != std::string::npos && word.back() == ')')
            word.erase(paren);  // WORD(1) variant
        std::vector<std::string> phones;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            if (!is_known_phone(fields[f]))
                throw ValidationError(kStage, "unknown phone '" + std::string(fields[f]) + "'", i + 1);
            phones.emplace_back(fields[f]);
        }
        lex.entries_.try_emplace(std::move(word), std::move(phones));
    }
    return lex;
}

const std::vector<std::string>* PronunciationLexicon::find(std::string_view word) const {
    auto it = entries_.find(text::to_lower(word));
    return it == entries_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------

SentimentLexicon SentimentLexicon::parse(std::string_view bytes) {
    SentimentLexicon lex;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = text::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        std::unordered_map<std::string, std::string> kv;
        for (auto field : text::split_ws(line)) {
            auto eq = field.find('=');
            if (eq == std::string_view::npos)
                throw ValidationError(kStage, "sentiment field without '=': " + std::string(field), i + 1);
            kv[std::string(field.substr(0, eq))] = std::string(field.substr(eq + 1));
        }
        for (const char* key : {"type", "word1", "priorpolarity"})
            if (!kv.count(key))
                throw ValidationError(kStage, std::string("sentiment clue missing '") + key + "'", i + 1);

        SentimentClue clue;
        clue.word = text::to_lower(kv["word1"]);
        const auto& type = kv["type"];
        if (type == "strongsubj") {
            clue.strength = Strength::strong;
            clue.subjective = true;
        } else if (type == "weaksubj") {
            clue.strength = Strength::weak;
            clue.subjective = false;
        } else {
            throw ValidationError(kStage, "unknown clue type '" + type + "'", i + 1);
        }
        const auto& pol = kv["priorpolarity"];
        if (pol == "positive") clue.polarity = Polarity::positive;
        else if (pol == "negative") clue.polarity = Polarity::negative;
        else if (pol == "neutral") clue.polarity = Polarity::neutral;
        else if (pol == "both") clue.polarity = Polarity::both;
        else throw ValidationError(kStage, "unknown priorpolarity '" + pol + "'", i + 1);
        if (auto it = kv.find("pos1"); it != kv.end() && it->second != "anypos") clue.pos = it->second;

        lex.by_word_[clue.word].push_back(lex.clues_.size());
        lex.clues_.push_back(std::move(clue));
    }
    return lex;
}

const SentimentClue* SentimentLexicon::find(std::string_view word,
                                            const std::optional<std::string>& upos) const {
    auto it = by_word_.find(text::to_lower(word));
    if (it == by_word_.end()) return nullptr;
    auto wanted = clue_pos_for(upos);
    for (auto idx : it->second) {
        const auto& clue = clues_[idx];
        if (!wanted || !clue.pos || *clue.pos == *wanted) return &clue;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------

VectorTable VectorTable::parse(std::string_view bytes) {
    VectorTable table;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto fields = text::split_ws(lines[i]);
        if (fields.empty()) continue;
        long long a = 0, b = 0;
        if (i == 0 && fields.size() == 2 && text::parse_int(fields[0], a) && text::parse_int(fields[1], b))
            continue;
        if (fields.size() < 2) throw ValidationError(kStage, "vector row without values", i + 1);
        std::vector<float> values;
        values.reserve(fields.size() - 1);
        double norm = 0.0;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            double v = 0.0;
            if (!text::parse_double(fields[f], v))
                throw ValidationError(kStage, "non-numeric vector component", i + 1);
            values.push_back(static_cast<float>(v));
            norm += v * v;
        }
        if (table.dim_ == 0) table.dim_ = values.size();
        if (values.size() != table.dim_)
            throw ValidationError(kStage,
                                  "vector for '" + std::string(fields[0]) + "' has dimension " +
                                      std::to_string(values.size()) + ", expected " + std::to_string(table.dim_),
                                  i + 1);
        if (norm == 0.0) throw ValidationError(kStage, "zero-norm vector", i + 1);
        table.add(text::to_lower(fields[0]), values);
    }
    return table;
}

void VectorTable::add(std::string word, std::span<const float> values) {
    if (dim_ == 0) dim_ = values.size();
    if (values.size() != dim_) throw std::invalid_argument("VectorTable::add: dimension mismatch");
    if (index_.count(word)) return;
    index_.emplace(std::move(word), data_.size() / dim_);
    data_.insert(data_.end(), values.begin(), values.end());
}

std::optional<std::span<const float>> VectorTable::find(std::string_view word) const {
    if (dim_ == 0) return std::nullopt;
    auto lower = text::to_lower(word);
    auto it = index_.find(lower);
    if (it == index_.end()) {
        for (std::string_view suffix : {"'s", "’s", "'"}) {
            if (lower.size() > suffix.size() + 1 && std::string_view(lower).ends_with(suffix)) {
                it = index_.find(lower.substr(0, lower.size() - suffix.size()));
                if (it != index_.end()) break;
            }
        }
    }
    if (it == index_.end()) return std::nullopt;
    return std::span<const float>(data_.data() + it->second * dim_, dim_);
}

// ---------------------------------------------------------------------------

PhraseEmbeddings PhraseEmbeddings::parse(std::string_view bytes) {
    PhraseEmbeddings table;
    auto lines = text::lines_of(bytes);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = text::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        auto fields = text::split(line, ',');
        if (fields.size() < 2) throw ValidationError(kStage, "phrase embedding row without values", i + 1);
        Vector v;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            double x = 0.0;
            if (!text::parse_double(fields[f], x)) {
                if (i == 0 && table.rows_.empty()) goto next_line;  // header
                throw ValidationError(kStage, "non-numeric phrase embedding component", i + 1);
            }
            v.push_back(x);
        }
        if (table.dim_ != 0 && v.size() != table.dim_)
            throw ValidationError(kStage, "phrase embedding dimension mismatch", i + 1);
        table.add(text::to_lower(text::trim(fields[0])), std::move(v));
    next_line:;
    }
    return table;
}

const Vector* PhraseEmbeddings::find_key(const std::string& key) const {
    auto it = rows_.find(key);
    return it == rows_.end() ? nullptr : &it->second;
}

void PhraseEmbeddings::add(std::string key, Vector v) {
    if (dim_ == 0) dim_ = v.size();
    rows_.emplace(std::move(key), std::move(v));
}

std::string phrase_key(const std::vector<std::string>& norms) {
    return text::hex64(text::fnv1a64(text::join(norms, " ")));
}

// ---------------------------------------------------------------------------

bool is_stopword(std::string_view norm) {
    static const std::unordered_set<std::string_view> set(kStopwords.begin(), kStopwords.end());
    return set.count(norm) > 0;
}

bool is_content_pos(std::string_view upos) {
    return upos == "NOUN" || upos == "PROPN" || upos == "VERB" || upos == "ADJ" || upos == "ADV";
}

bool is_content(std::string_view norm, const std::optional<std::string>& pos) {
    if (norm.empty()) return false;
    if (pos) return is_content_pos(*pos);
    return !is_stopword(norm);
}

bool is_content(const WordToken& token) { return is_content(token.norm, token.pos); }

int heuristic_syllables(std::string_view word) {
    auto is_vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    std::string letters;
    for (char c : word)
        if (std::isalpha(static_cast<unsigned char>(c)))
            letters.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    int groups = 0;
    bool in_group = false;
    for (char c : letters) {
        bool v = is_vowel(c);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    const auto n = letters.size();
    if (n > 3 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) &&
        !(letters[n - 2] == 'l' && !is_vowel(letters[n - 3])))  // "-ble", "-tle" keep their e
        --groups;
    return std::max(groups, 1);
}

// ---------------------------------------------------------------------------

LoadReport LexiconSet::report() const {
    return {pronunciations.size(), sentiment.size(), vectors.size(), vectors.dimension()};
}

std::optional<std::vector<std::string>> LexiconSet::phones_of(std::string_view word) const {
    if (word.empty()) return std::nullopt;
    const auto* phones = pronunciations.find(word);
    if (!phones) return std::nullopt;
    return *phones;
}

int LexiconSet::syllable_count(std::string_view word) const {
    if (const auto* phones = pronunciations.find(word)) {
        int stressed = 0;
        for (const auto& p : *phones)
            if (!p.empty() && p.back() >= '0' && p.back() <= '9') ++stressed;
        if (stressed > 0) return stressed;
    }
    return heuristic_syllables(word);
}

std::optional<Vector> LexiconSet::phrase_vector(std::span<const PhraseToken> tokens) const {
    Vector sum(vectors.dimension(), 0.0);
    std::size_t used = 0;
    for (const auto& tok : tokens) {
        if (!is_content(tok.norm, tok.pos)) continue;
        auto v = vectors.find(tok.norm);
        if (!v) continue;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
        ++used;
    }
    if (used == 0) return std::nullopt;
    for (auto& x : sum) x /= static_cast<double>(used);
    return sum;
}

std::optional<Vector> LexiconSet::phrase_vector(std::span<const WordToken> tokens) const {
    std::vector<PhraseToken> pts;
    pts.reserve(tokens.size());
    for (const auto& t : tokens) pts.push_back({t.norm, t.pos});
    return phrase_vector(std::span<const PhraseToken>(pts));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(kStage, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LexiconSet load_resources(const std::filesystem::path& pronunciations,
                          const std::filesystem::path& sentiment,
                          const std::filesystem::path& vectors) {
    LexiconSet set;
    set.pronunciations = PronunciationLexicon::parse(read_file(pronunciations));
    set.sentiment = SentimentLexicon::parse(read_file(sentiment));
    set.vectors = VectorTable::parse(read_file(vectors));
    return set;
}

LexiconSet load_bundled(const std::filesystem::path& data_dir) {
    auto dir = data_dir / "lexicon";
    return load_resources(dir / "cmudict-subset.dict", dir / "subjclues.tff", dir / "vectors.txt");
}

}  // namespace laughtrack::lexicon
