#include "wikibias/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "wikibias/common.hpp"

namespace wikibias {

const char* pos_name(Pos p) {
    switch (p) {
        case Pos::Adjective: return "adjective";
        case Pos::Noun: return "noun";
        case Pos::Verb: return "verb";
        case Pos::Adverb: return "adverb";
        case Pos::Any: return "any";
    }
    return "any";
}

const char* strength_name(Strength s) {
    return s == Strength::Weak ? "weak" : "strong";
}

const char* polarity_name(Polarity p) {
    switch (p) {
        case Polarity::Positive: return "positive";
        case Polarity::Negative: return "negative";
        case Polarity::Neutral: return "neutral";
    }
    return "neutral";
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Pos parse_pos(const std::string& s) {
    if (s == "adj") return Pos::Adjective;
    if (s == "noun") return Pos::Noun;
    if (s == "verb") return Pos::Verb;
    if (s == "adverb") return Pos::Adverb;
    return Pos::Any;  // "anypos" and anything unrecognized
}

Polarity parse_polarity(const std::string& s) {
    if (s == "positive") return Polarity::Positive;
    if (s == "negative") return Polarity::Negative;
    return Polarity::Neutral;  // "neutral" and "both"
}

}  // namespace

SubjectivityLexicon parse_subjectivity_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open subjectivity lexicon: " + path.string());

    SubjectivityLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;

        std::string type, word, pos, polarity;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = tok.substr(0, eq);
            std::string value = tok.substr(eq + 1);
            if (key == "type") type = value;
            else if (key == "word1") word = value;
            else if (key == "pos1") pos = value;
            else if (key == "priorpolarity") polarity = value;
        }
        if (word.empty() || type.empty()) {
            ++lex.skipped_lines;
            lex.warnings.push_back("skipped lexicon line " + std::to_string(lineno) +
                                   ": missing word1 or type");
            continue;
        }

        LexiconEntry e;
        e.word = to_lower_ascii(word);
        e.pos = parse_pos(pos);
        e.strength = (type == "strongsubj") ? Strength::Strong : Strength::Weak;
        e.polarity = parse_polarity(polarity);
        lex.entries[e.word].push_back(std::move(e));
    }
    return lex;
}

std::optional<Subjectivity> lookup_subjectivity(const SubjectivityLexicon& lex,
                                                const std::string& word, Pos pos) {
    auto it = lex.entries.find(word);
    if (it == lex.entries.end()) return std::nullopt;

    const LexiconEntry* best = nullptr;
    for (int pass = 0; pass < 2 && !best; ++pass) {
        Pos want = (pass == 0) ? pos : Pos::Any;
        if (pass == 1 && pos == Pos::Any) break;
        for (const auto& e : it->second) {
            if (e.pos != want) continue;
            if (!best || (e.strength == Strength::Strong && best->strength == Strength::Weak)) {
                best = &e;  // strong beats weak; else first-parsed wins
            }
        }
    }
    if (!best) return std::nullopt;
    return Subjectivity{best->strength, best->polarity};
}

NeutralizationMap load_neutralization_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open neutralization map: " + path.string());

    NeutralizationMap map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto tab = t.find('\t');
        if (tab == std::string::npos) {
            throw DataError("neutralization line " + std::to_string(lineno) +
                            ": expected gendered<TAB>neutral");
        }
        map.pairs[to_lower_ascii(trim(t.substr(0, tab)))] =
            to_lower_ascii(trim(t.substr(tab + 1)));
    }
    // neutral forms must not be gendered keys, otherwise idempotence breaks
    for (const auto& [k, v] : map.pairs) {
        if (map.pairs.count(v)) {
            throw DataError("neutralization map: neutral form '" + v +
                            "' also appears as a gendered key");
        }
    }
    return map;
}

std::string neutralize(const NeutralizationMap& map, const std::string& token) {
    auto it = map.pairs.find(token);
    return it == map.pairs.end() ? token : it->second;
}

CategoryLexicon load_category_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open category lexicon: " + path.string());

    CategoryLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos) {
            throw DataError("category lexicon line " + std::to_string(lineno) +
                            ": expected 'name: word word ...'");
        }
        std::string name = trim(t.substr(0, colon));
        if (lex.categories.count(name)) {
            throw DataError("duplicate category '" + name + "' at line " +
                            std::to_string(lineno));
        }
        std::set<std::string>& members = lex.categories[name];
        std::istringstream words(t.substr(colon + 1));
        std::string w;
        while (words >> w) members.insert(to_lower_ascii(w));
        if (members.empty()) {
            throw DataError("empty category '" + name + "' at line " +
                            std::to_string(lineno));
        }
    }
    return lex;
}

namespace {

std::unordered_set<std::string> load_word_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open word list: " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (!t.empty() && t[0] != '#') words.insert(to_lower_ascii(t));
    }
    return words;
}

}  // namespace

PosLists load_pos_lists(const std::filesystem::path& adjectives_path,
                        const std::filesystem::path& nouns_path) {
    return {load_word_set(adjectives_path), load_word_set(nouns_path)};
}

}  // namespace wikibias
