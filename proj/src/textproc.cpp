#include "wikibias/textproc.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "wikibias/common.hpp"

namespace wikibias {

Stoplist load_stoplist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword list: " + path.string());
    Stoplist s;
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r\n");
        std::string w = to_lower_ascii(line.substr(b, e - b + 1));
        if (w[0] != '#') s.words.insert(w);
    }
    return s;
}

const char* vocab_mode_name(VocabMode m) {
    return m == VocabMode::AdjOnly ? "adj" : "adjnoun";
}

VocabMode parse_vocab_mode(const std::string& s) {
    if (s == "adj") return VocabMode::AdjOnly;
    if (s == "adjnoun") return VocabMode::AdjNoun;
    throw ConfigError("unknown mode '" + s + "' (expected adj or adjnoun)");
}

namespace {

bool is_ascii_alpha(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// non-ASCII bytes are treated as word characters so UTF-8 names survive
bool is_token_char(unsigned char c) {
    return is_ascii_alpha(c) || is_ascii_digit(c) || c == '\'' || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    bool cur_has_alpha = false;

    auto flush = [&] {
        // trim apostrophes at either end; internal ones stay
        std::size_t b = 0, e = cur.size();
        while (b < e && cur[b] == '\'') ++b;
        while (e > b && cur[e - 1] == '\'') --e;
        if (e > b && cur_has_alpha) tokens.emplace_back(cur.substr(b, e - b));
        cur.clear();
        cur_has_alpha = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_token_char(c)) {
            cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                               : static_cast<char>(c));
            if (is_ascii_alpha(c) || c >= 0x80) cur_has_alpha = true;
        } else if (c == '*' && !cur.empty()) {
            // trailing '*' from neutralized forms like act* ends the token
            cur.push_back('*');
            flush();
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> preprocess(const std::vector<std::string>& tokens,
                                    const Stoplist& stoplist,
                                    const NeutralizationMap& neutral) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        std::string w = neutralize(neutral, t);
        if (!stoplist.words.count(w)) out.push_back(std::move(w));
    }
    return out;
}

std::vector<std::string> pos_filter(const std::vector<std::string>& tokens,
                                    VocabMode mode, const PosLists& pos_lists) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        bool keep = pos_lists.adjectives.count(t) ||
                    (mode == VocabMode::AdjNoun && pos_lists.nouns.count(t));
        if (keep) out.push_back(t);
    }
    return out;
}

namespace {

std::vector<std::string> top_k_words(
    const std::map<std::string, std::size_t>& counts, std::size_t k) {
    std::vector<std::pair<std::string, std::size_t>> v(counts.begin(), counts.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (v.size() > k) v.resize(k);
    std::vector<std::string> words;
    words.reserve(v.size());
    for (auto& [w, c] : v) words.push_back(std::move(w));
    return words;
}

}  // namespace

Vocabulary build_vocabulary(const Corpus& corpus, VocabMode mode, std::size_t k,
                            const PreprocessSettings& settings) {
    std::map<std::string, std::size_t> female_counts, male_counts;
    for (const auto& r : corpus.records) {
        auto& counts = (r.gender == Gender::Female) ? female_counts : male_counts;
        auto stream = pos_filter(
            preprocess(tokenize(r.overview), settings.stoplist, settings.neutralization),
            mode, settings.pos_lists);
        for (const auto& t : stream) ++counts[t];
    }
    if (female_counts.empty() || male_counts.empty()) {
        throw DataError("build_vocabulary: a gender has no tokens after filtering");
    }

    Vocabulary vocab;
    vocab.mode = mode;
    vocab.k = k;
    for (const auto& list : {top_k_words(female_counts, k), top_k_words(male_counts, k)}) {
        for (const auto& w : list) {
            if (!vocab.index.count(w)) {
                vocab.index[w] = vocab.words.size();
                vocab.words.push_back(w);
            }
        }
    }
    return vocab;
}

FeatureVector encode(std::string_view text, const Vocabulary& vocabulary,
                     const PreprocessSettings& settings) {
    FeatureVector bits(vocabulary.size(), 0);
    for (const auto& t :
         preprocess(tokenize(text), settings.stoplist, settings.neutralization)) {
        auto it = vocabulary.index.find(t);
        if (it != vocabulary.index.end()) bits[it->second] = 1;
    }
    return bits;
}

std::uint64_t vocabulary_fingerprint(const Vocabulary& vocabulary) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    };
    for (const auto& w : vocabulary.words) {
        for (char c : w) mix(c);
        mix('\n');
    }
    return h;
}

void save_vocabulary(const std::filesystem::path& path, const Vocabulary& v) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write vocabulary: " + path.string());
    out << "# mode=" << vocab_mode_name(v.mode) << " k=" << v.k << "\n";
    for (const auto& w : v.words) out << w << "\n";
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read vocabulary: " + path.string());
    std::string header;
    if (!std::getline(in, header) || header.rfind("# mode=", 0) != 0) {
        throw DataError("vocabulary file missing '# mode=... k=...' header");
    }
    std::istringstream hs(header.substr(2));
    std::string mode_kv, k_kv;
    hs >> mode_kv >> k_kv;
    Vocabulary v;
    v.mode = parse_vocab_mode(mode_kv.substr(mode_kv.find('=') + 1));
    v.k = std::stoul(k_kv.substr(k_kv.find('=') + 1));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (v.index.count(line)) throw DataError("duplicate vocabulary word: " + line);
        v.index[line] = v.words.size();
        v.words.push_back(line);
    }
    return v;
}

}  // namespace wikibias
