#include "wikibias/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "wikibias/common.hpp"

namespace wikibias {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<Gender> parse_gender(const std::string& raw) {
    if (raw == "female") return Gender::Female;
    if (raw == "male") return Gender::Male;
    return std::nullopt;
}

struct RawRecord {
    std::string id, gender, occupation, overview;
};

RawRecord parse_jsonl_line(const std::string& line, std::size_t lineno) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw DataError("malformed JSONL record at line " + std::to_string(lineno));
    }
    for (const char* key : {"id", "gender", "occupation", "overview"}) {
        if (!j.contains(key) || !j[key].is_string()) {
            throw DataError("record at line " + std::to_string(lineno) +
                            " missing string field '" + key + "'");
        }
    }
    return {j["id"].get<std::string>(), j["gender"].get<std::string>(),
            j["occupation"].get<std::string>(), j["overview"].get<std::string>()};
}

RawRecord parse_tsv_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> cols;
    std::string cur;
    for (char c : line) {
        if (c == '\t') {
            cols.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cols.push_back(cur);
    if (cols.size() != 4) {
        throw DataError("malformed TSV record at line " + std::to_string(lineno) +
                        ": expected 4 columns, got " + std::to_string(cols.size()));
    }
    return {cols[0], cols[1], cols[2], cols[3]};
}

}  // namespace

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path.string());

    LoadResult out;
    out.corpus.provenance = path.string();
    std::unordered_set<std::string> seen_ids;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        ++out.stats.input_records;

        RawRecord raw = (format == CorpusFormat::Jsonl)
                            ? parse_jsonl_line(line, lineno)
                            : parse_tsv_line(line, lineno);
        if (raw.id.empty() || trim(raw.occupation).empty()) {
            throw DataError("record at line " + std::to_string(lineno) +
                            " has empty id or occupation");
        }

        auto gender = parse_gender(to_lower_ascii(raw.gender));
        if (!gender) {
            ++out.stats.dropped_gender;
            continue;
        }
        std::string overview = trim(raw.overview);
        if (overview.empty()) {
            ++out.stats.dropped_empty_overview;
            continue;
        }
        if (!seen_ids.insert(raw.id).second) {
            ++out.stats.dropped_duplicate_id;
            out.stats.warnings.push_back("duplicate id '" + raw.id + "' at line " +
                                         std::to_string(lineno) + " dropped");
            continue;
        }

        Biography bio;
        bio.id = raw.id;
        bio.gender = *gender;
        bio.occupation = to_lower_ascii(trim(raw.occupation));
        bio.overview = std::move(overview);
        out.corpus.records.push_back(std::move(bio));
        ++out.stats.kept;
    }
    return out;
}

FieldMap load_field_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open field map: " + path.string());

    FieldMap map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto tab = t.find('\t');
        if (tab == std::string::npos) {
            throw DataError("field map line " + std::to_string(lineno) +
                            ": expected occupation<TAB>field");
        }
        std::string occ = to_lower_ascii(trim(t.substr(0, tab)));
        std::string field = trim(t.substr(tab + 1));
        if (occ.empty() || field.empty()) {
            throw DataError("field map line " + std::to_string(lineno) +
                            ": empty occupation or field");
        }
        map.entries[occ] = field;
        map.fields.insert(field);
    }
    return map;
}

std::vector<std::pair<std::string, std::size_t>> top_occupations(
    const Corpus& corpus, std::size_t k) {
    if (corpus.records.empty()) throw DataError("top_occupations: empty corpus");

    std::map<std::string, std::size_t> counts;
    for (const auto& r : corpus.records) ++counts[r.occupation];

    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

Corpus filter_to_occupations(const Corpus& corpus,
                             const std::set<std::string>& occupations) {
    Corpus out;
    out.provenance = corpus.provenance;
    for (const auto& r : corpus.records) {
        if (occupations.count(r.occupation)) out.records.push_back(r);
    }
    return out;
}

Corpus assign_fields(const Corpus& corpus, const FieldMap& map) {
    Corpus out = corpus;
    for (auto& r : out.records) {
        auto it = map.entries.find(r.occupation);
        r.field = (it != map.entries.end()) ? it->second : "other";
    }
    return out;
}

Corpus filter_to_field(const Corpus& corpus, const std::string& field) {
    Corpus out;
    out.provenance = corpus.provenance;
    for (const auto& r : corpus.records) {
        if (r.field == field) out.records.push_back(r);
    }
    return out;
}

Corpus balance_by_occupation(const Corpus& corpus, std::uint64_t seed) {
    // indices per (occupation, gender); std::map keeps occupation iteration
    // order stable so RNG consumption is reproducible
    std::map<std::string, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
        groups;
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        auto& g = groups[corpus.records[i].occupation];
        (corpus.records[i].gender == Gender::Female ? g.first : g.second).push_back(i);
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> selected;
    for (auto& [occ, fm] : groups) {
        auto& [females, males] = fm;
        std::size_t m = std::min(females.size(), males.size());
        if (m == 0) continue;
        for (auto* side : {&females, &males}) {
            if (side->size() == m) {
                selected.insert(selected.end(), side->begin(), side->end());
            } else {
                deterministic_shuffle(*side, rng);
                selected.insert(selected.end(), side->begin(), side->begin() + m);
            }
        }
    }
    std::sort(selected.begin(), selected.end());

    Corpus out;
    out.provenance = corpus.provenance;
    out.records.reserve(selected.size());
    for (std::size_t i : selected) out.records.push_back(corpus.records[i]);
    return out;
}

}  // namespace wikibias
