#include "wikibias/synth.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "wikibias/common.hpp"

namespace wikibias {

namespace {

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const std::vector<std::pair<std::string, double>>& default_base_words() {
    static const std::vector<std::pair<std::string, double>> words = [] {
        const char* adjectives[] = {
            "young", "old", "early", "late", "new", "national", "international",
            "professional", "successful", "notable", "prominent", "popular",
            "famous", "influential", "talented", "acclaimed", "distinguished",
            "leading", "senior", "junior", "major", "minor", "local", "foreign",
            "public", "private", "political", "military", "religious", "academic",
            "scientific", "literary", "musical", "artistic", "athletic", "creative",
            "active", "modern", "classical", "traditional", "contemporary",
            "independent", "former", "current", "prolific", "versatile",
            "celebrated", "renowned", "respected", "important", "significant",
            "powerful", "wealthy", "humble", "brilliant", "skilled", "experienced",
            "dynamic", "innovative", "best"};
        const char* nouns[] = {
            "career", "life", "work", "award", "university", "college", "school",
            "degree", "team", "club", "league", "season", "game", "album", "song",
            "band", "music", "film", "television", "series", "theatre", "stage",
            "book", "novel", "magazine", "newspaper", "company", "business",
            "government", "party", "election", "state", "city", "country",
            "church", "history", "science", "art", "painting", "sculpture",
            "museum", "gallery", "festival", "prize", "medal", "championship",
            "tournament", "record", "chart", "radio", "station", "journal",
            "institute", "academy", "foundation", "society", "association",
            "debut", "tour", "title"};
        std::vector<std::pair<std::string, double>> v;
        for (const char* w : adjectives) v.emplace_back(w, 0.15);
        for (const char* w : nouns) v.emplace_back(w, 0.15);
        return v;
    }();
    return words;
}

const std::vector<std::pair<std::string, double>>& default_occupations() {
    static const std::vector<std::pair<std::string, double>> occs = {
        {"footballer", 0.25}, {"singer", 0.20}, {"actor", 0.15},
        {"politician", 0.10}, {"writer", 0.10}, {"scientist", 0.10},
        {"model", 0.10},      {"priest", 0.05}};
    return occs;
}

}  // namespace

Corpus generate_corpus(const SyntheticSpec& spec) {
    if (spec.occupations.empty()) {
        throw ConfigError("synthetic spec: at least one occupation required");
    }
    for (const auto& [w, p] : spec.base_words) {
        if (p < 0.0 || p > 1.0) throw ConfigError("synthetic spec: probability out of range");
    }
    for (const auto& pw : spec.planted) {
        if (pw.p_female < 0.0 || pw.p_female > 1.0 || pw.p_male < 0.0 || pw.p_male > 1.0) {
            throw ConfigError("synthetic spec: probability out of range");
        }
    }

    double total_share = 0.0;
    for (const auto& [o, s] : spec.occupations) total_share += s;

    std::mt19937_64 rng(spec.seed);
    Corpus corpus;
    corpus.provenance = "synthetic seed=" + std::to_string(spec.seed);

    std::size_t serial = 0;
    for (Gender gender : {Gender::Female, Gender::Male}) {
        for (std::size_t d = 0; d < spec.docs_per_gender; ++d) {
            Biography bio;
            bio.id = "S" + std::to_string(++serial);
            bio.gender = gender;

            double u = unit_draw(rng) * total_share;
            bio.occupation = spec.occupations.back().first;
            for (const auto& [occ, share] : spec.occupations) {
                if (u < share) {
                    bio.occupation = occ;
                    break;
                }
                u -= share;
            }

            std::ostringstream text;
            text << (gender == Gender::Female ? "She" : "He") << " was a "
                 << bio.occupation << ".";
            for (const auto& [word, p] : spec.base_words) {
                if (unit_draw(rng) < p) text << " " << word;
            }
            for (const auto& pw : spec.planted) {
                double p = (gender == Gender::Female) ? pw.p_female : pw.p_male;
                if (unit_draw(rng) < p) text << " " << pw.word;
            }
            bio.overview = text.str();
            corpus.records.push_back(std::move(bio));
        }
    }
    return corpus;
}

SyntheticSpec planted_bias_spec(std::uint64_t seed) {
    SyntheticSpec spec;
    spec.docs_per_gender = 1000;
    spec.base_words = default_base_words();
    spec.planted = {{"beautiful", 0.30, 0.10}};
    spec.occupations = default_occupations();
    spec.seed = seed;
    return spec;
}

SyntheticSpec null_spec(std::uint64_t seed) {
    SyntheticSpec spec = planted_bias_spec(seed);
    spec.planted.clear();
    return spec;
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open synthetic spec: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed synthetic spec " + path.string() + ": " + e.what());
    }

    SyntheticSpec spec;
    spec.docs_per_gender = j.value("docs_per_gender", std::size_t{1000});
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("base_words")) {
        for (const auto& item : j["base_words"]) {
            spec.base_words.emplace_back(item.at("word").get<std::string>(),
                                         item.at("p").get<double>());
        }
    } else {
        spec.base_words = default_base_words();
    }
    if (j.contains("planted")) {
        for (const auto& item : j["planted"]) {
            spec.planted.push_back({item.at("word").get<std::string>(),
                                    item.at("p_female").get<double>(),
                                    item.at("p_male").get<double>()});
        }
    }
    if (j.contains("occupations")) {
        for (const auto& item : j["occupations"]) {
            spec.occupations.emplace_back(item.at("name").get<std::string>(),
                                          item.at("share").get<double>());
        }
    } else {
        spec.occupations = default_occupations();
    }
    return spec;
}

void write_corpus_jsonl(const std::filesystem::path& path, const Corpus& corpus) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write corpus: " + path.string());
    for (const auto& r : corpus.records) {
        nlohmann::json j{{"id", r.id},
                         {"gender", gender_name(r.gender)},
                         {"occupation", r.occupation},
                         {"overview", r.overview}};
        out << j.dump() << "\n";
    }
}

}  // namespace wikibias
