#ifndef WIKIBIAS_CORPUS_HPP
#define WIKIBIAS_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wikibias {

enum class Gender { Female, Male };

inline const char* gender_name(Gender g) {
    return g == Gender::Female ? "female" : "male";
}

/// One biography record: the subject's gender, occupation and the lead
/// section ("overview") of their article.
struct Biography {
    std::string id;          // opaque, e.g. a Wikidata QID
    Gender gender = Gender::Female;
    std::string occupation;  // lowercase, non-empty
    std::string field;       // empty until assign_fields; "other" when unmapped
    std::string overview;    // non-empty after trimming
};

struct Corpus {
    std::vector<Biography> records;
    std::string provenance;
};

/// Maps fine-grained occupations onto coarse fields (Sports, Artist, ...).
struct FieldMap {
    std::map<std::string, std::string> entries;
    std::set<std::string> fields;
};

enum class CorpusFormat { Jsonl, Tsv };

struct LoadStats {
    std::size_t input_records = 0;
    std::size_t kept = 0;
    std::size_t dropped_gender = 0;
    std::size_t dropped_empty_overview = 0;
    std::size_t dropped_duplicate_id = 0;
    std::vector<std::string> warnings;

    std::size_t dropped() const {
        return dropped_gender + dropped_empty_overview + dropped_duplicate_id;
    }
};

struct LoadResult {
    Corpus corpus;
    LoadStats stats;
};

/// Loads a corpus file. Records whose gender is not "female"/"male", whose
/// overview is empty, or whose id duplicates an earlier record are dropped
/// and counted in the stats. Structurally malformed lines throw DataError
/// with the line number.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format);

FieldMap load_field_map(const std::filesystem::path& path);

/// Occupations by descending count, ties lexicographic ascending; at most k.
std::vector<std::pair<std::string, std::size_t>> top_occupations(
    const Corpus& corpus, std::size_t k);

/// Keeps only records whose occupation is in the given set (load order kept).
Corpus filter_to_occupations(const Corpus& corpus,
                             const std::set<std::string>& occupations);

/// Sets each record's field from the map; unmapped occupations get "other".
Corpus assign_fields(const Corpus& corpus, const FieldMap& map);

Corpus filter_to_field(const Corpus& corpus, const std::string& field);

/// Per occupation, keeps min(#female, #male) records of each gender; the
/// majority gender is downsampled uniformly without replacement. Output
/// preserves input order and is deterministic given the seed.
Corpus balance_by_occupation(const Corpus& corpus, std::uint64_t seed);

}  // namespace wikibias

#endif
