#ifndef WIKIBIAS_LEXICON_HPP
#define WIKIBIAS_LEXICON_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace wikibias {

enum class Pos { Adjective, Noun, Verb, Adverb, Any };
enum class Strength { Weak, Strong };
enum class Polarity { Positive, Negative, Neutral };

const char* pos_name(Pos p);
const char* strength_name(Strength s);
const char* polarity_name(Polarity p);

struct LexiconEntry {
    std::string word;  // lowercase, no whitespace
    Pos pos = Pos::Any;
    Strength strength = Strength::Weak;
    Polarity polarity = Polarity::Neutral;
};

/// Subjectivity annotation for a word, or "unknown" when the lexicon has
/// no entry. Absent words never get a default polarity.
struct Subjectivity {
    Strength strength;
    Polarity polarity;
};

struct SubjectivityLexicon {
    std::unordered_map<std::string, std::vector<LexiconEntry>> entries;
    std::size_t skipped_lines = 0;
    std::vector<std::string> warnings;

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& [w, v] : entries) n += v.size();
        return n;
    }
};

/// Parses an MPQA-style clue file (whitespace-separated key=value tokens:
/// type, word1, pos1, priorpolarity). Lines missing word1 or type are
/// skipped and counted.
SubjectivityLexicon parse_subjectivity_lexicon(const std::filesystem::path& path);

/// Entry matching the requested POS if present, else the pos=any entry,
/// else nullopt. Among multiple matches strong beats weak; polarity from
/// the first-parsed winning row.
std::optional<Subjectivity> lookup_subjectivity(const SubjectivityLexicon& lex,
                                                const std::string& word, Pos pos);

/// Gendered word -> neutral form (actor/actress -> act*). Neutral forms
/// never appear as keys, so application is idempotent.
struct NeutralizationMap {
    std::map<std::string, std::string> pairs;
};

NeutralizationMap load_neutralization_map(const std::filesystem::path& path);

std::string neutralize(const NeutralizationMap& map, const std::string& token);

struct CategoryLexicon {
    std::map<std::string, std::set<std::string>> categories;
};

/// Format: "name: word word word" per line.
CategoryLexicon load_category_lexicon(const std::filesystem::path& path);

struct PosLists {
    std::unordered_set<std::string> adjectives;
    std::unordered_set<std::string> nouns;
};

PosLists load_pos_lists(const std::filesystem::path& adjectives_path,
                        const std::filesystem::path& nouns_path);

}  // namespace wikibias

#endif
