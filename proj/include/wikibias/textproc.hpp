#ifndef WIKIBIAS_TEXTPROC_HPP
#define WIKIBIAS_TEXTPROC_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikibias/corpus.hpp"
#include "wikibias/lexicon.hpp"

namespace wikibias {

struct Stoplist {
    std::unordered_set<std::string> words;
};

Stoplist load_stoplist(const std::filesystem::path& path);

enum class VocabMode { AdjOnly, AdjNoun };

const char* vocab_mode_name(VocabMode m);
VocabMode parse_vocab_mode(const std::string& s);

/// Ordered union of the per-gender top-k word lists.
struct Vocabulary {
    std::vector<std::string> words;
    std::unordered_map<std::string, std::size_t> index;
    VocabMode mode = VocabMode::AdjOnly;
    std::size_t k = 0;

    std::size_t size() const { return words.size(); }
};

/// Binary presence vector aligned to vocabulary order.
using FeatureVector = std::vector<std::uint8_t>;

/// Everything encode/build_vocabulary need besides the corpus.
struct PreprocessSettings {
    Stoplist stoplist;
    NeutralizationMap neutralization;
    PosLists pos_lists;
};

/// Lowercase word tokens. Splits on anything that is not alphanumeric,
/// an internal apostrophe, or a trailing '*'; digit-only tokens dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Neutralization first, then stopword removal.
std::vector<std::string> preprocess(const std::vector<std::string>& tokens,
                                    const Stoplist& stoplist,
                                    const NeutralizationMap& neutral);

/// AdjOnly keeps adjectives; AdjNoun keeps adjectives and nouns. Order and
/// duplicates preserved.
std::vector<std::string> pos_filter(const std::vector<std::string>& tokens,
                                    VocabMode mode, const PosLists& pos_lists);

/// Per-gender token frequencies over preprocessed, POS-filtered streams;
/// top-k per gender (ties lexicographic), vocabulary = female list then
/// unseen male words.
Vocabulary build_vocabulary(const Corpus& corpus, VocabMode mode, std::size_t k,
                            const PreprocessSettings& settings);

/// Bit i = 1 iff vocabulary word i occurs in the preprocessed stream.
FeatureVector encode(std::string_view text, const Vocabulary& vocabulary,
                     const PreprocessSettings& settings);

/// FNV-1a over the ordered word list; ties a model to its vocabulary.
std::uint64_t vocabulary_fingerprint(const Vocabulary& vocabulary);

void save_vocabulary(const std::filesystem::path& path, const Vocabulary& v);
Vocabulary load_vocabulary(const std::filesystem::path& path);

}  // namespace wikibias

#endif
