#ifndef WIKIBIAS_SYNTH_HPP
#define WIKIBIAS_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wikibias/corpus.hpp"

namespace wikibias {

struct PlantedWord {
    std::string word;
    double p_female = 0.0;  // per-document presence probability
    double p_male = 0.0;
};

/// Recipe for a synthetic biography corpus. Base words appear with the
/// same probability for both genders; planted words carry the signal.
struct SyntheticSpec {
    std::size_t docs_per_gender = 1000;
    std::vector<std::pair<std::string, double>> base_words;  // word, presence prob
    std::vector<PlantedWord> planted;
    std::vector<std::pair<std::string, double>> occupations;  // name, share
    std::uint64_t seed = 0;
};

Corpus generate_corpus(const SyntheticSpec& spec);

/// 2,000 docs, one adjective planted at presence 0.30 female / 0.10 male.
SyntheticSpec planted_bias_spec(std::uint64_t seed = 42);

/// Same base distribution with nothing planted.
SyntheticSpec null_spec(std::uint64_t seed = 42);

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);
void write_corpus_jsonl(const std::filesystem::path& path, const Corpus& corpus);

}  // namespace wikibias

#endif
