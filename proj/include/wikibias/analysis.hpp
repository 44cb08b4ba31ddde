#ifndef WIKIBIAS_ANALYSIS_HPP
#define WIKIBIAS_ANALYSIS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wikibias/corpus.hpp"
#include "wikibias/lexicon.hpp"
#include "wikibias/model.hpp"
#include "wikibias/textproc.hpp"

namespace wikibias {

struct PredictiveWord {
    std::string word;
    double weight = 0.0;
    Direction direction = Direction::Female;
    std::optional<Subjectivity> subjectivity;  // nullopt = unknown to lexicon
    double freq_female = 0.0;  // fraction of female overviews containing the word
    double freq_male = 0.0;
};

struct PredictiveWordReport {
    std::vector<PredictiveWord> rows;  // female block first, then male
};

/// Phi coefficients between binary word-presence indicators. Entries for
/// zero-variance columns are NaN (explicitly undefined, not 0).
struct CorrelationMatrix {
    std::vector<std::string> words;
    std::vector<std::vector<double>> values;

    static bool defined(double v) { return !std::isnan(v); }
};

struct AxisShares {
    double weak = 0, strong = 0;
    double positive = 0, negative = 0, neutral = 0;
    double unknown_strength = 0, unknown_polarity = 0;
};

/// Token-level shares of adjective occurrences by subjectivity strength
/// and polarity, per gender and overall.
struct SubjectivityDistribution {
    AxisShares female, male, overall;
};

/// Fraction of each gender's overviews whose preprocessed stream contains
/// the word.
std::pair<double, double> word_frequency(const Corpus& corpus, const std::string& word,
                                         const PreprocessSettings& settings);

/// Top-n coefficients per direction joined with subjectivity lookups and
/// per-gender appearance frequencies.
PredictiveWordReport annotate_predictive_words(const TrainedModel& model,
                                               const Vocabulary& vocabulary,
                                               const SubjectivityLexicon& lexicon,
                                               std::size_t n, const Corpus& corpus,
                                               const PreprocessSettings& settings);

CorrelationMatrix correlation_matrix(const Corpus& corpus,
                                     const std::vector<std::string>& words,
                                     const PreprocessSettings& settings);

SubjectivityDistribution subjectivity_distribution(const Corpus& corpus,
                                                   const SubjectivityLexicon& lexicon,
                                                   const PreprocessSettings& settings);

/// score(category) = sum of |weight| over member words; zero-score
/// categories omitted; descending, ties lexicographic; at most n.
std::vector<std::pair<std::string, double>> extract_topics(
    const std::vector<std::pair<std::string, double>>& weighted_words,
    const CategoryLexicon& categories, std::size_t n);

}  // namespace wikibias

#endif
