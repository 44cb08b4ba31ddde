#include "wikibias/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "wikibias/common.hpp"

namespace wikibias {

std::pair<double, double> word_frequency(const Corpus& corpus, const std::string& word,
                                         const PreprocessSettings& settings) {
    std::size_t n_female = 0, n_male = 0, hit_female = 0, hit_male = 0;
    for (const auto& r : corpus.records) {
        (r.gender == Gender::Female ? n_female : n_male)++;
        auto stream = preprocess(tokenize(r.overview), settings.stoplist,
                                 settings.neutralization);
        if (std::find(stream.begin(), stream.end(), word) != stream.end()) {
            (r.gender == Gender::Female ? hit_female : hit_male)++;
        }
    }
    auto frac = [](std::size_t hit, std::size_t n) {
        return n == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(n);
    };
    return {frac(hit_female, n_female), frac(hit_male, n_male)};
}

namespace {

Pos resolve_pos(const std::string& word, VocabMode mode, const PosLists& lists) {
    if (mode == VocabMode::AdjOnly) return Pos::Adjective;
    if (lists.adjectives.count(word)) return Pos::Adjective;
    if (lists.nouns.count(word)) return Pos::Noun;
    return Pos::Any;
}

}  // namespace

PredictiveWordReport annotate_predictive_words(const TrainedModel& model,
                                               const Vocabulary& vocabulary,
                                               const SubjectivityLexicon& lexicon,
                                               std::size_t n, const Corpus& corpus,
                                               const PreprocessSettings& settings) {
    PredictiveWordReport report;
    for (Direction dir : {Direction::Female, Direction::Male}) {
        for (const auto& [word, weight] : top_coefficients(model, vocabulary, n, dir)) {
            PredictiveWord row;
            row.word = word;
            row.weight = weight;
            row.direction = dir;
            row.subjectivity = lookup_subjectivity(
                lexicon, word, resolve_pos(word, vocabulary.mode, settings.pos_lists));
            auto [ff, fm] = word_frequency(corpus, word, settings);
            row.freq_female = ff;
            row.freq_male = fm;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

CorrelationMatrix correlation_matrix(const Corpus& corpus,
                                     const std::vector<std::string>& words,
                                     const PreprocessSettings& settings) {
    if (words.empty()) throw DataError("correlation_matrix: empty word list");
    if (corpus.records.size() < 2) {
        throw DataError("correlation_matrix: need at least 2 documents");
    }

    const std::size_t n_docs = corpus.records.size();
    const std::size_t n_words = words.size();

    // presence[i][j]: word j present in document i
    std::vector<std::vector<std::uint8_t>> presence(
        n_docs, std::vector<std::uint8_t>(n_words, 0));
    for (std::size_t i = 0; i < n_docs; ++i) {
        auto stream = preprocess(tokenize(corpus.records[i].overview),
                                 settings.stoplist, settings.neutralization);
        for (std::size_t j = 0; j < n_words; ++j) {
            if (std::find(stream.begin(), stream.end(), words[j]) != stream.end()) {
                presence[i][j] = 1;
            }
        }
    }

    std::vector<std::size_t> ones(n_words, 0);
    for (std::size_t j = 0; j < n_words; ++j) {
        for (std::size_t i = 0; i < n_docs; ++i) ones[j] += presence[i][j];
    }

    CorrelationMatrix m;
    m.words = words;
    m.values.assign(n_words, std::vector<double>(n_words, 0.0));
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t a = 0; a < n_words; ++a) {
        for (std::size_t b = a; b < n_words; ++b) {
            bool var_a = ones[a] > 0 && ones[a] < n_docs;
            bool var_b = ones[b] > 0 && ones[b] < n_docs;
            double phi;
            if (!var_a || !var_b) {
                phi = nan;
            } else if (a == b) {
                phi = 1.0;
            } else {
                std::size_t n11 = 0;
                for (std::size_t i = 0; i < n_docs; ++i) {
                    n11 += presence[i][a] & presence[i][b];
                }
                double n1a = static_cast<double>(ones[a]);
                double n1b = static_cast<double>(ones[b]);
                double nd = static_cast<double>(n_docs);
                double num = nd * static_cast<double>(n11) - n1a * n1b;
                double den = std::sqrt(n1a * (nd - n1a) * n1b * (nd - n1b));
                phi = num / den;
            }
            m.values[a][b] = phi;
            m.values[b][a] = phi;
        }
    }
    return m;
}

namespace {

struct AxisCounts {
    std::size_t weak = 0, strong = 0;
    std::size_t positive = 0, negative = 0, neutral = 0;
    std::size_t unknown = 0;

    std::size_t total() const { return weak + strong + unknown; }
};

AxisShares to_shares(const AxisCounts& c) {
    AxisShares s;
    double n = static_cast<double>(c.total());
    if (n == 0) return s;  // empty corpus: all shares 0
    s.weak = c.weak / n;
    s.strong = c.strong / n;
    s.positive = c.positive / n;
    s.negative = c.negative / n;
    s.neutral = c.neutral / n;
    s.unknown_strength = c.unknown / n;
    s.unknown_polarity = c.unknown / n;
    return s;
}

}  // namespace

SubjectivityDistribution subjectivity_distribution(const Corpus& corpus,
                                                   const SubjectivityLexicon& lexicon,
                                                   const PreprocessSettings& settings) {
    AxisCounts female, male;
    for (const auto& r : corpus.records) {
        AxisCounts& c = (r.gender == Gender::Female) ? female : male;
        auto adjectives = pos_filter(
            preprocess(tokenize(r.overview), settings.stoplist, settings.neutralization),
            VocabMode::AdjOnly, settings.pos_lists);
        for (const auto& w : adjectives) {
            auto subj = lookup_subjectivity(lexicon, w, Pos::Adjective);
            if (!subj) {
                ++c.unknown;
                continue;
            }
            (subj->strength == Strength::Weak ? c.weak : c.strong)++;
            switch (subj->polarity) {
                case Polarity::Positive: ++c.positive; break;
                case Polarity::Negative: ++c.negative; break;
                case Polarity::Neutral: ++c.neutral; break;
            }
        }
    }

    AxisCounts overall;
    overall.weak = female.weak + male.weak;
    overall.strong = female.strong + male.strong;
    overall.positive = female.positive + male.positive;
    overall.negative = female.negative + male.negative;
    overall.neutral = female.neutral + male.neutral;
    overall.unknown = female.unknown + male.unknown;

    return {to_shares(female), to_shares(male), to_shares(overall)};
}

std::vector<std::pair<std::string, double>> extract_topics(
    const std::vector<std::pair<std::string, double>>& weighted_words,
    const CategoryLexicon& categories, std::size_t n) {
    if (weighted_words.empty()) throw DataError("extract_topics: empty word list");
    if (categories.categories.empty()) {
        throw DataError("extract_topics: empty category lexicon");
    }

    std::vector<std::pair<std::string, double>> scores;
    for (const auto& [name, members] : categories.categories) {
        double score = 0.0;
        for (const auto& [word, weight] : weighted_words) {
            if (members.count(word)) score += std::abs(weight);
        }
        if (score > 0.0) scores.emplace_back(name, score);
    }
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scores.size() > n) scores.resize(n);
    return scores;
}

}  // namespace wikibias
