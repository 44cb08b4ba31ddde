#ifndef WIKIBIAS_EXPERIMENT_HPP
#define WIKIBIAS_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wikibias/corpus.hpp"
#include "wikibias/model.hpp"
#include "wikibias/textproc.hpp"

namespace wikibias {

struct ExperimentConfig {
    VocabMode mode = VocabMode::AdjOnly;
    int runs = 50;
    double split_ratio = 0.7;
    std::size_t vocab_k = 100;
    std::uint64_t seed = 0;
    HyperParams params;
    double alpha = 0.05;
    // when set, vocabulary is rebuilt from each run's training fold instead
    // of once from the full corpus
    bool strict_vocab = false;
    std::size_t min_balanced_per_gender = 20;  // per-field gate
};

/// Accuracies across repeated balanced resamples, with the significance
/// verdict against chance.
struct ExperimentResult {
    std::vector<double> run_accuracies;
    double mean = 0.0;
    double stddev = 0.0;  // sample, n-1
    bool significant = false;
    VocabMode mode = VocabMode::AdjOnly;
    std::string scope = "global";
    std::uint64_t seed = 0;
};

/// One-sided one-sample t test of run accuracies against 0.5 at level
/// alpha. Zero variance: significant iff mean > 0.5.
bool significance(const std::vector<double>& run_accuracies, double alpha);

/// P(T > t) for Student's t with df degrees of freedom.
double student_t_sf(double t, int df);

/// 70/30-style split, stratified by gender within occupation; returns
/// record indices. Train takes round(ratio * group) from each gender of
/// each occupation, so both folds stay gender-balanced.
void stratified_split(const Corpus& corpus, double ratio, std::uint64_t seed,
                      std::vector<std::size_t>& train_idx,
                      std::vector<std::size_t>& test_idx);

/// Repeated balanced-resample experiment: per run, rebalance, split,
/// train, score on the held-out fold.
ExperimentResult run_experiment(const Corpus& corpus, const ExperimentConfig& config,
                                const PreprocessSettings& settings,
                                const std::string& scope = "global");

struct FieldOutcome {
    bool insufficient_data = false;
    ExperimentResult result;
};

/// Independent experiment per occupation field (vocabulary rebuilt per
/// field); fields below the minimum-data gate report insufficient_data.
std::map<std::string, FieldOutcome> run_per_field(const Corpus& corpus,
                                                  const FieldMap& field_map,
                                                  const ExperimentConfig& config,
                                                  const PreprocessSettings& settings);

double mean_of(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v);

}  // namespace wikibias

#endif
