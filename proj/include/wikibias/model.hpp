#ifndef WIKIBIAS_MODEL_HPP
#define WIKIBIAS_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wikibias/textproc.hpp"

namespace wikibias {

struct HyperParams {
    double learning_rate = 0.5;
    double l2_lambda = 1e-4;
    int max_iters = 2000;
    double tolerance = 1e-8;  // absolute loss-change stopping threshold
};

/// Logistic regression weights aligned to vocabulary order. Label 1 =
/// female, so positive coefficients read as female-predictive.
struct TrainedModel {
    std::vector<double> weights;
    double intercept = 0.0;
    std::uint64_t vocabulary_fingerprint = 0;
    HyperParams hyperparams;
    std::vector<double> loss_history;  // non-increasing under step halving
};

/// Mean cross-entropy + (lambda/2)*||w||^2, intercept unpenalized.
double logistic_loss(const std::vector<double>& weights, double intercept,
                     const std::vector<FeatureVector>& X,
                     const std::vector<int>& y, double l2_lambda);

/// Analytic gradient of logistic_loss; last element is d/d(intercept).
std::vector<double> logistic_gradient(const std::vector<double>& weights,
                                      double intercept,
                                      const std::vector<FeatureVector>& X,
                                      const std::vector<int>& y, double l2_lambda);

/// Full-batch gradient descent from zero weights with step halving. The
/// seed is accepted for interface stability; zero initialization makes
/// training deterministic without it.
TrainedModel train(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                   const HyperParams& params, std::uint64_t vocab_fingerprint,
                   std::uint64_t seed = 0);

double predict_proba(const TrainedModel& model, const FeatureVector& x);

/// 1 iff proba >= 0.5 (tie goes to 1).
int predict(const TrainedModel& model, const FeatureVector& x);

double accuracy(const TrainedModel& model, const std::vector<FeatureVector>& X,
                const std::vector<int>& y);

enum class Direction { Female, Male };

/// Female: n largest positive weights descending. Male: n most negative
/// ascending. Ties lexicographic.
std::vector<std::pair<std::string, double>> top_coefficients(
    const TrainedModel& model, const Vocabulary& vocabulary, std::size_t n,
    Direction direction);

void save_model(const std::filesystem::path& path, const TrainedModel& model,
                VocabMode mode);
TrainedModel load_model(const std::filesystem::path& path,
                        const Vocabulary& vocabulary);

}  // namespace wikibias

#endif
