#include "wikibias/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "wikibias/common.hpp"

namespace wikibias {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// stable cross-entropy term: max(z,0) - z*y + log(1+exp(-|z|))
double xent(double z, int y) {
    return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

using SparseRows = std::vector<std::vector<std::uint32_t>>;

SparseRows to_sparse(const std::vector<FeatureVector>& X) {
    SparseRows rows(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < X[i].size(); ++j) {
            if (X[i][j]) rows[i].push_back(static_cast<std::uint32_t>(j));
        }
    }
    return rows;
}

double sparse_loss(const std::vector<double>& w, double b, const SparseRows& rows,
                   const std::vector<int>& y, double lambda) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double z = b;
        for (auto j : rows[i]) z += w[j];
        sum += xent(z, y[i]);
    }
    double reg = 0.0;
    for (double wj : w) reg += wj * wj;
    return sum / static_cast<double>(rows.size()) + 0.5 * lambda * reg;
}

void sparse_gradient(const std::vector<double>& w, double b, const SparseRows& rows,
                     const std::vector<int>& y, double lambda,
                     std::vector<double>& gw, double& gb) {
    std::fill(gw.begin(), gw.end(), 0.0);
    gb = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double z = b;
        for (auto j : rows[i]) z += w[j];
        double r = sigmoid(z) - y[i];
        gb += r;
        for (auto j : rows[i]) gw[j] += r;
    }
    double inv_n = 1.0 / static_cast<double>(rows.size());
    gb *= inv_n;
    for (std::size_t j = 0; j < w.size(); ++j) gw[j] = gw[j] * inv_n + lambda * w[j];
}

}  // namespace

double logistic_loss(const std::vector<double>& weights, double intercept,
                     const std::vector<FeatureVector>& X,
                     const std::vector<int>& y, double l2_lambda) {
    if (X.empty() || X.size() != y.size()) {
        throw DataError("logistic_loss: dimension mismatch");
    }
    return sparse_loss(weights, intercept, to_sparse(X), y, l2_lambda);
}

std::vector<double> logistic_gradient(const std::vector<double>& weights,
                                      double intercept,
                                      const std::vector<FeatureVector>& X,
                                      const std::vector<int>& y, double l2_lambda) {
    if (X.empty() || X.size() != y.size()) {
        throw DataError("logistic_gradient: dimension mismatch");
    }
    std::vector<double> gw(weights.size());
    double gb = 0.0;
    sparse_gradient(weights, intercept, to_sparse(X), y, l2_lambda, gw, gb);
    gw.push_back(gb);
    return gw;
}

TrainedModel train(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                   const HyperParams& params, std::uint64_t vocab_fingerprint,
                   std::uint64_t /*seed: unused, zero-initialized solver*/) {
    if (X.size() != y.size() || X.size() < 2) {
        throw DataError("train: need at least 2 samples with matching labels");
    }
    const std::size_t dim = X[0].size();
    for (const auto& row : X) {
        if (row.size() != dim) throw DataError("train: inconsistent feature dimension");
    }
    bool has0 = false, has1 = false;
    for (int label : y) {
        if (label == 0) has0 = true;
        else if (label == 1) has1 = true;
        else throw DataError("train: labels must be 0 or 1");
    }
    if (!has0 || !has1) throw DataError("train: single-class labels");

    SparseRows rows = to_sparse(X);

    TrainedModel model;
    model.hyperparams = params;
    model.vocabulary_fingerprint = vocab_fingerprint;
    model.weights.assign(dim, 0.0);

    std::vector<double> gw(dim), trial_w(dim);
    double loss = sparse_loss(model.weights, model.intercept, rows, y, params.l2_lambda);
    if (!std::isfinite(loss)) throw DataError("train: non-finite initial loss");
    model.loss_history.push_back(loss);

    for (int iter = 0; iter < params.max_iters; ++iter) {
        double gb = 0.0;
        sparse_gradient(model.weights, model.intercept, rows, y, params.l2_lambda,
                        gw, gb);

        // step halving: shrink until the loss does not increase
        double step = params.learning_rate;
        double trial_loss = 0.0, trial_b = 0.0;
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            for (std::size_t j = 0; j < dim; ++j) {
                trial_w[j] = model.weights[j] - step * gw[j];
            }
            trial_b = model.intercept - step * gb;
            trial_loss = sparse_loss(trial_w, trial_b, rows, y, params.l2_lambda);
            if (!std::isfinite(trial_loss)) {
                throw DataError("train: non-finite loss (divergent step size)");
            }
            if (trial_loss <= loss) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent direction at machine precision

        model.weights.swap(trial_w);
        model.intercept = trial_b;
        model.loss_history.push_back(trial_loss);
        double delta = loss - trial_loss;
        loss = trial_loss;
        if (delta < params.tolerance) break;
    }
    return model;
}

double predict_proba(const TrainedModel& model, const FeatureVector& x) {
    if (x.size() != model.weights.size()) {
        throw DataError("predict: feature dimension mismatch");
    }
    double z = model.intercept;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j]) z += model.weights[j];
    }
    return sigmoid(z);
}

int predict(const TrainedModel& model, const FeatureVector& x) {
    return predict_proba(model, x) >= 0.5 ? 1 : 0;
}

double accuracy(const TrainedModel& model, const std::vector<FeatureVector>& X,
                const std::vector<int>& y) {
    if (X.empty()) throw DataError("accuracy: empty test set");
    if (X.size() != y.size()) throw DataError("accuracy: dimension mismatch");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (predict(model, X[i]) == y[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(X.size());
}

std::vector<std::pair<std::string, double>> top_coefficients(
    const TrainedModel& model, const Vocabulary& vocabulary, std::size_t n,
    Direction direction) {
    if (n == 0) throw DataError("top_coefficients: n must be >= 1");
    if (model.weights.size() != vocabulary.size()) {
        throw DataError("top_coefficients: model/vocabulary size mismatch");
    }

    std::vector<std::pair<std::string, double>> rows;
    for (std::size_t j = 0; j < vocabulary.size(); ++j) {
        double w = model.weights[j];
        if (direction == Direction::Female ? w > 0 : w < 0) {
            rows.emplace_back(vocabulary.words[j], w);
        }
    }
    std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
        double ka = direction == Direction::Female ? -a.second : a.second;
        double kb = direction == Direction::Female ? -b.second : b.second;
        if (ka != kb) return ka < kb;
        return a.first < b.first;
    });
    if (rows.size() > n) rows.resize(n);
    return rows;
}

void save_model(const std::filesystem::path& path, const TrainedModel& model,
                VocabMode mode) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model: " + path.string());
    out << std::setprecision(17);
    out << "wikibias-model 1\n";
    out << "fingerprint " << std::hex << model.vocabulary_fingerprint << std::dec << "\n";
    out << "mode " << vocab_mode_name(mode) << "\n";
    out << "learning_rate " << model.hyperparams.learning_rate << "\n";
    out << "l2_lambda " << model.hyperparams.l2_lambda << "\n";
    out << "max_iters " << model.hyperparams.max_iters << "\n";
    out << "tolerance " << model.hyperparams.tolerance << "\n";
    out << "intercept " << model.intercept << "\n";
    out << "weights " << model.weights.size() << "\n";
    for (double w : model.weights) out << w << "\n";
}

TrainedModel load_model(const std::filesystem::path& path,
                        const Vocabulary& vocabulary) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read model: " + path.string());

    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "wikibias-model" || version != 1) {
        throw DataError("unrecognized model file: " + path.string());
    }

    TrainedModel model;
    std::string key;
    std::size_t n_weights = 0;
    while (in >> key) {
        if (key == "fingerprint") in >> std::hex >> model.vocabulary_fingerprint >> std::dec;
        else if (key == "mode") { std::string m; in >> m; }
        else if (key == "learning_rate") in >> model.hyperparams.learning_rate;
        else if (key == "l2_lambda") in >> model.hyperparams.l2_lambda;
        else if (key == "max_iters") in >> model.hyperparams.max_iters;
        else if (key == "tolerance") in >> model.hyperparams.tolerance;
        else if (key == "intercept") in >> model.intercept;
        else if (key == "weights") { in >> n_weights; break; }
        else throw DataError("unexpected model field '" + key + "'");
    }
    model.weights.resize(n_weights);
    for (auto& w : model.weights) {
        if (!(in >> w)) throw DataError("truncated model weights: " + path.string());
    }

    if (model.vocabulary_fingerprint != vocabulary_fingerprint(vocabulary)) {
        throw DataError("model fingerprint does not match the supplied vocabulary");
    }
    if (model.weights.size() != vocabulary.size()) {
        throw DataError("model weight count does not match vocabulary size");
    }
    return model;
}

}  // namespace wikibias
