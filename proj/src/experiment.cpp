#include "wikibias/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "wikibias/common.hpp"

namespace wikibias {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

namespace {

// Regularized incomplete beta I_x(a,b) by continued fraction
// (Lentz's method), the standard route to the t CDF.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kTiny = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log(1.0 - x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_sf(double t, int df) {
    if (df < 1) throw DataError("student_t_sf: df must be >= 1");
    double x = df / (df + t * t);
    double p = 0.5 * reg_inc_beta(0.5 * df, 0.5, x);
    return t >= 0.0 ? p : 1.0 - p;
}

bool significance(const std::vector<double>& run_accuracies, double alpha) {
    if (run_accuracies.size() < 2) {
        throw DataError("significance: need at least 2 runs");
    }
    double m = mean_of(run_accuracies);
    double sd = sample_stddev(run_accuracies);
    if (sd == 0.0) return m > 0.5;  // degenerate rule

    std::size_t n = run_accuracies.size();
    double t = (m - 0.5) / (sd / std::sqrt(static_cast<double>(n)));
    return student_t_sf(t, static_cast<int>(n) - 1) < alpha;
}

void stratified_split(const Corpus& corpus, double ratio, std::uint64_t seed,
                      std::vector<std::size_t>& train_idx,
                      std::vector<std::size_t>& test_idx) {
    train_idx.clear();
    test_idx.clear();

    std::map<std::string, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
        groups;
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        auto& g = groups[corpus.records[i].occupation];
        (corpus.records[i].gender == Gender::Female ? g.first : g.second).push_back(i);
    }

    std::mt19937_64 rng(seed);
    for (auto& [occ, fm] : groups) {
        for (auto* side : {&fm.first, &fm.second}) {
            deterministic_shuffle(*side, rng);
            auto n_train = static_cast<std::size_t>(
                std::llround(ratio * static_cast<double>(side->size())));
            n_train = std::min(n_train, side->size());
            train_idx.insert(train_idx.end(), side->begin(), side->begin() + n_train);
            test_idx.insert(test_idx.end(), side->begin() + n_train, side->end());
        }
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
}

namespace {

void encode_fold(const Corpus& corpus, const std::vector<std::size_t>& idx,
                 const Vocabulary& vocab, const PreprocessSettings& settings,
                 std::vector<FeatureVector>& X, std::vector<int>& y) {
    X.clear();
    y.clear();
    X.reserve(idx.size());
    y.reserve(idx.size());
    for (std::size_t i : idx) {
        X.push_back(encode(corpus.records[i].overview, vocab, settings));
        y.push_back(corpus.records[i].gender == Gender::Female ? 1 : 0);
    }
}

Corpus subset(const Corpus& corpus, const std::vector<std::size_t>& idx) {
    Corpus out;
    out.provenance = corpus.provenance;
    for (std::size_t i : idx) out.records.push_back(corpus.records[i]);
    return out;
}

}  // namespace

ExperimentResult run_experiment(const Corpus& corpus, const ExperimentConfig& config,
                                const PreprocessSettings& settings,
                                const std::string& scope) {
    if (config.runs < 1) throw ConfigError("run_experiment: runs must be >= 1");
    if (!(config.split_ratio > 0.0 && config.split_ratio < 1.0)) {
        throw ConfigError("run_experiment: split_ratio must be in (0,1)");
    }

    ExperimentResult result;
    result.mode = config.mode;
    result.scope = scope;
    result.seed = config.seed;

    Vocabulary vocab;
    if (!config.strict_vocab) {
        vocab = build_vocabulary(corpus, config.mode, config.vocab_k, settings);
    }

    for (int run = 0; run < config.runs; ++run) {
        std::uint64_t run_seed = mix_seed(config.seed, static_cast<std::uint64_t>(run));
        Corpus balanced = balance_by_occupation(corpus, run_seed);

        std::vector<std::size_t> train_idx, test_idx;
        stratified_split(balanced, config.split_ratio, mix_seed(run_seed, 1),
                         train_idx, test_idx);
        if (train_idx.empty() || test_idx.empty()) {
            throw DataError("run " + std::to_string(run) + " in scope '" + scope +
                            "': empty train or test fold");
        }

        const Vocabulary& run_vocab =
            config.strict_vocab
                ? (vocab = build_vocabulary(subset(balanced, train_idx), config.mode,
                                            config.vocab_k, settings))
                : vocab;

        std::vector<FeatureVector> X;
        std::vector<int> y;
        encode_fold(balanced, train_idx, run_vocab, settings, X, y);
        TrainedModel model;
        try {
            model = train(X, y, config.params, vocabulary_fingerprint(run_vocab));
        } catch (const DataError& e) {
            throw DataError("run " + std::to_string(run) + " in scope '" + scope +
                            "': " + e.what());
        }

        encode_fold(balanced, test_idx, run_vocab, settings, X, y);
        result.run_accuracies.push_back(accuracy(model, X, y));
    }

    result.mean = mean_of(result.run_accuracies);
    result.stddev = sample_stddev(result.run_accuracies);
    result.significant = result.run_accuracies.size() >= 2
                             ? significance(result.run_accuracies, config.alpha)
                             : result.mean > 0.5;
    return result;
}

std::map<std::string, FieldOutcome> run_per_field(const Corpus& corpus,
                                                  const FieldMap& field_map,
                                                  const ExperimentConfig& config,
                                                  const PreprocessSettings& settings) {
    Corpus with_fields = assign_fields(corpus, field_map);

    std::map<std::string, FieldOutcome> out;
    for (const auto& field : field_map.fields) {
        Corpus sub = filter_to_field(with_fields, field);

        // gate on what a balanced draw would yield
        Corpus balanced = balance_by_occupation(sub, config.seed);
        std::size_t per_gender = balanced.records.size() / 2;
        FieldOutcome outcome;
        if (per_gender < config.min_balanced_per_gender) {
            outcome.insufficient_data = true;
            outcome.result.mode = config.mode;
            outcome.result.scope = field;
            outcome.result.seed = config.seed;
        } else {
            outcome.result = run_experiment(sub, config, settings, field);
        }
        out[field] = std::move(outcome);
    }
    return out;
}

}  // namespace wikibias
