#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "wikibias/common.hpp"
#include "wikibias/model.hpp"

using namespace wikibias;

namespace {

// central finite differences of logistic_loss; the independent oracle for
// the analytic gradient
std::vector<double> fd_gradient(const std::vector<double>& w, double b,
                                const std::vector<FeatureVector>& X,
                                const std::vector<int>& y, double lambda,
                                double h = 1e-6) {
    std::vector<double> g(w.size() + 1);
    for (std::size_t j = 0; j < w.size(); ++j) {
        auto wp = w, wm = w;
        wp[j] += h;
        wm[j] -= h;
        g[j] = (logistic_loss(wp, b, X, y, lambda) -
                logistic_loss(wm, b, X, y, lambda)) /
               (2 * h);
    }
    g[w.size()] = (logistic_loss(w, b + h, X, y, lambda) -
                   logistic_loss(w, b - h, X, y, lambda)) /
                  (2 * h);
    return g;
}

void random_instance(std::mt19937_64& rng, std::size_t n, std::size_t d,
                     std::vector<FeatureVector>& X, std::vector<int>& y) {
    X.assign(n, FeatureVector(d, 0));
    y.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) X[i][j] = rng() % 2;
        y[i] = static_cast<int>(rng() % 2);
    }
    y[0] = 0;  // both classes present
    y[1] = 1;
}

}  // namespace

TEST_CASE("analytic gradient matches finite differences") {
    std::mt19937_64 rng(11);
    for (double lambda : {0.0, 0.1}) {
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<FeatureVector> X;
            std::vector<int> y;
            random_instance(rng, 50, 10, X, y);

            std::vector<double> w(10);
            for (auto& wj : w) wj = (double(rng() % 2000) - 1000) / 500.0;
            double b = (double(rng() % 2000) - 1000) / 500.0;

            auto analytic = logistic_gradient(w, b, X, y, lambda);
            auto numeric = fd_gradient(w, b, X, y, lambda);
            REQUIRE(analytic.size() == numeric.size());
            for (std::size_t j = 0; j < analytic.size(); ++j) {
                double denom = std::max(std::abs(numeric[j]), 1e-8);
                CHECK(std::abs(analytic[j] - numeric[j]) / denom < 1e-5);
            }
        }
    }
}

TEST_CASE("separable one-hot points reach training accuracy 1.0 with lambda 0") {
    std::vector<FeatureVector> X = {{1, 0}, {0, 1}};
    std::vector<int> y = {1, 0};
    HyperParams params;
    params.l2_lambda = 0.0;
    auto model = train(X, y, params, 0);
    CHECK(accuracy(model, X, y) == 1.0);
}

TEST_CASE("train rejects bad inputs") {
    HyperParams params;
    CHECK_THROWS_WITH_AS(train({{1}, {0}}, {1, 1}, params, 0),
                         doctest::Contains("single-class"), DataError);
    CHECK_THROWS_AS(train({{1}, {0, 1}}, {1, 0}, params, 0), DataError);
    CHECK_THROWS_AS(train({{1}}, {1}, params, 0), DataError);
}

TEST_CASE("loss history is non-increasing under step halving") {
    std::mt19937_64 rng(5);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    random_instance(rng, 80, 12, X, y);
    HyperParams params;
    params.learning_rate = 4.0;  // deliberately too big; halving must cope
    auto model = train(X, y, params, 0);
    for (std::size_t i = 1; i < model.loss_history.size(); ++i) {
        CHECK(model.loss_history[i] <= model.loss_history[i - 1]);
    }
}

TEST_CASE("training is deterministic and order-free") {
    std::mt19937_64 rng(17);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    random_instance(rng, 40, 8, X, y);
    HyperParams params;

    auto m1 = train(X, y, params, 123);
    auto m2 = train(X, y, params, 123);
    CHECK(m1.weights == m2.weights);
    CHECK(m1.intercept == m2.intercept);

    // permuting the batch leaves full-batch results identical
    std::vector<std::size_t> perm(X.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::mt19937_64 prng(3);
    deterministic_shuffle(perm, prng);
    std::vector<FeatureVector> Xp;
    std::vector<int> yp;
    for (auto i : perm) {
        Xp.push_back(X[i]);
        yp.push_back(y[i]);
    }
    auto m3 = train(Xp, yp, params, 123);
    for (std::size_t j = 0; j < m1.weights.size(); ++j) {
        CHECK(m3.weights[j] == doctest::Approx(m1.weights[j]).epsilon(1e-12));
    }
}

TEST_CASE("predict_proba evaluates the sigmoid") {
    TrainedModel m;
    m.weights = {2.0};
    m.intercept = 0.0;
    CHECK(predict_proba(m, {1}) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
    CHECK(predict_proba(m, {0}) == doctest::Approx(0.5));
    CHECK(predict(m, {0}) == 1);  // tie goes to 1

    TrainedModel zero;
    zero.weights = {0.0, 0.0};
    CHECK(predict_proba(zero, {1, 1}) == doctest::Approx(0.5));

    CHECK_THROWS_AS(predict_proba(m, {1, 0}), DataError);
}

TEST_CASE("labels are invariant under positive rescaling of (w, b)") {
    std::mt19937_64 rng(23);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    random_instance(rng, 30, 6, X, y);
    auto model = train(X, y, HyperParams{}, 0);

    TrainedModel scaled = model;
    for (auto& w : scaled.weights) w *= 7.5;
    scaled.intercept *= 7.5;
    for (const auto& x : X) CHECK(predict(model, x) == predict(scaled, x));
}

TEST_CASE("accuracy on empty test set is an error") {
    TrainedModel m;
    m.weights = {1.0};
    CHECK_THROWS_AS(accuracy(m, {}, {}), DataError);
}

TEST_CASE("top_coefficients splits by sign with lexicographic ties") {
    Vocabulary v;
    v.words = {"beautiful", "war", "high", "able", "ache"};
    for (std::size_t i = 0; i < v.words.size(); ++i) v.index[v.words[i]] = i;
    TrainedModel m;
    m.weights = {2.0, -1.5, 0.1, 1.0, 1.0};

    auto female = top_coefficients(m, v, 1, Direction::Female);
    REQUIRE(female.size() == 1);
    CHECK(female[0].first == "beautiful");
    CHECK(female[0].second == 2.0);

    auto male = top_coefficients(m, v, 1, Direction::Male);
    REQUIRE(male.size() == 1);
    CHECK(male[0].first == "war");

    // tie between able and ache at +1.0: lexicographic
    auto top3 = top_coefficients(m, v, 3, Direction::Female);
    REQUIRE(top3.size() == 3);
    CHECK(top3[1].first == "able");
    CHECK(top3[2].first == "ache");

    // n beyond vocabulary: truncated, not fatal
    CHECK(top_coefficients(m, v, 99, Direction::Female).size() == 4);
}

TEST_CASE("model serialization round-trips and checks the fingerprint") {
    Vocabulary v;
    v.words = {"famous", "war"};
    v.index = {{"famous", 0}, {"war", 1}};
    TrainedModel m;
    m.weights = {0.123456789012345678, -3.14159265358979};
    m.intercept = 0.25;
    m.vocabulary_fingerprint = vocabulary_fingerprint(v);

    testutil::TempDir tmp;
    save_model(tmp.path / "model.txt", m, VocabMode::AdjOnly);
    auto loaded = load_model(tmp.path / "model.txt", v);
    CHECK(loaded.weights == m.weights);
    CHECK(loaded.intercept == m.intercept);

    Vocabulary other;
    other.words = {"war", "famous"};
    other.index = {{"war", 0}, {"famous", 1}};
    CHECK_THROWS_WITH_AS(load_model(tmp.path / "model.txt", other),
                         doctest::Contains("fingerprint"), DataError);
}
