#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_util.hpp"
#include "wikibias/analysis.hpp"
#include "wikibias/common.hpp"

using namespace wikibias;
using testutil::bio;

namespace {

// brute-force phi from the 2x2 contingency table; the oracle for
// correlation_matrix
double phi_oracle(const std::vector<int>& a, const std::vector<int>& b) {
    double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i]) ++n11;
        else if (a[i]) ++n10;
        else if (b[i]) ++n01;
        else ++n00;
    }
    double num = n11 * n00 - n10 * n01;
    double den = std::sqrt((n11 + n10) * (n01 + n00) * (n11 + n01) * (n10 + n00));
    return num / den;
}

SubjectivityLexicon bundled_lexicon() {
    return parse_subjectivity_lexicon(testutil::data_dir() /
                                      "subjectivity_lexicon.tff");
}

}  // namespace

TEST_CASE("word_frequency counts per-gender document presence") {
    auto settings = testutil::default_settings();
    Corpus c;
    c.records.push_back(bio("f1", Gender::Female, "singer", "a beautiful dancer"));
    c.records.push_back(bio("f2", Gender::Female, "singer", "beautiful and famous"));
    c.records.push_back(bio("m1", Gender::Male, "singer", "a famous writer"));
    c.records.push_back(bio("m2", Gender::Male, "singer", "nothing notable"));

    auto [ff, fm] = word_frequency(c, "beautiful", settings);
    CHECK(ff == 1.0);
    CHECK(fm == 0.0);

    auto [af, am] = word_frequency(c, "famous", settings);
    CHECK(af == 0.5);
    CHECK(am == 0.5);

    auto [zf, zm] = word_frequency(c, "zzz", settings);
    CHECK(zf == 0.0);
    CHECK(zm == 0.0);
}

TEST_CASE("correlation matrix: diagonal, symmetry, perfect anti-association") {
    auto settings = testutil::default_settings();
    Corpus c;
    c.records.push_back(bio("1", Gender::Female, "singer", "famous famous"));
    c.records.push_back(bio("2", Gender::Male, "singer", "young"));

    auto m = correlation_matrix(c, {"famous", "young"}, settings);
    CHECK(m.values[0][0] == 1.0);
    CHECK(m.values[1][1] == 1.0);
    CHECK(m.values[0][1] == doctest::Approx(-1.0));
    CHECK(m.values[0][1] == m.values[1][0]);
}

TEST_CASE("zero-variance columns give an explicit undefined marker") {
    auto settings = testutil::default_settings();
    Corpus c;
    c.records.push_back(bio("1", Gender::Female, "singer", "famous young"));
    c.records.push_back(bio("2", Gender::Male, "singer", "famous"));

    // "famous" is present everywhere, "zzz" nowhere: both zero variance
    auto m = correlation_matrix(c, {"famous", "young", "zzz"}, settings);
    CHECK_FALSE(CorrelationMatrix::defined(m.values[0][0]));
    CHECK_FALSE(CorrelationMatrix::defined(m.values[0][1]));
    CHECK_FALSE(CorrelationMatrix::defined(m.values[2][2]));
    CHECK(CorrelationMatrix::defined(m.values[1][1]));
}

TEST_CASE("phi matches the brute-force contingency oracle on random instances") {
    auto settings = testutil::default_settings();
    std::mt19937_64 rng(77);
    const std::vector<std::string> pool = {"famous", "young",  "popular", "strong",
                                           "career", "team",   "album",   "novel",
                                           "church", "season"};
    for (int trial = 0; trial < 30; ++trial) {
        Corpus c;
        std::vector<std::vector<int>> presence(pool.size(), std::vector<int>(20, 0));
        for (int d = 0; d < 20; ++d) {
            std::string text = "filler";
            for (std::size_t w = 0; w < pool.size(); ++w) {
                if (rng() % 2) {
                    text += " " + pool[w];
                    presence[w][d] = 1;
                }
            }
            c.records.push_back(bio("d" + std::to_string(d),
                                    d % 2 ? Gender::Male : Gender::Female, "singer",
                                    text));
        }
        auto m = correlation_matrix(c, pool, settings);
        for (std::size_t a = 0; a < pool.size(); ++a) {
            for (std::size_t b = 0; b < pool.size(); ++b) {
                auto ones_a = std::count(presence[a].begin(), presence[a].end(), 1);
                auto ones_b = std::count(presence[b].begin(), presence[b].end(), 1);
                bool var_a = ones_a > 0 && ones_a < 20;
                bool var_b = ones_b > 0 && ones_b < 20;
                if (!var_a || !var_b) {
                    CHECK_FALSE(CorrelationMatrix::defined(m.values[a][b]));
                    continue;
                }
                double expect = phi_oracle(presence[a], presence[b]);
                CHECK(std::abs(m.values[a][b] - expect) < 1e-12);
                CHECK(m.values[a][b] == m.values[b][a]);
                CHECK(m.values[a][b] >= -1.0);
                CHECK(m.values[a][b] <= 1.0);
            }
        }
    }
}

TEST_CASE("correlation_matrix input validation") {
    auto settings = testutil::default_settings();
    Corpus c;
    c.records.push_back(bio("1", Gender::Female, "singer", "x"));
    c.records.push_back(bio("2", Gender::Male, "singer", "y"));
    CHECK_THROWS_AS(correlation_matrix(c, {}, settings), DataError);
    Corpus one;
    one.records.push_back(bio("1", Gender::Female, "singer", "x"));
    CHECK_THROWS_AS(correlation_matrix(one, {"famous"}, settings), DataError);
}

TEST_CASE("annotate_predictive_words joins coefficients with the lexicon") {
    auto settings = testutil::default_settings();
    auto lexicon = bundled_lexicon();

    Vocabulary v;
    v.words = {"beautiful", "offensive", "qqqword"};
    for (std::size_t i = 0; i < v.words.size(); ++i) v.index[v.words[i]] = i;
    v.mode = VocabMode::AdjOnly;
    TrainedModel m;
    m.weights = {2.0, -1.8, 0.4};

    Corpus c;
    c.records.push_back(bio("f", Gender::Female, "singer", "beautiful qqqword"));
    c.records.push_back(bio("m", Gender::Male, "singer", "offensive"));

    auto report = annotate_predictive_words(m, v, lexicon, 2, c, settings);
    REQUIRE(report.rows.size() == 3);  // 2 female-positive, 1 male-negative

    const auto& beautiful = report.rows[0];
    CHECK(beautiful.word == "beautiful");
    CHECK(beautiful.direction == Direction::Female);
    CHECK(beautiful.weight > 0);
    REQUIRE(beautiful.subjectivity.has_value());
    CHECK(beautiful.subjectivity->strength == Strength::Strong);
    CHECK(beautiful.subjectivity->polarity == Polarity::Positive);
    CHECK(beautiful.freq_female == 1.0);
    CHECK(beautiful.freq_male == 0.0);

    CHECK_FALSE(report.rows[1].subjectivity.has_value());  // qqqword: unknown

    const auto& offensive = report.rows[2];
    CHECK(offensive.word == "offensive");
    CHECK(offensive.direction == Direction::Male);
    CHECK(offensive.weight < 0);
    REQUIRE(offensive.subjectivity.has_value());
    CHECK(offensive.subjectivity->strength == Strength::Weak);
    CHECK(offensive.subjectivity->polarity == Polarity::Negative);

    // direction always consistent with weight sign
    for (const auto& row : report.rows) {
        if (row.direction == Direction::Female) CHECK(row.weight > 0);
        else CHECK(row.weight < 0);
    }
}

TEST_CASE("subjectivity distribution shares sum to one per axis") {
    auto settings = testutil::default_settings();
    auto lexicon = bundled_lexicon();

    Corpus c;
    c.records.push_back(bio("f", Gender::Female, "singer", "beautiful beautiful"));
    c.records.push_back(bio("m", Gender::Male, "singer", "offensive famous"));
    auto dist = subjectivity_distribution(c, lexicon, settings);

    CHECK(dist.female.strong == 1.0);
    CHECK(dist.female.positive == 1.0);
    CHECK(dist.male.weak == 1.0);
    CHECK(dist.male.negative == doctest::Approx(0.5));
    CHECK(dist.male.positive == doctest::Approx(0.5));

    for (const AxisShares* s : {&dist.female, &dist.male, &dist.overall}) {
        CHECK(s->weak + s->strong + s->unknown_strength == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s->positive + s->negative + s->neutral + s->unknown_polarity ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("subjectivity distribution of an empty corpus is all zeros") {
    auto settings = testutil::default_settings();
    auto dist = subjectivity_distribution(Corpus{}, bundled_lexicon(), settings);
    CHECK(dist.overall.weak == 0.0);
    CHECK(dist.overall.unknown_strength == 0.0);
}

TEST_CASE("extract_topics ranks categories by coefficient mass") {
    auto categories = load_category_lexicon(testutil::data_dir() / "categories.txt");

    auto female = extract_topics(
        {{"marriage", 1.2}, {"spouse", 0.9}, {"child", 0.8}}, categories, 5);
    REQUIRE_FALSE(female.empty());
    CHECK(female[0].first == "family");

    auto male = extract_topics(
        {{"footballer", -1.5}, {"football", -1.2}, {"war", -1.0}, {"officer", -0.8}},
        categories, 5);
    REQUIRE_FALSE(male.empty());
    CHECK((male[0].first == "sports" || male[0].first == "military"));

    // disjoint words: empty ranking
    CHECK(extract_topics({{"zzzz", 3.0}}, categories, 5).empty());

    // rank-invariant under positive rescaling
    auto scaled = extract_topics(
        {{"marriage", 6.0}, {"spouse", 4.5}, {"child", 4.0}}, categories, 5);
    REQUIRE(scaled.size() == female.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        CHECK(scaled[i].first == female[i].first);
    }
}

TEST_CASE("word_frequency agrees with encoded column means") {
    // cross-module consistency: encoding every document and averaging a
    // word's column per gender reproduces word_frequency
    auto settings = testutil::default_settings();
    std::mt19937_64 rng(15);
    Corpus c = testutil::random_corpus(rng, 30);

    Vocabulary v;
    v.words = {"famous", "career", "album"};
    for (std::size_t i = 0; i < v.words.size(); ++i) v.index[v.words[i]] = i;

    for (std::size_t j = 0; j < v.words.size(); ++j) {
        double sum_f = 0, n_f = 0, sum_m = 0, n_m = 0;
        for (const auto& r : c.records) {
            auto bits = encode(r.overview, v, settings);
            if (r.gender == Gender::Female) {
                sum_f += bits[j];
                n_f += 1;
            } else {
                sum_m += bits[j];
                n_m += 1;
            }
        }
        auto [ff, fm] = word_frequency(c, v.words[j], settings);
        if (n_f > 0) CHECK(ff == doctest::Approx(sum_f / n_f));
        if (n_m > 0) CHECK(fm == doctest::Approx(sum_m / n_m));
    }
}
