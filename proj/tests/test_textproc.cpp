#include <doctest.h>

#include <map>
#include <random>

#include "test_util.hpp"
#include "wikibias/common.hpp"
#include "wikibias/textproc.hpp"

using namespace wikibias;
using testutil::bio;

TEST_CASE("tokenize lowercases and splits on punctuation") {
    CHECK(tokenize("He was a FAMOUS player.") ==
          std::vector<std::string>{"he", "was", "a", "famous", "player"});
    CHECK(tokenize("").empty());
    // trailing '*' survives, digit-only tokens are dropped
    CHECK(tokenize("act* debuted in 1999") ==
          std::vector<std::string>{"act*", "debuted", "in"});
    // internal apostrophes kept, edge apostrophes trimmed
    CHECK(tokenize("O'Brien's 'quote'") ==
          std::vector<std::string>{"o'brien's", "quote"});
}

TEST_CASE("preprocess neutralizes first, then removes stopwords") {
    auto settings = testutil::default_settings();
    CHECK(preprocess({"she", "was", "beautiful"}, settings.stoplist,
                     settings.neutralization) == std::vector<std::string>{"beautiful"});
    CHECK(preprocess({"actress", "and", "actor"}, settings.stoplist,
                     settings.neutralization) ==
          std::vector<std::string>{"act*", "act*"});
    CHECK(preprocess({}, settings.stoplist, settings.neutralization).empty());
}

TEST_CASE("preprocess guarantees gendered pronouns are gone") {
    auto settings = testutil::default_settings();
    auto out = preprocess(tokenize("He gave her his book; she gave him hers."),
                          settings.stoplist, settings.neutralization);
    for (const auto& t : out) {
        CHECK(t != "he");
        CHECK(t != "she");
        CHECK(t != "him");
        CHECK(t != "her");
        CHECK(t != "his");
        CHECK(t != "hers");
    }
}

TEST_CASE("pos_filter keeps mode-appropriate tokens in order") {
    auto settings = testutil::default_settings();
    std::vector<std::string> tokens = {"famous", "player", "ran"};
    CHECK(pos_filter(tokens, VocabMode::AdjOnly, settings.pos_lists) ==
          std::vector<std::string>{"famous"});
    CHECK(pos_filter(tokens, VocabMode::AdjNoun, settings.pos_lists) ==
          std::vector<std::string>{"famous", "player"});
    CHECK(pos_filter({}, VocabMode::AdjOnly, settings.pos_lists).empty());
}

namespace {

Corpus two_gender_corpus(const std::string& female_text, const std::string& male_text) {
    Corpus c;
    c.records.push_back(testutil::bio("f", Gender::Female, "singer", female_text));
    c.records.push_back(testutil::bio("m", Gender::Male, "singer", male_text));
    return c;
}

}  // namespace

TEST_CASE("identical per-gender streams give |vocabulary| = k") {
    auto settings = testutil::default_settings();
    auto c = two_gender_corpus("famous young popular", "famous young popular");
    auto v = build_vocabulary(c, VocabMode::AdjOnly, 3, settings);
    CHECK(v.words.size() == 3);
}

TEST_CASE("disjoint per-gender streams give |vocabulary| = 2k") {
    auto settings = testutil::default_settings();
    auto c = two_gender_corpus("famous young", "strong old");
    auto v = build_vocabulary(c, VocabMode::AdjOnly, 2, settings);
    CHECK(v.words.size() == 4);
    // female list first, then unseen male words
    CHECK(v.words == std::vector<std::string>{"famous", "young", "old", "strong"});
}

TEST_CASE("vocabulary counts token occurrences, ties broken lexicographically") {
    auto settings = testutil::default_settings();
    // male: strong x2 beats old x1 and young x1; tie old/young -> old
    auto c = two_gender_corpus("famous famous young", "strong strong old young");
    auto v = build_vocabulary(c, VocabMode::AdjOnly, 2, settings);
    CHECK(v.words == std::vector<std::string>{"famous", "young", "strong", "old"});
}

TEST_CASE("build_vocabulary errors when a gender has no tokens") {
    auto settings = testutil::default_settings();
    auto c = two_gender_corpus("famous", "qqqqq zzzzz");  // male side filtered away
    CHECK_THROWS_AS(build_vocabulary(c, VocabMode::AdjOnly, 2, settings), DataError);
}

TEST_CASE("vocabulary properties: bounds, determinism, no stopwords") {
    auto settings = testutil::default_settings();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Corpus c = testutil::random_corpus(rng, 40);
        bool both = false, f = false, m = false;
        for (const auto& r : c.records) {
            (r.gender == Gender::Female ? f : m) = true;
        }
        both = f && m;
        if (!both) continue;

        std::size_t k = 1 + rng() % 6;
        Vocabulary v1, v2;
        try {
            v1 = build_vocabulary(c, VocabMode::AdjNoun, k, settings);
            v2 = build_vocabulary(c, VocabMode::AdjNoun, k, settings);
        } catch (const DataError&) {
            continue;  // a gender had no tokens this draw
        }
        CHECK(v1.words.size() <= 2 * k);
        CHECK(v1.words == v2.words);
        for (const auto& w : v1.words) {
            CHECK_FALSE(settings.stoplist.words.count(w));
            CHECK(v1.index.at(w) < v1.words.size());
        }
    }
}

TEST_CASE("encode marks presence, ignoring multiplicity") {
    auto settings = testutil::default_settings();
    Vocabulary v;
    v.words = {"beautiful", "dancer", "war"};
    for (std::size_t i = 0; i < v.words.size(); ++i) v.index[v.words[i]] = i;

    CHECK(encode("a beautiful beautiful dancer", v, settings) ==
          FeatureVector{1, 1, 0});
    CHECK(encode("nothing relevant here", v, settings) == FeatureVector{0, 0, 0});
    CHECK(encode("beautiful dancer war", v, settings) == FeatureVector{1, 1, 1});

    // idempotent under word repetition
    CHECK(encode("war war war war", v, settings) == encode("war", v, settings));
}

TEST_CASE("vocabulary file round-trips with its header") {
    auto settings = testutil::default_settings();
    auto c = two_gender_corpus("famous young", "strong old");
    auto v = build_vocabulary(c, VocabMode::AdjNoun, 2, settings);

    testutil::TempDir tmp;
    save_vocabulary(tmp.path / "vocab.txt", v);
    auto loaded = load_vocabulary(tmp.path / "vocab.txt");
    CHECK(loaded.words == v.words);
    CHECK(loaded.mode == v.mode);
    CHECK(loaded.k == v.k);
    CHECK(vocabulary_fingerprint(loaded) == vocabulary_fingerprint(v));
}
