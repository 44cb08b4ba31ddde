#include "wikibias/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wikibias/common.hpp"
#include "wikibias/fetch.hpp"

namespace wikibias {

using nlohmann::json;

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("WIKIBIAS_DATA")) return env;
    return WIKIBIAS_DATA_DIR;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed config " + path.string() + ": " + e.what());
    }

    RunConfig c;
    auto path_of = [&](const char* key) -> std::filesystem::path {
        return j.contains(key) ? std::filesystem::path(j[key].get<std::string>())
                               : std::filesystem::path();
    };
    c.corpus_path = path_of("corpus");
    if (j.contains("mode")) c.mode = parse_vocab_mode(j["mode"].get<std::string>());
    c.vocab_k = j.value("k", c.vocab_k);
    c.top_occupations = j.value("top_occupations", c.top_occupations);
    c.runs = j.value("runs", c.runs);
    c.split_ratio = j.value("split_ratio", c.split_ratio);
    c.seed = j.value("seed", c.seed);
    c.alpha = j.value("alpha", c.alpha);
    c.strict_vocab = j.value("strict_vocab", c.strict_vocab);
    c.report_top_n = j.value("report_top_n", c.report_top_n);
    c.params.learning_rate = j.value("learning_rate", c.params.learning_rate);
    c.params.l2_lambda = j.value("l2_lambda", c.params.l2_lambda);
    c.params.max_iters = j.value("max_iters", c.params.max_iters);
    c.params.tolerance = j.value("tolerance", c.params.tolerance);
    c.stopwords_path = path_of("stopwords");
    c.lexicon_path = path_of("lexicon");
    c.fieldmap_path = path_of("fieldmap");
    c.neutralization_path = path_of("neutralization");
    c.categories_path = path_of("categories");
    c.adjectives_path = path_of("adjectives");
    c.nouns_path = path_of("nouns");
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    c.fetch_endpoint = j.value("endpoint", c.fetch_endpoint);
    if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
    return c;
}

void validate_config(RunConfig& config) {
    auto data = default_data_dir();
    auto fallback = [&](std::filesystem::path& p, const char* name) {
        if (p.empty()) p = data / name;
    };
    fallback(config.stopwords_path, "stopwords.txt");
    fallback(config.lexicon_path, "subjectivity_lexicon.tff");
    fallback(config.fieldmap_path, "fieldmap.tsv");
    fallback(config.neutralization_path, "neutralization.tsv");
    fallback(config.categories_path, "categories.txt");
    fallback(config.adjectives_path, "adjectives.txt");
    fallback(config.nouns_path, "nouns.txt");
    if (config.cache_dir.empty()) {
        if (const char* env = std::getenv("WIKIBIAS_CACHE")) config.cache_dir = env;
        else config.cache_dir = "fetch_cache";
    }

    if (!(config.split_ratio > 0.0 && config.split_ratio < 1.0)) {
        throw ConfigError("split_ratio must be in (0,1)");
    }
    if (config.runs < 1) throw ConfigError("runs must be >= 1");
    if (config.vocab_k < 1) throw ConfigError("k must be >= 1");
    if (config.params.learning_rate <= 0) throw ConfigError("learning_rate must be > 0");
    if (config.params.l2_lambda < 0) throw ConfigError("l2_lambda must be >= 0");
    if (config.params.max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (config.params.tolerance <= 0) throw ConfigError("tolerance must be > 0");

    for (const auto& [p, what] :
         {std::pair{config.stopwords_path, "stopwords"},
          {config.lexicon_path, "lexicon"},
          {config.fieldmap_path, "fieldmap"},
          {config.neutralization_path, "neutralization"},
          {config.categories_path, "categories"},
          {config.adjectives_path, "adjectives"},
          {config.nouns_path, "nouns"}}) {
        if (!std::filesystem::exists(p)) {
            throw ConfigError(std::string(what) + " file not found: " + p.string());
        }
    }
}

PreprocessSettings load_preprocess_settings(const RunConfig& config) {
    PreprocessSettings s;
    s.stoplist = load_stoplist(config.stopwords_path);
    s.neutralization = load_neutralization_map(config.neutralization_path);
    s.pos_lists = load_pos_lists(config.adjectives_path, config.nouns_path);
    return s;
}

namespace {

CorpusFormat format_for(const std::filesystem::path& p) {
    return p.extension() == ".tsv" ? CorpusFormat::Tsv : CorpusFormat::Jsonl;
}

json config_echo(const RunConfig& c) {
    return json{{"corpus", c.corpus_path.string()},
                {"mode", vocab_mode_name(c.mode)},
                {"k", c.vocab_k},
                {"top_occupations", c.top_occupations},
                {"runs", c.runs},
                {"split_ratio", c.split_ratio},
                {"seed", c.seed},
                {"alpha", c.alpha},
                {"strict_vocab", c.strict_vocab},
                {"learning_rate", c.params.learning_rate},
                {"l2_lambda", c.params.l2_lambda},
                {"max_iters", c.params.max_iters},
                {"tolerance", c.params.tolerance}};
}

json experiment_json(const ExperimentResult& r) {
    return json{{"scope", r.scope},
                {"mode", vocab_mode_name(r.mode)},
                {"runs", r.run_accuracies.size()},
                {"accuracies", r.run_accuracies},
                {"mean", r.mean},
                {"std", r.stddev},
                {"std_percent", r.stddev * 100.0},
                {"significant", r.significant},
                {"seed", r.seed}};
}

json predictive_json(const PredictiveWordReport& report) {
    json female = json::array(), male = json::array();
    for (const auto& row : report.rows) {
        json r{{"word", row.word},
               {"weight", row.weight},
               {"strength",
                row.subjectivity ? strength_name(row.subjectivity->strength) : "unknown"},
               {"polarity",
                row.subjectivity ? polarity_name(row.subjectivity->polarity) : "unknown"},
               {"freq_female", row.freq_female},
               {"freq_male", row.freq_male}};
        (row.direction == Direction::Female ? female : male).push_back(std::move(r));
    }
    return json{{"female", female}, {"male", male}};
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%FT%TZ");
    return os.str();
}

// body first, meta (timestamp) second; determinism covers the body only
void write_report(const std::filesystem::path& path, const json& body) {
    json report{{"body", body}, {"meta", {{"generated_at", timestamp_utc()}}}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report: " + path.string());
    out << report.dump(2) << "\n";
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<const ExperimentResult*>& rows,
                       const std::vector<bool>& insufficient) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write summary: " + path.string());
    out << "scope,mode,runs,mean,std,significant\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = *rows[i];
        if (insufficient[i]) {
            out << r.scope << "," << vocab_mode_name(r.mode)
                << ",0,,,insufficient data\n";
        } else {
            out << r.scope << "," << vocab_mode_name(r.mode) << ","
                << r.run_accuracies.size() << "," << r.mean << "," << r.stddev << ","
                << (r.significant ? "true" : "false") << "\n";
        }
    }
}

void write_correlations_csv(const std::filesystem::path& path,
                            const CorrelationMatrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write correlations: " + path.string());
    out << std::setprecision(17);
    out << "word";
    for (const auto& w : m.words) out << "," << w;
    out << "\n";
    for (std::size_t i = 0; i < m.words.size(); ++i) {
        out << m.words[i];
        for (double v : m.values[i]) {
            out << ",";
            if (CorrelationMatrix::defined(v)) out << v;
            else out << "undefined";
        }
        out << "\n";
    }
}

void write_frequencies_csv(const std::filesystem::path& path,
                           const PredictiveWordReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write frequencies: " + path.string());
    out << std::setprecision(17);
    out << "word,gender,frequency\n";
    for (const auto& row : report.rows) {
        out << row.word << ",female," << row.freq_female << "\n";
        out << row.word << ",male," << row.freq_male << "\n";
    }
}

}  // namespace

Corpus load_and_filter_corpus(const RunConfig& config) {
    if (config.corpus_path.empty()) throw ConfigError("no corpus path configured");
    auto loaded = load_corpus(config.corpus_path, format_for(config.corpus_path));
    for (const auto& w : loaded.stats.warnings) std::cerr << "warning: " << w << "\n";
    if (loaded.stats.dropped() > 0) {
        std::cerr << "dropped " << loaded.stats.dropped() << " of "
                  << loaded.stats.input_records << " records (gender "
                  << loaded.stats.dropped_gender << ", empty overview "
                  << loaded.stats.dropped_empty_overview << ", duplicate id "
                  << loaded.stats.dropped_duplicate_id << ")\n";
    }

    auto top = top_occupations(loaded.corpus, config.top_occupations);
    std::set<std::string> keep;
    for (const auto& [occ, n] : top) keep.insert(occ);
    return filter_to_occupations(loaded.corpus, keep);
}

AuditOutput cmd_audit(const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    PreprocessSettings settings = load_preprocess_settings(config);
    Corpus corpus = load_and_filter_corpus(config);

    ExperimentConfig exp;
    exp.mode = config.mode;
    exp.runs = config.runs;
    exp.split_ratio = config.split_ratio;
    exp.vocab_k = config.vocab_k;
    exp.seed = config.seed;
    exp.params = config.params;
    exp.alpha = config.alpha;
    exp.strict_vocab = config.strict_vocab;
    ExperimentResult result = run_experiment(corpus, exp, settings);

    // reference model for introspection: one balanced draw, trained on all of it
    Vocabulary vocab = build_vocabulary(corpus, config.mode, config.vocab_k, settings);
    Corpus balanced = balance_by_occupation(corpus, mix_seed(config.seed, 0xb41a7ced));
    std::vector<FeatureVector> X;
    std::vector<int> y;
    X.reserve(balanced.records.size());
    for (const auto& r : balanced.records) {
        X.push_back(encode(r.overview, vocab, settings));
        y.push_back(r.gender == Gender::Female ? 1 : 0);
    }
    TrainedModel model = train(X, y, config.params, vocabulary_fingerprint(vocab));

    save_vocabulary(config.out_dir / "vocab.txt", vocab);
    save_model(config.out_dir / "model.txt", model, config.mode);

    auto lexicon = parse_subjectivity_lexicon(config.lexicon_path);
    auto categories = load_category_lexicon(config.categories_path);
    std::size_t n = std::min(config.report_top_n, vocab.size());
    PredictiveWordReport predictive =
        annotate_predictive_words(model, vocab, lexicon, n, balanced, settings);

    std::vector<std::string> predictive_words;
    std::vector<std::pair<std::string, double>> female_weighted, male_weighted;
    for (const auto& row : predictive.rows) {
        predictive_words.push_back(row.word);
        (row.direction == Direction::Female ? female_weighted : male_weighted)
            .emplace_back(row.word, row.weight);
    }
    write_correlations_csv(config.out_dir / "correlations.csv",
                           correlation_matrix(balanced, predictive_words, settings));
    write_frequencies_csv(config.out_dir / "frequencies.csv", predictive);

    json topics{{"female", extract_topics(female_weighted, categories, 10)},
                {"male", extract_topics(male_weighted, categories, 10)}};
    {
        std::ofstream out(config.out_dir / "topics.json");
        if (!out) throw IoError("cannot write topics.json");
        out << topics.dump(2) << "\n";
    }

    auto distribution = subjectivity_distribution(balanced, lexicon, settings);
    auto shares_json = [](const AxisShares& s) {
        return json{{"weak", s.weak},
                    {"strong", s.strong},
                    {"positive", s.positive},
                    {"negative", s.negative},
                    {"neutral", s.neutral},
                    {"unknown", s.unknown_strength}};
    };

    json body{{"schema_version", 1},
              {"config", config_echo(config)},
              {"experiment", experiment_json(result)},
              {"predictive_words", predictive_json(predictive)},
              {"subjectivity_distribution",
               {{"female", shares_json(distribution.female)},
                {"male", shares_json(distribution.male)},
                {"overall", shares_json(distribution.overall)}}},
              {"topics", topics}};

    AuditOutput out;
    out.experiment = std::move(result);
    out.predictive = std::move(predictive);
    out.report_path = config.out_dir / "report.json";
    write_report(out.report_path, body);
    write_summary_csv(config.out_dir / "summary.csv", {&out.experiment}, {false});
    return out;
}

std::map<std::string, FieldOutcome> cmd_fields(const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    PreprocessSettings settings = load_preprocess_settings(config);
    Corpus corpus = load_and_filter_corpus(config);
    FieldMap field_map = load_field_map(config.fieldmap_path);

    ExperimentConfig exp;
    exp.mode = config.mode;
    exp.runs = config.runs;
    exp.split_ratio = config.split_ratio;
    exp.vocab_k = config.vocab_k;
    exp.seed = config.seed;
    exp.params = config.params;
    exp.alpha = config.alpha;
    exp.strict_vocab = config.strict_vocab;
    auto outcomes = run_per_field(corpus, field_map, exp, settings);

    json fields = json::object();
    std::vector<const ExperimentResult*> rows;
    std::vector<bool> insufficient;
    for (const auto& [field, outcome] : outcomes) {
        rows.push_back(&outcome.result);
        insufficient.push_back(outcome.insufficient_data);
        fields[field] = outcome.insufficient_data
                            ? json{{"insufficient_data", true}}
                            : experiment_json(outcome.result);
    }
    json body{{"schema_version", 1}, {"config", config_echo(config)}, {"fields", fields}};
    write_report(config.out_dir / "report.json", body);
    write_summary_csv(config.out_dir / "summary.csv", rows, insufficient);
    return outcomes;
}

void cmd_ingest(const RunConfig& config, CorpusFormat format,
                const std::filesystem::path& normalized_out) {
    auto loaded = load_corpus(config.corpus_path, format);
    for (const auto& w : loaded.stats.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "kept " << loaded.stats.kept << " / " << loaded.stats.input_records
              << " records (dropped: gender " << loaded.stats.dropped_gender
              << ", empty overview " << loaded.stats.dropped_empty_overview
              << ", duplicate id " << loaded.stats.dropped_duplicate_id << ")\n";
    write_corpus_jsonl(normalized_out, loaded.corpus);
}

void cmd_vocab(const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    PreprocessSettings settings = load_preprocess_settings(config);
    Corpus corpus = load_and_filter_corpus(config);
    Vocabulary vocab = build_vocabulary(corpus, config.mode, config.vocab_k, settings);
    save_vocabulary(config.out_dir / "vocab.txt", vocab);
}

void cmd_train(const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    PreprocessSettings settings = load_preprocess_settings(config);
    Corpus corpus = load_and_filter_corpus(config);
    Vocabulary vocab = build_vocabulary(corpus, config.mode, config.vocab_k, settings);
    Corpus balanced = balance_by_occupation(corpus, config.seed);

    std::vector<FeatureVector> X;
    std::vector<int> y;
    for (const auto& r : balanced.records) {
        X.push_back(encode(r.overview, vocab, settings));
        y.push_back(r.gender == Gender::Female ? 1 : 0);
    }
    TrainedModel model = train(X, y, config.params, vocabulary_fingerprint(vocab));
    save_vocabulary(config.out_dir / "vocab.txt", vocab);
    save_model(config.out_dir / "model.txt", model, config.mode);
}

void cmd_synth(const RunConfig& config, const std::filesystem::path& spec_path,
               const std::filesystem::path& corpus_out) {
    SyntheticSpec spec = spec_path.empty() ? planted_bias_spec(config.seed)
                                           : load_synthetic_spec(spec_path);
    if (!spec_path.empty() && config.seed != 0) spec.seed = config.seed;
    write_corpus_jsonl(corpus_out, generate_corpus(spec));
}

void cmd_fetch(const RunConfig& config, const std::filesystem::path& items_path,
               const std::filesystem::path& corpus_out, bool offline) {
    FetchOptions options;
    options.endpoint = config.fetch_endpoint;
    options.cache_dir = config.cache_dir;
    options.offline = offline;
    auto result = fetch_overviews(load_fetch_items(items_path), options);
    for (const auto& f : result.failures) {
        std::cerr << "fetch failed for " << f.id << ": " << f.reason << "\n";
    }
    write_corpus_jsonl(corpus_out, result.fragment);
    std::cerr << "fetched " << result.fragment.records.size() << " records, "
              << result.failures.size() << " failures\n";
}

void cmd_report(const std::filesystem::path& report_path, std::ostream& out) {
    std::ifstream in(report_path);
    if (!in) throw IoError("cannot open report: " + report_path.string());
    json report;
    try {
        in >> report;
    } catch (const json::exception& e) {
        throw DataError("malformed report " + report_path.string() + ": " + e.what());
    }
    const json& body = report.contains("body") ? report["body"] : report;

    if (body.contains("experiment")) {
        const auto& e = body["experiment"];
        out << "scope: " << e.value("scope", "?") << "  mode: " << e.value("mode", "?")
            << "\n";
        out << "runs: " << e.value("runs", 0) << "  mean accuracy: " << std::fixed
            << std::setprecision(4) << e.value("mean", 0.0) << " +/- "
            << e.value("std", 0.0) << "\n";
        out << "bias significant vs chance: "
            << (e.value("significant", false) ? "yes" : "no") << "\n";
    }
    if (body.contains("predictive_words")) {
        for (const char* dir : {"female", "male"}) {
            out << "\ntop " << dir << "-predictive words:\n";
            for (const auto& row : body["predictive_words"][dir]) {
                out << "  " << std::left << std::setw(16)
                    << row.value("word", "") << std::right << std::showpos
                    << std::setprecision(3) << row.value("weight", 0.0)
                    << std::noshowpos << "  " << row.value("polarity", "?") << "/"
                    << row.value("strength", "?") << "\n";
            }
        }
    }
    if (body.contains("fields")) {
        out << "per-field results:\n";
        for (const auto& [field, e] : body["fields"].items()) {
            if (e.value("insufficient_data", false)) {
                out << "  " << std::left << std::setw(18) << field
                    << "insufficient data\n";
            } else {
                out << "  " << std::left << std::setw(18) << field << std::fixed
                    << std::setprecision(4) << e.value("mean", 0.0) << " +/- "
                    << e.value("std", 0.0)
                    << (e.value("significant", false) ? "  significant" : "") << "\n";
            }
        }
    }
}

}  // namespace wikibias
