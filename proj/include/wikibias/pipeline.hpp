#ifndef WIKIBIAS_PIPELINE_HPP
#define WIKIBIAS_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "wikibias/analysis.hpp"
#include "wikibias/corpus.hpp"
#include "wikibias/experiment.hpp"
#include "wikibias/model.hpp"
#include "wikibias/synth.hpp"
#include "wikibias/textproc.hpp"

namespace wikibias {

std::filesystem::path default_data_dir();

/// Everything a pipeline run needs. Paths default to the bundled data
/// files; flags override config-file values.
struct RunConfig {
    std::filesystem::path corpus_path;
    VocabMode mode = VocabMode::AdjOnly;
    std::size_t vocab_k = 100;
    std::size_t top_occupations = 100;
    int runs = 50;
    double split_ratio = 0.7;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    bool strict_vocab = false;
    std::size_t report_top_n = 10;
    HyperParams params;

    std::filesystem::path stopwords_path;
    std::filesystem::path lexicon_path;
    std::filesystem::path fieldmap_path;
    std::filesystem::path neutralization_path;
    std::filesystem::path categories_path;
    std::filesystem::path adjectives_path;
    std::filesystem::path nouns_path;

    std::filesystem::path out_dir = "out";

    std::string fetch_endpoint =
        "https://en.wikipedia.org/api/rest_v1/page/summary";
    std::filesystem::path cache_dir;
};

/// Reads a JSON config file; missing keys keep their defaults.
RunConfig load_run_config(const std::filesystem::path& path);

/// Fills empty data-file paths from the bundled data directory and checks
/// every referenced file exists. Throws ConfigError.
void validate_config(RunConfig& config);

PreprocessSettings load_preprocess_settings(const RunConfig& config);

struct AuditOutput {
    ExperimentResult experiment;
    PredictiveWordReport predictive;
    std::filesystem::path report_path;
};

// Subcommand bodies. Artifacts land under config.out_dir with fixed names
// (report.json, summary.csv, vocab.txt, model.txt, correlations.csv,
// frequencies.csv, topics.json).
AuditOutput cmd_audit(const RunConfig& config);
std::map<std::string, FieldOutcome> cmd_fields(const RunConfig& config);
void cmd_ingest(const RunConfig& config, CorpusFormat format,
                const std::filesystem::path& normalized_out);
void cmd_vocab(const RunConfig& config);
void cmd_train(const RunConfig& config);
void cmd_synth(const RunConfig& config, const std::filesystem::path& spec_path,
               const std::filesystem::path& corpus_out);
void cmd_fetch(const RunConfig& config, const std::filesystem::path& items_path,
               const std::filesystem::path& corpus_out, bool offline);
void cmd_report(const std::filesystem::path& report_path, std::ostream& out);

Corpus load_and_filter_corpus(const RunConfig& config);

}  // namespace wikibias

#endif
