// wikibias: measures gender-linked word-choice bias in a corpus of
// biography overviews by training a gender classifier on binary
// bag-of-words features and explaining its coefficients.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wikibias/common.hpp"
#include "wikibias/pipeline.hpp"

namespace {

struct GlobalFlags {
    std::string config_path;
    std::string corpus;
    std::string out;
    std::string mode;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int runs = 0;
    int k = 0;
};

wikibias::RunConfig resolve_config(const GlobalFlags& flags) {
    wikibias::RunConfig config;
    if (!flags.config_path.empty()) {
        config = wikibias::load_run_config(flags.config_path);
    }
    // flags win over config-file values
    if (!flags.corpus.empty()) config.corpus_path = flags.corpus;
    if (!flags.out.empty()) config.out_dir = flags.out;
    if (!flags.mode.empty()) config.mode = wikibias::parse_vocab_mode(flags.mode);
    if (flags.seed_set) config.seed = flags.seed;
    if (flags.runs > 0) config.runs = flags.runs;
    if (flags.k > 0) config.vocab_k = static_cast<std::size_t>(flags.k);
    wikibias::validate_config(config);
    return config;
}

void emit_error(const char* kind, const std::string& message) {
    nlohmann::json err{{"error", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gender-bias audit for biography corpora"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--config", flags.config_path, "JSON config file");
    app.add_option("--corpus", flags.corpus, "Corpus file (.jsonl or .tsv)");
    app.add_option("--out", flags.out, "Output directory");
    app.add_option("--mode", flags.mode, "Vocabulary mode: adj or adjnoun");
    auto* seed_opt = app.add_option("--seed", flags.seed, "Master RNG seed");
    app.add_option("--runs", flags.runs, "Number of balanced resample runs");
    app.add_option("--k", flags.k, "Per-gender vocabulary cutoff");

    auto* c_fetch = app.add_subcommand("fetch", "Fetch overview texts with disk cache");
    std::string items_path, fetch_out = "fetched.jsonl";
    bool offline = false;
    c_fetch->add_option("items", items_path, "JSONL of {id,title,gender,occupation}")
        ->required();
    c_fetch->add_option("--fetch-out", fetch_out, "Output corpus JSONL");
    c_fetch->add_flag("--offline", offline, "Serve from cache only");

    auto* c_ingest = app.add_subcommand("ingest", "Validate a corpus, emit normalized JSONL");
    std::string ingest_format = "jsonl", ingest_out = "normalized.jsonl";
    c_ingest->add_option("--format", ingest_format, "Input format: jsonl or tsv");
    c_ingest->add_option("--ingest-out", ingest_out, "Normalized output path");

    app.add_subcommand("vocab", "Build and export the vocabulary");
    app.add_subcommand("train", "Train a model on one balanced draw");
    app.add_subcommand("audit", "Full pipeline: experiment, analysis, reports");
    app.add_subcommand("fields", "Per-occupation-field experiments");

    auto* c_synth = app.add_subcommand("synth", "Generate a synthetic corpus");
    std::string spec_path, synth_out = "synthetic.jsonl";
    c_synth->add_option("--spec", spec_path, "Synthetic spec JSON (default: planted fixture)");
    c_synth->add_option("--synth-out", synth_out, "Output corpus JSONL");

    auto* c_report = app.add_subcommand("report", "Render a report.json as text");
    std::string report_path;
    c_report->add_option("report_file", report_path, "Path to report.json")->required();

    // let the global flags appear after the subcommand name too
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    flags.seed_set = seed_opt->count() > 0;

    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "report") {
            wikibias::cmd_report(report_path, std::cout);
            return 0;
        }

        wikibias::RunConfig config = resolve_config(flags);
        if (cmd == "fetch") {
            wikibias::cmd_fetch(config, items_path, fetch_out, offline);
        } else if (cmd == "ingest") {
            auto format = ingest_format == "tsv" ? wikibias::CorpusFormat::Tsv
                                                 : wikibias::CorpusFormat::Jsonl;
            wikibias::cmd_ingest(config, format, ingest_out);
        } else if (cmd == "vocab") {
            wikibias::cmd_vocab(config);
        } else if (cmd == "train") {
            wikibias::cmd_train(config);
        } else if (cmd == "audit") {
            auto out = wikibias::cmd_audit(config);
            std::cout << "mean accuracy " << out.experiment.mean << " +/- "
                      << out.experiment.stddev << " over "
                      << out.experiment.run_accuracies.size() << " runs; bias "
                      << (out.experiment.significant ? "" : "not ")
                      << "significant\nreport: " << out.report_path.string() << "\n";
        } else if (cmd == "fields") {
            auto outcomes = wikibias::cmd_fields(config);
            for (const auto& [field, outcome] : outcomes) {
                if (outcome.insufficient_data) {
                    std::cout << field << ": insufficient data\n";
                } else {
                    std::cout << field << ": " << outcome.result.mean << " +/- "
                              << outcome.result.stddev
                              << (outcome.result.significant ? " (significant)" : "")
                              << "\n";
                }
            }
        } else if (cmd == "synth") {
            wikibias::cmd_synth(config, spec_path, synth_out);
        }
    } catch (const wikibias::ConfigError& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const wikibias::DataError& e) {
        emit_error("data", e.what());
        return 3;
    } catch (const wikibias::IoError& e) {
        emit_error("io", e.what());
        return 4;
    }
    return 0;
}
