// termnet: terminology enrichment from term variants in a lemmatized corpus.
//
//   termnet acquire   --terms t.txt --corpus c.txt --out run/
//   termnet graph     --out run/
//   termnet bootstrap --terms t.txt --corpus c.txt --out run/ --sizes 1,2,4
//   termnet scan      --terms t.txt --corpus c.txt
//   termnet validate  --terms t.txt --corpus c.txt --grammar g.mg

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "termnet/commands.hpp"
#include "termnet/errors.hpp"

namespace {

void add_family_option(CLI::App* cmd, termnet::RunConfig& config) {
    cmd->add_option_function<std::string>(
           "--families",
           [&config](const std::string& value) { config.families = termnet::parse_family_set(value); },
           "Variant families to use (default: coor,ins,perm)")
        ->type_name("LIST");
}

void add_sizes_option(CLI::App* cmd, termnet::RunConfig& config) {
    cmd->add_option_function<std::string>(
           "--sizes",
           [&config](const std::string& value) {
               config.sizes.clear();
               std::string piece;
               std::istringstream in(value);
               while (std::getline(in, piece, ',')) {
                   if (piece.empty()) continue;
                   config.sizes.push_back(std::stoi(piece));
               }
               if (config.sizes.empty()) throw CLI::ValidationError("--sizes", "needs at least one size");
           },
           "Comma-separated bootstrap sizes")
        ->required()
        ->type_name("LIST");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terminology enrichment from term variants in a lemmatized corpus"};
    app.require_subcommand(1);

    termnet::RunConfig config;

    auto* acquire = app.add_subcommand("acquire", "Run the incremental acquisition to its fixed point");
    acquire->add_option("--terms", config.terms_path, "Reference term list")->required();
    acquire->add_option("--corpus", config.corpus_path, "Lemmatized corpus (.gz accepted)")->required();
    acquire->add_option("--grammar", config.grammar_path, "Meta-grammar file (default: built in)");
    acquire->add_option("--out", config.out_dir, "Output directory")->required();
    add_family_option(acquire, config);
    acquire->add_option("--min-content-words", config.min_content_words,
                        "Drop candidates with fewer content words");
    acquire->add_option("--workers", config.workers, "Scanner worker threads");

    auto* graph = app.add_subcommand("graph", "Build coordination classes and the specialization graph");
    graph->add_option("--out", config.out_dir, "Directory holding links.jsonl; receives the graphs")
        ->required();
    graph->add_option("--grammar", config.grammar_path, "Meta-grammar file (default: built in)");
    graph->add_option("--conflate", config.conflation_path, "Conflation file (`term == term` lines)");
    graph->add_flag("--split-head-coord", config.split_head_coord,
                    "Class through argument coordinations only");

    auto* bootstrap = app.add_subcommand("bootstrap", "Acquisition volume for sampled seed subsets");
    bootstrap->add_option("--terms", config.terms_path, "Reference term list")->required();
    bootstrap->add_option("--corpus", config.corpus_path, "Lemmatized corpus (.gz accepted)")->required();
    bootstrap->add_option("--grammar", config.grammar_path, "Meta-grammar file (default: built in)");
    bootstrap->add_option("--out", config.out_dir, "Output directory")->required();
    add_sizes_option(bootstrap, config);
    bootstrap->add_option("--trials", config.trials, "Trials per size (default 1)");
    bootstrap->add_option("--rng-seed", config.rng_seed, "Sampling seed (default 0)");
    add_family_option(bootstrap, config);
    bootstrap->add_option("--min-content-words", config.min_content_words,
                          "Drop candidates with fewer content words");
    bootstrap->add_option("--workers", config.workers, "Scanner worker threads");

    auto* scan = app.add_subcommand("scan", "Print raw variant matches as JSON lines");
    scan->add_option("--terms", config.terms_path, "Reference term list")->required();
    scan->add_option("--corpus", config.corpus_path, "Lemmatized corpus (.gz accepted)")->required();
    scan->add_option("--grammar", config.grammar_path, "Meta-grammar file (default: built in)");
    add_family_option(scan, config);
    scan->add_option("--workers", config.workers, "Scanner worker threads");

    auto* validate = app.add_subcommand("validate", "Check input files and report their counts");
    validate->add_option("--terms", config.terms_path, "Reference term list");
    validate->add_option("--corpus", config.corpus_path, "Lemmatized corpus (.gz accepted)");
    validate->add_option("--grammar", config.grammar_path, "Meta-grammar file");
    validate->add_option("--conflate", config.conflation_path, "Conflation file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return termnet::kExitDataError;
    }

    if (config.workers < 1) {
        std::cerr << "error: --workers must be >= 1\n";
        return termnet::kExitDataError;
    }

    if (acquire->parsed()) return termnet::cmd_acquire(config, std::cerr);
    if (graph->parsed()) return termnet::cmd_graph(config, std::cerr);
    if (bootstrap->parsed()) return termnet::cmd_bootstrap(config, std::cerr);
    if (scan->parsed()) return termnet::cmd_scan(config, std::cout, std::cerr);
    if (validate->parsed()) return termnet::cmd_validate(config, std::cout, std::cerr);
    return termnet::kExitDataError;
}
