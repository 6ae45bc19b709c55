#include "termnet/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "termnet/conceptnet.hpp"
#include "termnet/corpus.hpp"
#include "termnet/errors.hpp"

namespace termnet {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct LoadedInputs {
    std::vector<MetaRule> rules;
    std::vector<Term> seeds;
    Corpus corpus;
};

LoadedInputs load_inputs(const RunConfig& config, std::ostream& err) {
    LoadedInputs inputs;
    inputs.rules =
        config.grammar_path.empty() ? default_metagrammar() : load_metagrammar_file(config.grammar_path);

    std::vector<std::string> warnings;
    inputs.seeds = load_term_list_file(config.terms_path, &warnings);
    for (const std::string& warning : warnings) err << config.terms_path << ": " << warning << "\n";
    if (inputs.seeds.empty()) throw DataError("term list '" + config.terms_path + "' holds no usable terms");

    inputs.corpus = load_corpus_file(config.corpus_path);
    err << "loaded " << inputs.seeds.size() << " terms, " << inputs.corpus.sentence_count()
        << " sentences (" << inputs.corpus.token_count() << " tokens), " << inputs.rules.size()
        << " meta-rules\n";
    return inputs;
}

void prepare_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) throw IoError("no output directory configured");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    fs::path probe = fs::path(out_dir) / ".write_probe";
    {
        std::ofstream test(probe);
        if (!test) throw IoError("output directory '" + out_dir + "' is not writable");
    }
    fs::remove(probe, ec);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ordered_json link_json(const AcquisitionLink& link, const AcquisitionResult& result, bool with_candidate) {
    ordered_json doc;
    doc["source"] = result.find_term(link.source)->text();
    if (with_candidate) doc["candidate"] = result.find_term(link.candidate)->text();
    doc["family"] = std::string(family_name(link.family));
    doc["rule"] = link.meta_rule;
    doc["sentence"] = link.sentence_id;
    doc["start"] = link.start;
    doc["end"] = link.end;
    if (with_candidate) doc["cycle"] = link.cycle;
    return doc;
}

std::string candidates_jsonl(const AcquisitionResult& result) {
    std::string out;
    for (const CandidateRecord& record : result.candidates) {
        ordered_json doc;
        doc["term"] = record.term.text();
        doc["cycle"] = record.status.cycle;
        doc["status"] = "candidate";
        ordered_json links = ordered_json::array();
        for (const AcquisitionLink& link : result.links)
            if (link.candidate == record.term.id()) links.push_back(link_json(link, result, false));
        doc["links"] = std::move(links);
        out += doc.dump();
        out += '\n';
    }
    return out;
}

std::string links_jsonl(const AcquisitionResult& result) {
    std::string out;
    for (const AcquisitionLink& link : result.links) {
        out += link_json(link, result, true).dump();
        out += '\n';
    }
    return out;
}

std::string families_string(FamilySet families) {
    std::string out;
    for (Family f : {Family::Coordination, Family::Insertion, Family::Permutation}) {
        if (!families.contains(f)) continue;
        if (!out.empty()) out += ',';
        out += family_name(f);
    }
    return out;
}

int run_guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
}

// Rebuilds links and the term table from a links.jsonl document.
std::pair<std::vector<AcquisitionLink>, TermTable> read_links_jsonl(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open links file '" + path.string() + "'; run acquire first");
    std::vector<AcquisitionLink> links;
    TermTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            ordered_json doc = ordered_json::parse(line);
            AcquisitionLink link;
            Term source = parse_term(doc.at("source").get<std::string>());
            Term candidate = parse_term(doc.at("candidate").get<std::string>());
            link.source = source.id();
            link.candidate = candidate.id();
            table.emplace(link.source, std::move(source));
            table.emplace(link.candidate, std::move(candidate));
            link.family = family_from_name(doc.at("family").get<std::string>());
            link.meta_rule = doc.at("rule").get<std::string>();
            link.sentence_id = doc.at("sentence").get<int>();
            link.start = doc.at("start").get<int>();
            link.end = doc.at("end").get<int>();
            link.cycle = doc.at("cycle").get<int>();
            links.push_back(std::move(link));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed link record: ") + e.what(), line_no);
        } catch (const DataError& e) {
            throw ParseError(std::string("malformed link record: ") + e.what(), line_no);
        }
    }
    return {std::move(links), std::move(table)};
}

}  // namespace

int cmd_acquire(const RunConfig& config, std::ostream& err) {
    return run_guarded(err, [&] {
        prepare_out_dir(config.out_dir);
        LoadedInputs inputs = load_inputs(config, err);

        ClosureOptions options;
        options.families = config.families;
        options.min_content_words = config.min_content_words;
        options.workers = config.workers;
        AcquisitionResult result = run_closure(inputs.corpus, inputs.rules, inputs.seeds, options);

        auto present = find_present_terms(inputs.corpus, inputs.seeds, inputs.rules, config.workers);

        ordered_json summary;
        summary["seed_count"] = result.seeds.size();
        summary["present_term_count"] = present.size();
        summary["candidate_count"] = result.candidates.size();
        summary["cycles_run"] = result.cycles_run;
        summary["per_cycle_counts"] = result.per_cycle_counts;
        summary["families"] = families_string(config.families);
        summary["min_content_words"] = config.min_content_words;

        fs::path out(config.out_dir);
        write_file(out / "candidates.jsonl", candidates_jsonl(result));
        write_file(out / "links.jsonl", links_jsonl(result));
        write_file(out / "summary.json", summary.dump(2) + "\n");
        err << "acquired " << result.candidates.size() << " candidates in " << result.cycles_run
            << " cycles (" << result.links.size() << " links)\n";
    });
}

int cmd_graph(const RunConfig& config, std::ostream& err) {
    return run_guarded(err, [&] {
        prepare_out_dir(config.out_dir);
        auto [links, table] = read_links_jsonl(fs::path(config.out_dir) / "links.jsonl");

        std::vector<MetaRule> grammar =
            config.grammar_path.empty() ? default_metagrammar() : load_metagrammar_file(config.grammar_path);

        ClassingOptions options;
        options.include_head_coordinations = !config.split_head_coord;
        options.grammar = &grammar;
        if (!config.conflation_path.empty())
            options.conflations = load_conflations_file(config.conflation_path);

        std::vector<TermId> universe;
        for (const AcquisitionLink& link : links) {
            universe.push_back(link.source);
            universe.push_back(link.candidate);
        }

        std::vector<CoordClass> classes = build_coord_classes(links, universe, table, options);
        SpecGraph graph = build_spec_graph(links, classes, table);

        fs::path out(config.out_dir);
        write_file(out / "coord_classes.json", export_classes(classes, links, table, ExportFormat::Json));
        write_file(out / "coord_classes.dot", export_classes(classes, links, table, ExportFormat::Dot));
        write_file(out / "spec_graph.json", export_spec_graph(graph, table, ExportFormat::Json));
        write_file(out / "spec_graph.dot", export_spec_graph(graph, table, ExportFormat::Dot));
        err << "built " << classes.size() << " coordination classes, " << graph.edges.size()
            << " specialization edges\n";
    });
}

int cmd_bootstrap(const RunConfig& config, std::ostream& err) {
    return run_guarded(err, [&] {
        prepare_out_dir(config.out_dir);
        LoadedInputs inputs = load_inputs(config, err);

        ClosureOptions options;
        options.families = config.families;
        options.min_content_words = config.min_content_words;
        options.workers = config.workers;
        std::vector<BootstrapRow> rows = bootstrap_experiment(inputs.corpus, inputs.rules, inputs.seeds,
                                                              config.sizes, config.trials, config.rng_seed,
                                                              options);

        std::string csv = "size,trial,acquired\n";
        for (const BootstrapRow& row : rows) {
            csv += std::to_string(row.size) + "," + std::to_string(row.trial) + "," +
                   std::to_string(row.acquired) + "\n";
        }

        ordered_json meta;
        meta["rng"] = kBootstrapRng;
        meta["sampler"] = kBootstrapSampler;
        meta["rng_seed"] = config.rng_seed;
        meta["sizes"] = config.sizes;
        meta["trials"] = config.trials;
        meta["seed_count"] = inputs.seeds.size();

        fs::path out(config.out_dir);
        write_file(out / "bootstrap.csv", csv);
        write_file(out / "bootstrap_meta.json", meta.dump(2) + "\n");
        err << "bootstrap: " << rows.size() << " runs written\n";
    });
}

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        LoadedInputs inputs = load_inputs(config, err);

        std::vector<MetaRule> selected;
        for (const MetaRule& rule : inputs.rules)
            if (config.families.contains(rule.family)) selected.push_back(rule);

        std::vector<VariantPattern> patterns;
        std::vector<const Term*> owners;
        for (const Term& term : inputs.seeds) {
            for (VariantPattern& pattern : compile_variant_patterns(term, selected)) {
                patterns.push_back(std::move(pattern));
                owners.push_back(&term);
            }
        }
        for (const VariantMatch& match : scan(inputs.corpus, patterns, config.workers)) {
            const VariantPattern& pattern = patterns[match.pattern_index];
            ordered_json doc;
            doc["term"] = owners[match.pattern_index]->text();
            doc["rule"] = pattern.meta_rule;
            doc["family"] = std::string(family_name(pattern.rule->family));
            doc["sentence"] = match.sentence_id;
            doc["start"] = match.start;
            doc["end"] = match.end;
            out << doc.dump() << "\n";
        }
    });
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        if (config.terms_path.empty() && config.corpus_path.empty() && config.grammar_path.empty() &&
            config.conflation_path.empty())
            throw DataError("nothing to validate; pass --terms, --corpus, --grammar or --conflate");

        if (!config.grammar_path.empty()) {
            auto rules = load_metagrammar_file(config.grammar_path);
            out << "grammar: " << rules.size() << " rules\n";
        }
        if (!config.terms_path.empty()) {
            std::vector<std::string> warnings;
            auto terms = load_term_list_file(config.terms_path, &warnings);
            for (const std::string& warning : warnings) err << config.terms_path << ": " << warning << "\n";
            out << "terms: " << terms.size() << " usable, " << warnings.size() << " skipped\n";
        }
        if (!config.corpus_path.empty()) {
            Corpus corpus = load_corpus_file(config.corpus_path);
            out << "corpus: " << corpus.sentence_count() << " sentences, " << corpus.token_count()
                << " tokens\n";
        }
        if (!config.conflation_path.empty()) {
            auto pairs = load_conflations_file(config.conflation_path);
            out << "conflations: " << pairs.size() << " pairs\n";
        }
    });
}

}  // namespace termnet
