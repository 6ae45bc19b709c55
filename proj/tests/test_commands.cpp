#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "support/oracles.hpp"
#include "termnet/commands.hpp"
#include "termnet/conceptnet.hpp"

using namespace termnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("termnet_cmd_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunConfig demo_config(const fs::path& out_dir) {
    RunConfig config;
    config.terms_path = std::string(TERMNET_DEMO_DIR) + "/terms.txt";
    config.corpus_path = std::string(TERMNET_DEMO_DIR) + "/corpus.txt";
    config.out_dir = out_dir.string();
    return config;
}

int run_binary(const std::string& args) {
    std::string command = std::string(TERMNET_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("acquire writes the oracle-exact candidate list for the demo data") {
    fs::path out = fresh_dir("acquire");
    std::ostringstream err;
    REQUIRE(cmd_acquire(demo_config(out), err) == kExitOk);

    // Expected candidates from the full-rescan oracle over the same inputs.
    std::vector<Term> seeds = load_term_list_file(std::string(TERMNET_DEMO_DIR) + "/terms.txt");
    Corpus corpus = load_corpus_file(std::string(TERMNET_DEMO_DIR) + "/corpus.txt");
    testsupport::OracleClosure oracle = testsupport::oracle_closure(corpus, default_metagrammar(), seeds);

    std::map<std::string, int> written;
    std::istringstream lines(slurp(out / "candidates.jsonl"));
    std::string line;
    int previous_cycle = 0;
    std::string previous_term;
    while (std::getline(lines, line)) {
        auto doc = nlohmann::json::parse(line);
        written.emplace(doc.at("term").get<std::string>(), doc.at("cycle").get<int>());
        CHECK(doc.at("status") == "candidate");
        CHECK_FALSE(doc.at("links").empty());
        // Sorted by (cycle, term).
        int cycle = doc.at("cycle").get<int>();
        std::string term = doc.at("term").get<std::string>();
        CHECK(std::tie(previous_cycle, previous_term) <= std::tie(cycle, term));
        previous_cycle = cycle;
        previous_term = term;
    }
    CHECK(written == oracle.candidate_cycles);

    auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(summary.at("seed_count").get<size_t>() == seeds.size());
    CHECK(summary.at("candidate_count").get<size_t>() == written.size());
    CHECK(summary.at("cycles_run").get<int>() == oracle.cycles_run);
    int sum = 0;
    for (int n : summary.at("per_cycle_counts").get<std::vector<int>>()) sum += n;
    CHECK(sum == static_cast<int>(written.size()));
    CHECK(summary.at("present_term_count").get<size_t>() == seeds.size());
}

TEST_CASE("acquire with no yield still writes an empty candidates file") {
    fs::path out = fresh_dir("acquire_empty");
    fs::path terms = out / "terms.txt";
    std::ofstream(terms) << "unknown/A compound/N\n";
    RunConfig config = demo_config(out);
    config.terms_path = terms.string();
    std::ostringstream err;
    REQUIRE(cmd_acquire(config, err) == kExitOk);
    CHECK(slurp(out / "candidates.jsonl").empty());
}

TEST_CASE("acquire distinguishes I/O errors from data errors") {
    fs::path out = fresh_dir("acquire_err");
    RunConfig config = demo_config(out);
    config.corpus_path = (out / "nowhere.txt").string();
    std::ostringstream err;
    CHECK(cmd_acquire(config, err) == kExitIoError);
    CHECK(err.str().find("nowhere.txt") != std::string::npos);

    fs::path broken = out / "broken.txt";
    std::ofstream(broken) << "fine|fine|N\nbad|bad|QQ\n";
    config.corpus_path = broken.string();
    std::ostringstream err2;
    CHECK(cmd_acquire(config, err2) == kExitDataError);
}

TEST_CASE("graph artifacts match the classing oracle, conflation merges classes") {
    fs::path out = fresh_dir("graph");
    std::ostringstream err;
    REQUIRE(cmd_acquire(demo_config(out), err) == kExitOk);
    REQUIRE(cmd_graph(demo_config(out), err) == kExitOk);

    // Partition oracle over the written links.
    std::vector<std::pair<std::string, std::string>> coordination_edges;
    std::vector<std::string> incident;
    std::istringstream lines(slurp(out / "links.jsonl"));
    std::string line;
    while (std::getline(lines, line)) {
        auto doc = nlohmann::json::parse(line);
        incident.push_back(doc.at("source").get<std::string>());
        incident.push_back(doc.at("candidate").get<std::string>());
        if (doc.at("family") == "coor")
            coordination_edges.emplace_back(doc.at("source").get<std::string>(),
                                            doc.at("candidate").get<std::string>());
    }

    TermTable table;
    std::vector<CoordClass> classes = import_classes_json(slurp(out / "coord_classes.json"), table);
    std::set<std::set<std::string>> written;
    for (const CoordClass& cls : classes) {
        std::set<std::string> members;
        for (TermId id : cls.members) members.insert(table.at(id).text());
        written.insert(std::move(members));
    }
    CHECK(written == testsupport::oracle_partition(incident, coordination_edges));

    // Conflating two classes drops the class count by one.
    RunConfig conflated = demo_config(out);
    conflated.conflation_path = std::string(TERMNET_DEMO_DIR) + "/conflation.txt";
    fs::path out2 = fresh_dir("graph_conflated");
    fs::copy(out / "links.jsonl", out2 / "links.jsonl");
    conflated.out_dir = out2.string();
    REQUIRE(cmd_graph(conflated, err) == kExitOk);
    TermTable table2;
    std::vector<CoordClass> merged = import_classes_json(slurp(out2 / "coord_classes.json"), table2);
    CHECK(merged.size() == classes.size() - 1);
}

TEST_CASE("graph without a prior acquire run fails with the I/O exit code") {
    fs::path out = fresh_dir("graph_missing");
    std::ostringstream err;
    CHECK(cmd_graph(demo_config(out), err) == kExitIoError);
}

TEST_CASE("graph rejects a malformed links file") {
    fs::path out = fresh_dir("graph_bad");
    std::ofstream(out / "links.jsonl") << "{\"source\": \"only half a record\"}\n";
    std::ostringstream err;
    CHECK(cmd_graph(demo_config(out), err) == kExitDataError);
}

TEST_CASE("bootstrap at full size agrees with acquire, reruns are byte-identical") {
    fs::path out = fresh_dir("bootstrap");
    std::ostringstream err;
    REQUIRE(cmd_acquire(demo_config(out), err) == kExitOk);
    auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    int full_count = summary.at("candidate_count").get<int>();
    int seed_count = summary.at("seed_count").get<int>();

    RunConfig config = demo_config(out);
    config.sizes = {seed_count};
    config.trials = 2;
    config.rng_seed = 17;
    REQUIRE(cmd_bootstrap(config, err) == kExitOk);
    std::string csv = slurp(out / "bootstrap.csv");
    std::istringstream rows(csv);
    std::string row;
    std::getline(rows, row);
    CHECK(row == "size,trial,acquired");
    while (std::getline(rows, row)) {
        auto last_comma = row.rfind(',');
        CHECK(std::stoi(row.substr(last_comma + 1)) == full_count);
    }

    fs::path again = fresh_dir("bootstrap_again");
    config.out_dir = again.string();
    REQUIRE(cmd_bootstrap(config, err) == kExitOk);
    CHECK(slurp(again / "bootstrap.csv") == csv);
    CHECK(slurp(again / "bootstrap_meta.json") == slurp(out / "bootstrap_meta.json"));
}

TEST_CASE("bootstrap surfaces out-of-range sizes as a data error") {
    fs::path out = fresh_dir("bootstrap_bad");
    RunConfig config = demo_config(out);
    config.sizes = {1000};
    std::ostringstream err;
    CHECK(cmd_bootstrap(config, err) == kExitDataError);
}

TEST_CASE("worker count never changes the artifacts") {
    std::ostringstream err;
    fs::path serial = fresh_dir("workers1");
    RunConfig config = demo_config(serial);
    config.workers = 1;
    REQUIRE(cmd_acquire(config, err) == kExitOk);

    fs::path parallel = fresh_dir("workers8");
    config.out_dir = parallel.string();
    config.workers = 8;
    REQUIRE(cmd_acquire(config, err) == kExitOk);

    for (const char* name : {"candidates.jsonl", "links.jsonl", "summary.json"})
        CHECK(slurp(serial / name) == slurp(parallel / name));
}

TEST_CASE("scan prints one JSON record per match") {
    RunConfig config = demo_config(fresh_dir("scan"));
    std::ostringstream out, err;
    REQUIRE(cmd_scan(config, out, err) == kExitOk);
    std::istringstream lines(out.str());
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        auto doc = nlohmann::json::parse(line);
        CHECK(doc.contains("term"));
        CHECK(doc.contains("rule"));
        CHECK(doc.contains("sentence"));
        ++n;
    }
    CHECK(n > 0);
}

TEST_CASE("validate reports counts for every configured input") {
    RunConfig config;
    config.terms_path = std::string(TERMNET_DEMO_DIR) + "/terms.txt";
    config.corpus_path = std::string(TERMNET_DEMO_DIR) + "/corpus.txt";
    config.grammar_path = std::string(TERMNET_DEMO_DIR) + "/grammar.mg";
    config.conflation_path = std::string(TERMNET_DEMO_DIR) + "/conflation.txt";
    std::ostringstream out, err;
    REQUIRE(cmd_validate(config, out, err) == kExitOk);
    CHECK(out.str().find("grammar: 12 rules") != std::string::npos);
    CHECK(out.str().find("terms: 16 usable") != std::string::npos);
    CHECK(out.str().find("corpus: 28 sentences") != std::string::npos);
    CHECK(out.str().find("conflations: 1 pairs") != std::string::npos);
}

TEST_CASE("the binary maps errors to the documented exit codes") {
    CHECK(run_binary("acquire --terms " + std::string(TERMNET_DEMO_DIR) +
                     "/terms.txt --corpus /no/such/file --out /tmp/termnet_bin_out") == kExitIoError);
    CHECK(run_binary("validate") == kExitDataError);
    CHECK(run_binary("--help") == 0);
    CHECK(run_binary("acquire --no-such-flag") == kExitDataError);
    CHECK(run_binary("validate --grammar " + std::string(TERMNET_DEMO_DIR) + "/grammar.mg") == 0);
}
