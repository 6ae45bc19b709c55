#pragma once
// Pipeline commands behind the CLI subcommands. Each command loads its
// inputs, runs the corresponding operations and writes artifacts into the
// output directory; progress goes to the error stream, data only to files or
// the output stream. Artifacts are byte-deterministic given identical inputs
// and rng seed, for any worker count.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "termnet/acquisition.hpp"

namespace termnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitIoError = 2;

struct RunConfig {
    std::string terms_path;
    std::string corpus_path;
    std::string grammar_path;     // empty: bundled default grammar
    std::string conflation_path;  // optional
    std::string out_dir;

    FamilySet families = FamilySet::all();
    int min_content_words = 0;
    bool split_head_coord = false;
    std::uint64_t rng_seed = 0;
    std::vector<int> sizes;
    int trials = 1;
    int workers = 1;
};

// Writes candidates.jsonl, links.jsonl and summary.json.
int cmd_acquire(const RunConfig& config, std::ostream& err);

// Reads links.jsonl from a prior acquire run in the same output directory
// and writes coord_classes.{json,dot} and spec_graph.{json,dot}.
int cmd_graph(const RunConfig& config, std::ostream& err);

// Writes bootstrap.csv and bootstrap_meta.json.
int cmd_bootstrap(const RunConfig& config, std::ostream& err);

// Debug view: every variant match of the term list, one JSON record per
// line on `out`.
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses whichever inputs are configured and reports their vital counts.
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace termnet
