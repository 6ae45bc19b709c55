#pragma once
// Candidate-term acquisition: extraction from variant matches, the
// incremental closure loop, and the bootstrap-degradation experiment.
//
// Candidates are acquired from the previous cycle's new terms until an
// iteration yields nothing; the result is the closure of the seed set under
// the acquisition relation. New candidates are stored with neutral word
// classes (head Noun, the rest Other) so a term's downstream behavior
// depends only on its lemma sequence, whatever route discovered it.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "termnet/corpus.hpp"
#include "termnet/errors.hpp"
#include "termnet/metagrammar.hpp"
#include "termnet/term.hpp"

namespace termnet {

class SizeTooLarge : public DataError {
public:
    using DataError::DataError;
};

// Subset of variant families participating in a run.
class FamilySet {
public:
    static FamilySet all() {
        FamilySet set;
        set.add(Family::Coordination);
        set.add(Family::Insertion);
        set.add(Family::Permutation);
        return set;
    }

    void add(Family f) { bits_ |= bit(f); }
    bool contains(Family f) const { return bits_ & bit(f); }
    bool empty() const { return bits_ == 0; }

    bool operator==(const FamilySet&) const = default;

private:
    static std::uint8_t bit(Family f) { return static_cast<std::uint8_t>(1u << static_cast<int>(f)); }
    std::uint8_t bits_ = 0;
};

// Parses "coor,ins,perm" and any non-empty subset thereof.
FamilySet parse_family_set(std::string_view text);

// A directed acquisition edge: `candidate` was extracted from a variant of
// `source` at the given corpus location, during iteration `cycle`.
struct AcquisitionLink {
    TermId source = 0;
    TermId candidate = 0;
    Family family = Family::Coordination;
    std::string meta_rule;
    int sentence_id = 0;
    int start = 0;
    int end = 0;
    int cycle = 0;

    bool operator==(const AcquisitionLink&) const = default;
};

struct ClosureOptions {
    FamilySet families = FamilySet::all();
    // When >= 2, new candidates with fewer committed content words (nouns,
    // adjectives) are dropped. Off by default: partial terms are kept.
    int min_content_words = 0;
    int workers = 1;
};

// Applies the pattern's extraction template to the bound tokens. Returns
// nothing (an unproductive variant) when an extracted token is not a content
// word, when the head token cannot be a noun, or when the result equals the
// source term. Productive results carry the observed token classes, with the
// head coerced to Noun.
std::optional<Term> extract_candidate(const VariantMatch& match, const VariantPattern& pattern,
                                      const Corpus& corpus);

// The neutral-class form candidates are stored under: head Noun, every other
// word Other. Makes a candidate's behavior as a later source a function of
// its lemma sequence alone, whatever route discovered it.
Term canonical_candidate(const Term& term);

struct CycleResult {
    std::vector<Term> new_candidates;     // deduplicated, sorted by text
    std::vector<AcquisitionLink> links;   // every productive extraction, also
                                          // those reaching already-known terms
};

// One acquisition iteration: compiles patterns for `active` only, scans, and
// extracts. `active` must be a subset of `known`.
CycleResult run_cycle(const Corpus& corpus, const std::vector<MetaRule>& rules,
                      const std::vector<Term>& active, const std::unordered_set<TermId>& known,
                      const ClosureOptions& options = {}, int cycle = 1);

struct CandidateRecord {
    Term term;
    TermStatus status;
};

struct AcquisitionResult {
    std::vector<Term> seeds;                  // deduplicated input order
    std::vector<CandidateRecord> candidates;  // sorted by (cycle, text)
    std::vector<AcquisitionLink> links;       // sorted by (cycle, source, candidate, ...)
    int cycles_run = 0;                       // iterations run; the last one yields nothing
    std::vector<int> per_cycle_counts;        // new candidates per iteration, final entry 0
    std::unordered_map<TermId, Term> term_table;  // seeds + candidates

    const Term* find_term(TermId id) const;
};

// Iterates run_cycle until a cycle yields no new candidate. Throws DataError
// on empty seeds or an empty family set.
AcquisitionResult run_closure(const Corpus& corpus, const std::vector<MetaRule>& rules,
                              const std::vector<Term>& seeds, const ClosureOptions& options = {});

struct BootstrapRow {
    int size = 0;
    int trial = 0;   // 1-based
    int acquired = 0;
};

// Identifiers of the sampling scheme, recorded in experiment metadata so runs
// can be reproduced by other implementations.
inline constexpr const char* kBootstrapRng = "mt19937_64";
inline constexpr const char* kBootstrapSampler = "fisher-yates-rejection";

// For every (size, trial), samples a uniform seed subset (deterministic in
// rng_seed) and records the closure's acquisition volume. Throws SizeTooLarge
// when a size is zero or exceeds the seed count.
std::vector<BootstrapRow> bootstrap_experiment(const Corpus& corpus, const std::vector<MetaRule>& rules,
                                               const std::vector<Term>& full_seeds,
                                               const std::vector<int>& sizes, int trials,
                                               std::uint64_t rng_seed, const ClosureOptions& options = {});

}  // namespace termnet
