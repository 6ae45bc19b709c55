#include "termnet/acquisition.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "termnet/errors.hpp"

namespace termnet {

FamilySet parse_family_set(std::string_view text) {
    FamilySet set;
    size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find(',', start);
        std::string_view piece =
            pos == std::string_view::npos ? text.substr(start) : text.substr(start, pos - start);
        if (!piece.empty()) set.add(family_from_name(piece));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (set.empty()) throw DataError("no variant families selected");
    return set;
}

namespace {

bool is_content_class(WordClass wc) {
    return wc == WordClass::Noun || wc == WordClass::Adjective || wc == WordClass::Other;
}

std::vector<MetaRule> rules_for_families(const std::vector<MetaRule>& rules, FamilySet families) {
    std::vector<MetaRule> selected;
    for (const MetaRule& rule : rules)
        if (families.contains(rule.family)) selected.push_back(rule);
    return selected;
}

int committed_content_words(const Term& term) {
    int n = 0;
    for (const TermWord& w : term.words())
        if (w.word_class == WordClass::Noun || w.word_class == WordClass::Adjective) ++n;
    return n;
}

}  // namespace

std::optional<Term> extract_candidate(const VariantMatch& match, const VariantPattern& pattern,
                                      const Corpus& corpus) {
    if (pattern.is_base()) return std::nullopt;
    const std::vector<TokenOcc>& sentence = corpus.sentence(match.sentence_id);

    std::vector<const TokenOcc*> extracted;
    for (int ref : pattern.rule->extraction) {
        const SlotBinding* binding = nullptr;
        for (const SlotBinding& b : match.bindings)
            if (b.element == ref) binding = &b;
        if (!binding) return std::nullopt;
        for (int k = 0; k < binding->length; ++k) extracted.push_back(&sentence[binding->start + k]);
    }
    if (extracted.size() < 2 || extracted.size() > 3) return std::nullopt;

    for (const TokenOcc* token : extracted)
        if (!is_content_class(token->word_class)) return std::nullopt;
    WordClass head_class = extracted.back()->word_class;
    if (head_class != WordClass::Noun && head_class != WordClass::Other) return std::nullopt;

    std::vector<TermWord> words;
    words.reserve(extracted.size());
    for (size_t i = 0; i < extracted.size(); ++i) {
        WordClass wc = (i + 1 == extracted.size()) ? WordClass::Noun : extracted[i]->word_class;
        words.push_back(TermWord{extracted[i]->lemma, wc});
    }
    Term candidate{std::move(words)};
    if (candidate.id() == pattern.source_term) return std::nullopt;
    return candidate;
}

Term canonical_candidate(const Term& term) {
    std::vector<TermWord> words;
    words.reserve(term.size());
    for (size_t i = 0; i < term.size(); ++i) {
        WordClass wc = (i + 1 == term.size()) ? WordClass::Noun : WordClass::Other;
        words.push_back(TermWord{term.word(i).lemma, wc});
    }
    return Term{std::move(words)};
}

CycleResult run_cycle(const Corpus& corpus, const std::vector<MetaRule>& rules,
                      const std::vector<Term>& active, const std::unordered_set<TermId>& known,
                      const ClosureOptions& options, int cycle) {
    std::vector<MetaRule> selected = rules_for_families(rules, options.families);
    std::vector<VariantPattern> patterns;
    for (const Term& term : active)
        for (VariantPattern& pattern : compile_variant_patterns(term, selected))
            patterns.push_back(std::move(pattern));

    CycleResult result;
    if (patterns.empty()) return result;

    std::unordered_set<TermId> new_ids;
    std::vector<AcquisitionLink> links;
    for (const VariantMatch& match : scan(corpus, patterns, options.workers)) {
        const VariantPattern& pattern = patterns[match.pattern_index];
        std::optional<Term> candidate = extract_candidate(match, pattern, corpus);
        if (!candidate) continue;

        bool is_known = known.count(candidate->id()) > 0 || new_ids.count(candidate->id()) > 0;
        if (!is_known) {
            if (options.min_content_words >= 2 &&
                committed_content_words(*candidate) < options.min_content_words)
                continue;
            new_ids.insert(candidate->id());
            result.new_candidates.push_back(canonical_candidate(*candidate));
        }
        links.push_back(AcquisitionLink{pattern.source_term, candidate->id(), pattern.rule->family,
                                        pattern.meta_rule, match.sentence_id, match.start, match.end,
                                        cycle});
    }

    std::sort(result.new_candidates.begin(), result.new_candidates.end(),
              [](const Term& a, const Term& b) { return a.text() < b.text(); });
    std::sort(links.begin(), links.end(), [](const AcquisitionLink& a, const AcquisitionLink& b) {
        return std::tie(a.source, a.candidate, a.meta_rule, a.sentence_id, a.start, a.end) <
               std::tie(b.source, b.candidate, b.meta_rule, b.sentence_id, b.start, b.end);
    });
    links.erase(std::unique(links.begin(), links.end()), links.end());
    result.links = std::move(links);
    return result;
}

const Term* AcquisitionResult::find_term(TermId id) const {
    auto it = term_table.find(id);
    return it == term_table.end() ? nullptr : &it->second;
}

AcquisitionResult run_closure(const Corpus& corpus, const std::vector<MetaRule>& rules,
                              const std::vector<Term>& seeds, const ClosureOptions& options) {
    if (seeds.empty()) throw DataError("no seed terms");
    if (options.families.empty()) throw DataError("no variant families selected");

    AcquisitionResult result;
    std::unordered_set<TermId> known;
    for (const Term& seed : seeds) {
        if (known.insert(seed.id()).second) {
            result.seeds.push_back(seed);
            result.term_table.emplace(seed.id(), seed);
        }
    }

    std::vector<Term> active = result.seeds;
    for (int cycle = 1;; ++cycle) {
        CycleResult step = run_cycle(corpus, rules, active, known, options, cycle);
        result.links.insert(result.links.end(), step.links.begin(), step.links.end());
        result.per_cycle_counts.push_back(static_cast<int>(step.new_candidates.size()));
        if (step.new_candidates.empty()) {
            result.cycles_run = cycle;
            break;
        }
        for (const Term& term : step.new_candidates) {
            known.insert(term.id());
            result.term_table.emplace(term.id(), term);
            result.candidates.push_back(CandidateRecord{term, TermStatus{TermStatus::Kind::Candidate, cycle}});
        }
        active = std::move(step.new_candidates);
    }

    // Candidates are already in (cycle, text) order; links need a global
    // sort because per-cycle sorting is keyed on ids.
    std::sort(result.links.begin(), result.links.end(),
              [&result](const AcquisitionLink& a, const AcquisitionLink& b) {
                  if (a.cycle != b.cycle) return a.cycle < b.cycle;
                  const Term* as = result.find_term(a.source);
                  const Term* bs = result.find_term(b.source);
                  if (as->text() != bs->text()) return as->text() < bs->text();
                  const Term* ac = result.find_term(a.candidate);
                  const Term* bc = result.find_term(b.candidate);
                  if (ac->text() != bc->text()) return ac->text() < bc->text();
                  return std::tie(a.meta_rule, a.sentence_id, a.start, a.end) <
                         std::tie(b.meta_rule, b.sentence_id, b.start, b.end);
              });
    return result;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Unbiased draw from [0, bound) via rejection; avoids the
// implementation-defined std::uniform_int_distribution.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace

std::vector<BootstrapRow> bootstrap_experiment(const Corpus& corpus, const std::vector<MetaRule>& rules,
                                               const std::vector<Term>& full_seeds,
                                               const std::vector<int>& sizes, int trials,
                                               std::uint64_t rng_seed, const ClosureOptions& options) {
    if (trials < 1) throw DataError("trials must be >= 1");
    std::vector<Term> base = full_seeds;
    std::sort(base.begin(), base.end(), [](const Term& a, const Term& b) { return a.text() < b.text(); });
    base.erase(std::unique(base.begin(), base.end()), base.end());

    for (int size : sizes) {
        if (size < 1 || size > static_cast<int>(base.size()))
            throw SizeTooLarge("bootstrap size " + std::to_string(size) + " outside 1.." +
                               std::to_string(base.size()));
    }

    std::vector<BootstrapRow> rows;
    rows.reserve(sizes.size() * static_cast<size_t>(trials));
    for (int size : sizes) {
        for (int trial = 1; trial <= trials; ++trial) {
            std::uint64_t stream = splitmix64(splitmix64(rng_seed ^ static_cast<std::uint64_t>(size)) ^
                                              static_cast<std::uint64_t>(trial));
            std::mt19937_64 rng(stream);
            // Partial Fisher-Yates: the first `size` entries become the sample.
            std::vector<Term> pool = base;
            for (int i = 0; i < size; ++i) {
                auto j = i + static_cast<int>(bounded_uniform(rng, pool.size() - static_cast<size_t>(i)));
                std::swap(pool[i], pool[j]);
            }
            pool.erase(pool.begin() + size, pool.end());
            AcquisitionResult closure = run_closure(corpus, rules, pool, options);
            rows.push_back(BootstrapRow{size, trial, static_cast<int>(closure.candidates.size())});
        }
    }
    return rows;
}

}  // namespace termnet
