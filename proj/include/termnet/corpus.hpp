#pragma once
// Lemmatized corpus: loading, the first-lemma occurrence index, and the
// multi-pattern scanner. A corpus is read-only after load; scanning can
// partition sentences across worker threads and always produces the same
// match sequence regardless of worker count.
//
// Corpus file format: UTF-8, one sentence per line, tokens separated by
// single spaces. Each token is `surface|lemma|TAG`, `surface|lemma` or bare
// `surface` (lemma defaults to the normalized surface). When the TAG column
// is missing the word class comes from the closed-class lexicons
// (conjunctions, prepositions, determiners); all other tokens get Other.
// Files ending in .gz are read gzip-compressed.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "termnet/metagrammar.hpp"
#include "termnet/term.hpp"

namespace termnet {

struct TokenOcc {
    std::string surface;
    Lemma lemma;
    WordClass word_class = WordClass::Other;
    int sentence_id = 0;
    int position = 0;  // token index within the sentence, consecutive from 0
};

// Closed-class lexicons used when POS tags are absent. Configurable; the
// defaults cover English coordination, the common prepositions and
// determiners.
struct ClosedClassLexicons {
    std::unordered_set<std::string> conjunctions = {"and", "or"};
    std::unordered_set<std::string> prepositions = {"of", "for", "in", "on", "with", "by", "to", "from"};
    std::unordered_set<std::string> determiners = {"the", "a", "an", "its", "their"};

    WordClass classify(const Lemma& lemma) const;
};

class Corpus {
public:
    int sentence_count() const { return static_cast<int>(sentences_.size()); }
    int token_count() const { return token_count_; }

    const std::vector<TokenOcc>& sentence(int sentence_id) const { return sentences_[sentence_id]; }
    const std::vector<std::vector<TokenOcc>>& sentences() const { return sentences_; }

    // Positions of every token carrying this lemma, ordered by
    // (sentence_id, position).
    const std::vector<std::pair<int, int>>& occurrences(const Lemma& lemma) const;

private:
    friend Corpus load_corpus(std::istream&, const ClosedClassLexicons&);

    std::vector<std::vector<TokenOcc>> sentences_;
    std::unordered_map<std::string, std::vector<std::pair<int, int>>> index_;
    int token_count_ = 0;
};

// Throws ParseError with the line number on malformed tokens and DataError
// ("empty corpus") when no sentence survives.
Corpus load_corpus(std::istream& in, const ClosedClassLexicons& lexicons = {});
Corpus load_corpus_file(const std::string& path, const ClosedClassLexicons& lexicons = {});

// A corpus occurrence of one variant pattern. Spans are half-open token
// ranges within a single sentence; bindings cover the pattern elements in
// order (an optional determiner that matched nothing binds a zero-width
// span).
struct SlotBinding {
    int element = 0;  // index into pattern.elements
    int start = 0;    // token index
    int length = 0;

    bool operator==(const SlotBinding&) const = default;
};

struct VariantMatch {
    int pattern_index = 0;  // index into the scanned pattern sequence
    int sentence_id = 0;
    int start = 0;
    int end = 0;
    std::vector<SlotBinding> bindings;

    bool operator==(const VariantMatch&) const = default;
};

// All matches of one pattern anchored at `start`; several binding splits of
// the same span count as separate matches.
void match_pattern_at(const VariantPattern& pattern, const std::vector<TokenOcc>& sentence, int start,
                      int pattern_index, std::vector<VariantMatch>& out);

// Every match of every pattern, ordered by (sentence_id, start,
// pattern_index, end, bindings). Patterns opening with a fixed lemma are
// anchored through the occurrence index; patterns opening with a free slot
// fall back to trying every position.
std::vector<VariantMatch> scan(const Corpus& corpus, const std::vector<VariantPattern>& patterns,
                               int workers = 1);

// Ids of the terms that occur at least once, under their base form or any
// compiled variant.
std::unordered_set<TermId> find_present_terms(const Corpus& corpus, const std::vector<Term>& terms,
                                              const std::vector<MetaRule>& rules, int workers = 1);

}  // namespace termnet
