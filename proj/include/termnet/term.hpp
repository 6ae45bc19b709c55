#pragma once
// Core domain types: lemmas, word classes, terms. All types here are
// immutable after construction and safe to share across threads.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace termnet {

// Canonical dictionary form of a word. Always lowercase, NFC-composed,
// non-empty, and free of whitespace and control characters.
class Lemma {
public:
    Lemma() = default;

    const std::string& text() const { return text_; }

    bool operator==(const Lemma& other) const = default;
    bool operator<(const Lemma& other) const { return text_ < other.text_; }

private:
    friend Lemma normalize_lemma(std::string_view raw);
    explicit Lemma(std::string text) : text_(std::move(text)) {}

    std::string text_;
};

// Lowercases, trims and NFC-composes a raw token. Idempotent.
// Throws DataError ("empty lemma") when the input trims to nothing, and on
// internal whitespace or control characters.
Lemma normalize_lemma(std::string_view raw);

enum class WordClass : std::uint8_t {
    Noun,
    Adjective,
    Verb,
    Preposition,
    Conjunction,
    Determiner,
    Pronoun,
    Other,  // unknown or untagged; class constraints degrade to lemma equality
};

// Tag letters used by the term-list and corpus formats: N A V P C D PRO X.
WordClass word_class_from_tag(std::string_view tag);
std::string_view word_class_tag(WordClass wc);

// True when the two classes are compatible for matching: equal, or either
// side is Other.
bool classes_compatible(WordClass a, WordClass b);

struct TermWord {
    Lemma lemma;
    WordClass word_class = WordClass::Other;

    bool operator==(const TermWord&) const = default;
};

using TermId = std::uint64_t;

// An ordered sequence of 2 or 3 lemmas with word-class annotations; the
// rightmost word is the head and must be a noun. Identity is a content hash
// of the lemma sequence alone, so equal lemma sequences share one id no
// matter where they were ingested or which classes they carry.
class Term {
public:
    // Throws DataError on bad arity or a non-noun head (Other heads are
    // coerced to Noun, matching the untagged-input default).
    explicit Term(std::vector<TermWord> words);

    const std::vector<TermWord>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    const TermWord& word(std::size_t i) const { return words_[i]; }
    const TermWord& head() const { return words_.back(); }

    TermId id() const { return id_; }

    // Bare lemma sequence, space separated ("serum albumin").
    std::string text() const;
    // Tagged form that round-trips through parse_term ("serum/N albumin/N").
    std::string render() const;

    bool operator==(const Term& other) const { return id_ == other.id_; }

private:
    std::vector<TermWord> words_;
    TermId id_ = 0;
};

// Content hash of a lemma sequence; deterministic across runs and platforms.
TermId term_id_of(const std::vector<Lemma>& lemmas);

// Parses one term-list line: whitespace-separated `lemma` or `lemma/TAG`
// tokens. Untagged words default to Other except the head, which defaults to
// Noun. Errors: "bad arity" outside 2..3 words, "bad head" when an explicit
// head tag is not N, "bad token" on malformed tokens.
Term parse_term(std::string_view line);

// Whether a term was given as input (Reference, cycle 0) or discovered at
// acquisition cycle >= 1 (Candidate).
struct TermStatus {
    enum class Kind : std::uint8_t { Reference, Candidate };

    Kind kind = Kind::Reference;
    int cycle = 0;

    bool operator==(const TermStatus&) const = default;
};

// Reads a reference-list file: one term per line, `#` comments and blank
// lines ignored. Lines with fewer than 2 or more than 3 words are skipped
// with a warning on `warnings` (when non-null); other parse failures throw
// ParseError with the line number. Duplicate lemma sequences keep the first
// occurrence.
std::vector<Term> load_term_list(std::istream& in, std::vector<std::string>* warnings = nullptr);
std::vector<Term> load_term_list_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

}  // namespace termnet
