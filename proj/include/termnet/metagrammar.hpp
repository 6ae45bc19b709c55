#pragma once
// Meta-rule DSL and pattern compilation. A meta-rule describes one variant
// shape of a 2- or 3-word term (coordination, insertion or permutation) plus
// the sub-span that becomes the candidate term. Compiling a term against a
// rule substitutes the term's words into the template, producing a concrete
// pattern the scanner can match against a sentence.
//
// Grammar file format (UTF-8, line oriented, `#` comments):
//
//   rule <name> family=<coor|ins|perm> arity=<2|3> pattern=<elems> extract=<refs>
//
// where <elems> is a comma-separated list over
//   T0,T1,T2    words of the source term
//   W[a-b:CLS]  a..b free words whose class is in CLS (tag letters, e.g. NAX)
//   C           a coordinating conjunction
//   P           a preposition
//   D?          an optional determiner
// and <refs> lists the 0-based pattern positions forming the candidate.
//
// Example: rule coor2_arg family=coor arity=2 pattern=T0,W[1-1:NAX],C,T1 extract=0,1

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "termnet/term.hpp"

namespace termnet {

enum class Family : std::uint8_t { Coordination, Insertion, Permutation };

Family family_from_name(std::string_view name);  // "coor" | "ins" | "perm"
std::string_view family_name(Family family);

// Set of word classes, one bit per WordClass value.
class ClassSet {
public:
    ClassSet() = default;

    void add(WordClass wc) { bits_ |= bit(wc); }
    bool contains(WordClass wc) const { return bits_ & bit(wc); }
    bool empty() const { return bits_ == 0; }

    bool operator==(const ClassSet&) const = default;

private:
    static std::uint16_t bit(WordClass wc) { return static_cast<std::uint16_t>(1u << static_cast<int>(wc)); }
    std::uint16_t bits_ = 0;
};

// One element of a meta-rule template.
struct SlotSpec {
    enum class Kind : std::uint8_t {
        TermWord,  // a word of the source term, by index
        Wild,      // min..max free words constrained by a class set
        Conj,      // one coordinating conjunction
        Prep,      // one preposition
        OptDet,    // zero or one determiner
    };

    Kind kind = Kind::Wild;
    int term_index = 0;  // TermWord only
    ClassSet classes;    // Wild only
    int min_count = 1;
    int max_count = 1;

    int min_width() const { return kind == Kind::OptDet ? 0 : (kind == Kind::Wild ? min_count : 1); }
    int max_width() const { return kind == Kind::Wild ? max_count : 1; }
};

struct MetaRule {
    std::string name;
    Family family = Family::Coordination;
    int arity = 2;
    std::vector<SlotSpec> pattern;
    std::vector<int> extraction;  // indices into pattern

    // A coordination rule whose candidate takes its head from the free slot
    // coordinates the heads of the two terms; one whose candidate keeps the
    // source head coordinates the arguments.
    bool head_coordination() const;

    int max_match_width() const;
};

// Parses and validates a meta-grammar document. Throws ParseError with the
// line number on syntax errors and ValidationError on structural ones
// (duplicate names, missing term words, wrong conjunction/preposition slot
// counts, extraction out of 2..3 words or not ending on a noun-compatible
// slot, pattern wider than arity + 3).
std::vector<MetaRule> load_metagrammar(std::istream& in);
std::vector<MetaRule> load_metagrammar(const std::string& text);
std::vector<MetaRule> load_metagrammar_file(const std::string& path);

// The bundled 12-rule grammar: per arity, argument- and head-keeping
// coordination, one- and two-word insertion, and permutation with a bare or
// determiner-introduced prepositional phrase.
const std::string& default_metagrammar_text();
const std::vector<MetaRule>& default_metagrammar();

// A concrete matchable pattern: the source term's words substituted into a
// meta-rule template (or laid out verbatim for the base pattern).
struct PatternElement {
    enum class Kind : std::uint8_t { FixedLemma, OpenSlot };

    Kind kind = Kind::FixedLemma;
    Lemma lemma;                     // FixedLemma only
    WordClass word_class = WordClass::Other;  // FixedLemma only
    SlotSpec slot;                   // OpenSlot only
};

struct VariantPattern {
    TermId source_term = 0;
    std::string meta_rule;           // empty for base patterns
    const MetaRule* rule = nullptr;  // borrowed from the grammar it was compiled
                                     // against; null for base patterns
    std::vector<PatternElement> elements;

    bool is_base() const { return rule == nullptr; }
    int max_match_width() const;
    int min_match_width() const;
};

// One pattern per rule whose arity matches the term length, in rule order.
// Pure: identical inputs yield identical patterns.
std::vector<VariantPattern> compile_variant_patterns(const Term& term, const std::vector<MetaRule>& rules);

// Exact contiguous occurrence of the term's lemma sequence.
VariantPattern base_pattern(const Term& term);

}  // namespace termnet
