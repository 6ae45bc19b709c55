#include "termnet/metagrammar.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "termnet/errors.hpp"

namespace termnet {

Family family_from_name(std::string_view name) {
    if (name == "coor") return Family::Coordination;
    if (name == "ins") return Family::Insertion;
    if (name == "perm") return Family::Permutation;
    throw DataError("unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
    switch (family) {
        case Family::Coordination: return "coor";
        case Family::Insertion: return "ins";
        case Family::Permutation: return "perm";
    }
    return "coor";
}

bool MetaRule::head_coordination() const {
    if (family != Family::Coordination || extraction.empty()) return false;
    return pattern[extraction.back()].kind == SlotSpec::Kind::Wild;
}

int MetaRule::max_match_width() const {
    int width = 0;
    for (const SlotSpec& slot : pattern) width += slot.max_width();
    return width;
}

namespace {

ClassSet parse_class_set(std::string_view text, int line_no) {
    ClassSet set;
    size_t i = 0;
    while (i < text.size()) {
        if (text.substr(i, 3) == "PRO") {
            set.add(WordClass::Pronoun);
            i += 3;
            continue;
        }
        switch (text[i]) {
            case 'N': set.add(WordClass::Noun); break;
            case 'A': set.add(WordClass::Adjective); break;
            case 'V': set.add(WordClass::Verb); break;
            case 'P': set.add(WordClass::Preposition); break;
            case 'C': set.add(WordClass::Conjunction); break;
            case 'D': set.add(WordClass::Determiner); break;
            case 'X': set.add(WordClass::Other); break;
            default:
                throw ParseError("unknown class letter '" + std::string(1, text[i]) + "'", line_no);
        }
        ++i;
    }
    if (set.empty()) throw ParseError("empty class set", line_no);
    return set;
}

SlotSpec parse_slot(std::string_view elem, int line_no) {
    SlotSpec slot;
    if (elem == "C") {
        slot.kind = SlotSpec::Kind::Conj;
    } else if (elem == "P") {
        slot.kind = SlotSpec::Kind::Prep;
    } else if (elem == "D?") {
        slot.kind = SlotSpec::Kind::OptDet;
        slot.min_count = 0;
    } else if (elem.size() == 2 && elem[0] == 'T' && elem[1] >= '0' && elem[1] <= '9') {
        slot.kind = SlotSpec::Kind::TermWord;
        slot.term_index = elem[1] - '0';
    } else if (elem.size() >= 7 && elem.substr(0, 2) == "W[" && elem.back() == ']') {
        // W[min-max:classes]
        std::string_view body = elem.substr(2, elem.size() - 3);
        auto dash = body.find('-');
        auto colon = body.find(':');
        if (dash == std::string_view::npos || colon == std::string_view::npos || dash > colon)
            throw ParseError("malformed wild slot '" + std::string(elem) + "'", line_no);
        slot.kind = SlotSpec::Kind::Wild;
        try {
            slot.min_count = std::stoi(std::string(body.substr(0, dash)));
            slot.max_count = std::stoi(std::string(body.substr(dash + 1, colon - dash - 1)));
        } catch (const std::exception&) {
            throw ParseError("malformed wild slot counts in '" + std::string(elem) + "'", line_no);
        }
        slot.classes = parse_class_set(body.substr(colon + 1), line_no);
    } else {
        throw ParseError("unknown pattern element '" + std::string(elem) + "'", line_no);
    }
    return slot;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

void validate_rule(const MetaRule& rule) {
    const std::string where = "rule '" + rule.name + "': ";
    if (rule.arity != 2 && rule.arity != 3) throw ValidationError(where + "arity must be 2 or 3");

    std::vector<bool> used(rule.arity, false);
    int conj = 0, prep = 0;
    for (const SlotSpec& slot : rule.pattern) {
        switch (slot.kind) {
            case SlotSpec::Kind::TermWord:
                if (slot.term_index < 0 || slot.term_index >= rule.arity)
                    throw ValidationError(where + "term word index out of range for arity");
                used[slot.term_index] = true;
                break;
            case SlotSpec::Kind::Wild:
                if (slot.min_count > slot.max_count || slot.max_count > 2 || slot.min_count < 0)
                    throw ValidationError(where + "wild slot counts must satisfy 0 <= min <= max <= 2");
                break;
            case SlotSpec::Kind::Conj: ++conj; break;
            case SlotSpec::Kind::Prep: ++prep; break;
            case SlotSpec::Kind::OptDet: break;
        }
    }
    for (int i = 0; i < rule.arity; ++i)
        if (!used[i]) throw ValidationError(where + "term word T" + std::to_string(i) + " missing from pattern");

    switch (rule.family) {
        case Family::Coordination:
            if (conj != 1 || prep != 0)
                throw ValidationError(where + "a coordination pattern has exactly one conjunction slot");
            break;
        case Family::Permutation:
            if (prep != 1 || conj != 0)
                throw ValidationError(where + "a permutation pattern has exactly one preposition slot");
            break;
        case Family::Insertion:
            if (conj != 0 || prep != 0)
                throw ValidationError(where + "an insertion pattern has no conjunction or preposition slots");
            break;
    }

    if (rule.max_match_width() > rule.arity + 3)
        throw ValidationError(where + "pattern can match more than arity + 3 tokens");

    if (rule.extraction.empty()) throw ValidationError(where + "empty extraction");
    int min_len = 0, max_len = 0;
    for (int ref : rule.extraction) {
        if (ref < 0 || ref >= static_cast<int>(rule.pattern.size()))
            throw ValidationError(where + "extraction reference out of range");
        const SlotSpec& slot = rule.pattern[ref];
        if (slot.kind != SlotSpec::Kind::TermWord && slot.kind != SlotSpec::Kind::Wild)
            throw ValidationError(where + "extraction may only reference term words and wild slots");
        min_len += slot.min_width();
        max_len += slot.max_width();
    }
    if (min_len < 2 || max_len > 3)
        throw ValidationError(where + "extraction must produce 2 or 3 words, can produce " +
                              std::to_string(min_len) + ".." + std::to_string(max_len));
    const SlotSpec& last = rule.pattern[rule.extraction.back()];
    if (last.kind == SlotSpec::Kind::Wild && !last.classes.contains(WordClass::Noun) &&
        !last.classes.contains(WordClass::Other))
        throw ValidationError(where + "extraction must end in a noun-compatible slot");
}

}  // namespace

std::vector<MetaRule> load_metagrammar(std::istream& in) {
    std::vector<MetaRule> rules;
    std::unordered_set<std::string> names;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string word;
        if (!(fields >> word) || word[0] == '#') continue;
        if (word != "rule") throw ParseError("expected 'rule', got '" + word + "'", line_no);

        MetaRule rule;
        if (!(fields >> rule.name)) throw ParseError("missing rule name", line_no);
        if (!names.insert(rule.name).second)
            throw ValidationError("rule '" + rule.name + "': duplicate name");

        bool saw_family = false, saw_arity = false, saw_pattern = false, saw_extract = false;
        while (fields >> word) {
            auto eq = word.find('=');
            if (eq == std::string::npos) throw ParseError("expected key=value, got '" + word + "'", line_no);
            std::string key = word.substr(0, eq);
            std::string value = word.substr(eq + 1);
            if (key == "family") {
                try {
                    rule.family = family_from_name(value);
                } catch (const DataError& e) {
                    throw ParseError(e.what(), line_no);
                }
                saw_family = true;
            } else if (key == "arity") {
                try {
                    rule.arity = std::stoi(value);
                } catch (const std::exception&) {
                    throw ParseError("bad arity '" + value + "'", line_no);
                }
                saw_arity = true;
            } else if (key == "pattern") {
                for (std::string_view elem : split(value, ','))
                    rule.pattern.push_back(parse_slot(elem, line_no));
                saw_pattern = true;
            } else if (key == "extract") {
                for (std::string_view ref : split(value, ',')) {
                    try {
                        rule.extraction.push_back(std::stoi(std::string(ref)));
                    } catch (const std::exception&) {
                        throw ParseError("bad extraction reference '" + std::string(ref) + "'", line_no);
                    }
                }
                saw_extract = true;
            } else {
                throw ParseError("unknown key '" + key + "'", line_no);
            }
        }
        if (!saw_family || !saw_arity || !saw_pattern || !saw_extract)
            throw ParseError("rule '" + rule.name + "' needs family=, arity=, pattern= and extract=", line_no);
        validate_rule(rule);
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<MetaRule> load_metagrammar(const std::string& text) {
    std::istringstream in(text);
    return load_metagrammar(in);
}

std::vector<MetaRule> load_metagrammar_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open meta-grammar '" + path + "'");
    return load_metagrammar(in);
}

const std::string& default_metagrammar_text() {
    static const std::string text = R"(# Default meta-grammar: variant shapes for 2- and 3-word terms.
# Wild slots admit content words only (nouns, adjectives, untagged).

# Coordination. coor*_arg keeps the source arguments and takes a new head;
# coor*_head keeps the source head and takes a new argument.
rule coor2_arg  family=coor arity=2 pattern=T0,W[1-1:NAX],C,T1 extract=0,1
rule coor2_head family=coor arity=2 pattern=T0,C,W[1-1:NAX],T1 extract=2,3
rule coor3_arg  family=coor arity=3 pattern=T0,T1,W[1-1:NAX],C,T2 extract=0,1,2
rule coor3_head family=coor arity=3 pattern=T0,C,W[1-1:NAX],T1,T2 extract=2,3,4

# Insertion of one or two words in front of the head.
rule ins2       family=ins arity=2 pattern=T0,W[1-1:NAX],T1 extract=1,2
rule ins2_wide  family=ins arity=2 pattern=T0,W[2-2:NAX],T1 extract=1,2
rule ins3       family=ins arity=3 pattern=T0,W[1-1:NAX],T1,T2 extract=1,2,3
rule ins3_wide  family=ins arity=3 pattern=T0,T1,W[2-2:NAX],T2 extract=2,3

# Permutation: the argument moves into a post-head prepositional phrase,
# optionally introduced by a determiner.
rule perm2      family=perm arity=2 pattern=T1,P,W[1-1:NAX],T0 extract=2,3
rule perm2_det  family=perm arity=2 pattern=T1,P,D?,W[1-1:NAX],T0 extract=3,4
rule perm3      family=perm arity=3 pattern=T2,P,W[1-1:NAX],T0,T1 extract=2,3,4
rule perm3_det  family=perm arity=3 pattern=T2,P,D?,W[1-1:NAX],T0,T1 extract=3,4,5
)";
    return text;
}

const std::vector<MetaRule>& default_metagrammar() {
    static const std::vector<MetaRule> rules = load_metagrammar(default_metagrammar_text());
    return rules;
}

int VariantPattern::max_match_width() const {
    int width = 0;
    for (const PatternElement& elem : elements)
        width += elem.kind == PatternElement::Kind::FixedLemma ? 1 : elem.slot.max_width();
    return width;
}

int VariantPattern::min_match_width() const {
    int width = 0;
    for (const PatternElement& elem : elements)
        width += elem.kind == PatternElement::Kind::FixedLemma ? 1 : elem.slot.min_width();
    return width;
}

std::vector<VariantPattern> compile_variant_patterns(const Term& term, const std::vector<MetaRule>& rules) {
    std::vector<VariantPattern> patterns;
    for (const MetaRule& rule : rules) {
        if (rule.arity != static_cast<int>(term.size())) continue;
        VariantPattern pattern;
        pattern.source_term = term.id();
        pattern.meta_rule = rule.name;
        pattern.rule = &rule;
        pattern.elements.reserve(rule.pattern.size());
        for (const SlotSpec& slot : rule.pattern) {
            PatternElement elem;
            if (slot.kind == SlotSpec::Kind::TermWord) {
                elem.kind = PatternElement::Kind::FixedLemma;
                elem.lemma = term.word(slot.term_index).lemma;
                elem.word_class = term.word(slot.term_index).word_class;
            } else {
                elem.kind = PatternElement::Kind::OpenSlot;
                elem.slot = slot;
            }
            pattern.elements.push_back(std::move(elem));
        }
        patterns.push_back(std::move(pattern));
    }
    return patterns;
}

VariantPattern base_pattern(const Term& term) {
    VariantPattern pattern;
    pattern.source_term = term.id();
    for (const TermWord& word : term.words()) {
        PatternElement elem;
        elem.kind = PatternElement::Kind::FixedLemma;
        elem.lemma = word.lemma;
        elem.word_class = word.word_class;
        pattern.elements.push_back(std::move(elem));
    }
    return pattern;
}

}  // namespace termnet
