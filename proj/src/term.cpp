#include "termnet/term.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "termnet/errors.hpp"
#include "termnet/unicode.hpp"

namespace termnet {

Lemma normalize_lemma(std::string_view raw) {
    auto cps = unicode::decode_utf8(raw);
    size_t begin = 0, end = cps.size();
    while (begin < end && unicode::is_space(cps[begin])) ++begin;
    while (end > begin && unicode::is_space(cps[end - 1])) --end;
    if (begin == end) throw DataError("empty lemma");
    std::vector<char32_t> trimmed(cps.begin() + begin, cps.begin() + end);
    for (char32_t cp : trimmed) {
        if (unicode::is_space(cp) || unicode::is_control(cp))
            throw DataError("lemma contains whitespace or control characters");
    }
    return Lemma(unicode::nfc_lowercase(unicode::encode_utf8(trimmed)));
}

WordClass word_class_from_tag(std::string_view tag) {
    if (tag == "N") return WordClass::Noun;
    if (tag == "A") return WordClass::Adjective;
    if (tag == "V") return WordClass::Verb;
    if (tag == "P") return WordClass::Preposition;
    if (tag == "C") return WordClass::Conjunction;
    if (tag == "D") return WordClass::Determiner;
    if (tag == "PRO") return WordClass::Pronoun;
    if (tag == "X") return WordClass::Other;
    throw DataError("unknown word-class tag '" + std::string(tag) + "'");
}

std::string_view word_class_tag(WordClass wc) {
    switch (wc) {
        case WordClass::Noun: return "N";
        case WordClass::Adjective: return "A";
        case WordClass::Verb: return "V";
        case WordClass::Preposition: return "P";
        case WordClass::Conjunction: return "C";
        case WordClass::Determiner: return "D";
        case WordClass::Pronoun: return "PRO";
        case WordClass::Other: return "X";
    }
    return "X";
}

bool classes_compatible(WordClass a, WordClass b) {
    return a == b || a == WordClass::Other || b == WordClass::Other;
}

TermId term_id_of(const std::vector<Lemma>& lemmas) {
    // FNV-1a over the lemma bytes with a separator; stable across platforms.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](unsigned char byte) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    };
    for (const Lemma& lemma : lemmas) {
        for (char c : lemma.text()) mix(static_cast<unsigned char>(c));
        mix(0x1F);
    }
    return h;
}

Term::Term(std::vector<TermWord> words) : words_(std::move(words)) {
    if (words_.size() < 2 || words_.size() > 3)
        throw DataError("bad arity: a term has 2 or 3 words, got " + std::to_string(words_.size()));
    TermWord& head = words_.back();
    if (head.word_class == WordClass::Other) head.word_class = WordClass::Noun;
    if (head.word_class != WordClass::Noun) throw DataError("bad head: the last word of a term must be a noun");
    std::vector<Lemma> lemmas;
    lemmas.reserve(words_.size());
    for (const TermWord& w : words_) lemmas.push_back(w.lemma);
    id_ = term_id_of(lemmas);
}

std::string Term::text() const {
    std::string out;
    for (const TermWord& w : words_) {
        if (!out.empty()) out += ' ';
        out += w.lemma.text();
    }
    return out;
}

std::string Term::render() const {
    std::string out;
    for (const TermWord& w : words_) {
        if (!out.empty()) out += ' ';
        out += w.lemma.text();
        out += '/';
        out += word_class_tag(w.word_class);
    }
    return out;
}

Term parse_term(std::string_view line) {
    std::vector<std::pair<std::string, std::string>> tokens;  // (lemma, tag or "")
    std::istringstream stream{std::string(line)};
    std::string token;
    while (stream >> token) {
        auto slash = token.rfind('/');
        if (slash == std::string::npos) {
            tokens.emplace_back(token, "");
        } else {
            std::string lemma = token.substr(0, slash);
            std::string tag = token.substr(slash + 1);
            if (lemma.empty() || tag.empty()) throw DataError("bad token '" + token + "'");
            tokens.emplace_back(lemma, tag);
        }
    }
    if (tokens.size() < 2 || tokens.size() > 3)
        throw DataError("bad arity: a term has 2 or 3 words, got " + std::to_string(tokens.size()));

    std::vector<TermWord> words;
    words.reserve(tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i) {
        const auto& [raw, tag] = tokens[i];
        WordClass wc;
        if (tag.empty()) {
            wc = (i + 1 == tokens.size()) ? WordClass::Noun : WordClass::Other;
        } else {
            try {
                wc = word_class_from_tag(tag);
            } catch (const DataError&) {
                throw DataError("bad token '" + raw + "/" + tag + "'");
            }
            if (i + 1 == tokens.size() && wc != WordClass::Noun)
                throw DataError("bad head: the last word of a term must be tagged N, got '" + tag + "'");
        }
        Lemma lemma;
        try {
            lemma = normalize_lemma(raw);
        } catch (const DataError& e) {
            throw DataError("bad token '" + raw + "': " + e.what());
        }
        words.push_back(TermWord{std::move(lemma), wc});
    }
    return Term(std::move(words));
}

std::vector<Term> load_term_list(std::istream& in, std::vector<std::string>* warnings) {
    std::vector<Term> terms;
    std::vector<TermId> ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        auto first = view.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || view[first] == '#') continue;
        try {
            Term term = parse_term(view);
            if (std::find(ids.begin(), ids.end(), term.id()) == ids.end()) {
                ids.push_back(term.id());
                terms.push_back(std::move(term));
            }
        } catch (const DataError& e) {
            std::string msg = e.what();
            if (msg.find("bad arity") != std::string::npos) {
                if (warnings)
                    warnings->push_back("line " + std::to_string(line_no) + ": skipped term, " + msg);
                continue;
            }
            throw ParseError(msg, line_no);
        }
    }
    return terms;
}

std::vector<Term> load_term_list_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open term list '" + path + "'");
    return load_term_list(in, warnings);
}

}  // namespace termnet
