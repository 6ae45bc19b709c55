#include "termnet/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include <zlib.h>

#include "termnet/errors.hpp"

namespace termnet {

WordClass ClosedClassLexicons::classify(const Lemma& lemma) const {
    if (conjunctions.count(lemma.text())) return WordClass::Conjunction;
    if (prepositions.count(lemma.text())) return WordClass::Preposition;
    if (determiners.count(lemma.text())) return WordClass::Determiner;
    return WordClass::Other;
}

const std::vector<std::pair<int, int>>& Corpus::occurrences(const Lemma& lemma) const {
    static const std::vector<std::pair<int, int>> empty;
    auto it = index_.find(lemma.text());
    return it == index_.end() ? empty : it->second;
}

Corpus load_corpus(std::istream& in, const ClosedClassLexicons& lexicons) {
    Corpus corpus;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        std::vector<TokenOcc> sentence;
        std::istringstream fields(line);
        std::string token;
        while (std::getline(fields, token, ' ')) {
            if (token.empty()) continue;
            TokenOcc occ;
            std::vector<std::string> parts;
            size_t start = 0;
            for (size_t pos = 0; pos <= token.size(); ++pos) {
                if (pos == token.size() || token[pos] == '|') {
                    parts.push_back(token.substr(start, pos - start));
                    start = pos + 1;
                }
            }
            if (parts.size() > 3 || parts[0].empty())
                throw ParseError("malformed token '" + token + "'", line_no);
            try {
                occ.surface = parts[0];
                occ.lemma = normalize_lemma(parts.size() >= 2 ? parts[1] : parts[0]);
                if (parts.size() == 3) {
                    occ.word_class = word_class_from_tag(parts[2]);
                } else {
                    occ.word_class = lexicons.classify(occ.lemma);
                }
            } catch (const DataError& e) {
                throw ParseError("malformed token '" + token + "': " + e.what(), line_no);
            }
            occ.sentence_id = corpus.sentence_count();
            occ.position = static_cast<int>(sentence.size());
            sentence.push_back(std::move(occ));
        }
        if (sentence.empty()) continue;
        for (const TokenOcc& occ : sentence) {
            corpus.index_[occ.lemma.text()].emplace_back(occ.sentence_id, occ.position);
        }
        corpus.token_count_ += static_cast<int>(sentence.size());
        corpus.sentences_.push_back(std::move(sentence));
    }
    if (corpus.sentences_.empty()) throw DataError("empty corpus");
    return corpus;
}

namespace {

std::string read_gzip(const std::string& path) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (!file) throw IoError("cannot open corpus '" + path + "'");
    std::string out;
    char buffer[1 << 16];
    int n;
    while ((n = gzread(file, buffer, sizeof(buffer))) > 0) out.append(buffer, static_cast<size_t>(n));
    bool ok = n == 0;
    gzclose(file);
    if (!ok) throw IoError("gzip read failed for '" + path + "'");
    return out;
}

}  // namespace

Corpus load_corpus_file(const std::string& path, const ClosedClassLexicons& lexicons) {
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        std::istringstream in(read_gzip(path));
        return load_corpus(in, lexicons);
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus '" + path + "'");
    return load_corpus(in, lexicons);
}

namespace {

bool element_matches_token(const PatternElement& elem, const TokenOcc& token) {
    if (elem.kind == PatternElement::Kind::FixedLemma)
        return token.lemma == elem.lemma && classes_compatible(elem.word_class, token.word_class);
    const SlotSpec& slot = elem.slot;
    switch (slot.kind) {
        case SlotSpec::Kind::Wild: return slot.classes.contains(token.word_class);
        case SlotSpec::Kind::Conj: return token.word_class == WordClass::Conjunction;
        case SlotSpec::Kind::Prep: return token.word_class == WordClass::Preposition;
        case SlotSpec::Kind::OptDet: return token.word_class == WordClass::Determiner;
        case SlotSpec::Kind::TermWord: break;  // substituted away at compile time
    }
    return false;
}

void match_element(const VariantPattern& pattern, const std::vector<TokenOcc>& sentence, int start,
                   int pattern_index, size_t elem_index, int pos, std::vector<SlotBinding>& bindings,
                   std::vector<VariantMatch>& out) {
    if (elem_index == pattern.elements.size()) {
        VariantMatch match;
        match.pattern_index = pattern_index;
        match.sentence_id = sentence.empty() ? 0 : sentence.front().sentence_id;
        match.start = start;
        match.end = pos;
        match.bindings = bindings;
        out.push_back(std::move(match));
        return;
    }
    const PatternElement& elem = pattern.elements[elem_index];
    int min_width = 1, max_width = 1;
    if (elem.kind == PatternElement::Kind::OpenSlot) {
        min_width = elem.slot.min_width();
        max_width = elem.slot.max_width();
    }
    for (int width = min_width; width <= max_width; ++width) {
        if (pos + width > static_cast<int>(sentence.size())) break;
        bool ok = true;
        for (int k = 0; k < width && ok; ++k) ok = element_matches_token(elem, sentence[pos + k]);
        if (!ok) continue;
        bindings.push_back(SlotBinding{static_cast<int>(elem_index), pos, width});
        match_element(pattern, sentence, start, pattern_index, elem_index + 1, pos + width, bindings, out);
        bindings.pop_back();
    }
}

bool match_less(const VariantMatch& a, const VariantMatch& b) {
    if (a.sentence_id != b.sentence_id) return a.sentence_id < b.sentence_id;
    if (a.start != b.start) return a.start < b.start;
    if (a.pattern_index != b.pattern_index) return a.pattern_index < b.pattern_index;
    if (a.end != b.end) return a.end < b.end;
    return std::lexicographical_compare(
        a.bindings.begin(), a.bindings.end(), b.bindings.begin(), b.bindings.end(),
        [](const SlotBinding& x, const SlotBinding& y) {
            return std::tie(x.element, x.start, x.length) < std::tie(y.element, y.start, y.length);
        });
}

void scan_sentence_range(const Corpus& corpus, const std::vector<VariantPattern>& patterns,
                         const std::unordered_map<std::string, std::vector<int>>& buckets,
                         const std::vector<int>& unanchored, int first_sentence, int last_sentence,
                         std::vector<VariantMatch>& out) {
    for (int s = first_sentence; s < last_sentence; ++s) {
        const std::vector<TokenOcc>& sentence = corpus.sentence(s);
        for (int pos = 0; pos < static_cast<int>(sentence.size()); ++pos) {
            auto bucket = buckets.find(sentence[pos].lemma.text());
            if (bucket != buckets.end()) {
                for (int p : bucket->second) {
                    std::vector<SlotBinding> bindings;
                    match_element(patterns[p], sentence, pos, p, 0, pos, bindings, out);
                }
            }
            for (int p : unanchored) {
                std::vector<SlotBinding> bindings;
                match_element(patterns[p], sentence, pos, p, 0, pos, bindings, out);
            }
        }
    }
}

}  // namespace

void match_pattern_at(const VariantPattern& pattern, const std::vector<TokenOcc>& sentence, int start,
                      int pattern_index, std::vector<VariantMatch>& out) {
    std::vector<SlotBinding> bindings;
    match_element(pattern, sentence, start, pattern_index, 0, start, bindings, out);
}

std::vector<VariantMatch> scan(const Corpus& corpus, const std::vector<VariantPattern>& patterns,
                               int workers) {
    // Bucket patterns by their opening fixed lemma; anything opening with a
    // free slot is tried at every position.
    std::unordered_map<std::string, std::vector<int>> buckets;
    std::vector<int> unanchored;
    for (int p = 0; p < static_cast<int>(patterns.size()); ++p) {
        const auto& elements = patterns[p].elements;
        if (!elements.empty() && elements.front().kind == PatternElement::Kind::FixedLemma)
            buckets[elements.front().lemma.text()].push_back(p);
        else
            unanchored.push_back(p);
    }

    int n_sentences = corpus.sentence_count();
    workers = std::max(1, std::min(workers, n_sentences));

    std::vector<std::vector<VariantMatch>> partial(workers);
    if (workers == 1) {
        scan_sentence_range(corpus, patterns, buckets, unanchored, 0, n_sentences, partial[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        int chunk = (n_sentences + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int first = w * chunk;
            int last = std::min(n_sentences, first + chunk);
            threads.emplace_back([&, w, first, last] {
                scan_sentence_range(corpus, patterns, buckets, unanchored, first, last, partial[w]);
            });
        }
        for (std::thread& t : threads) t.join();
    }

    std::vector<VariantMatch> matches;
    for (auto& part : partial) {
        matches.insert(matches.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }
    std::sort(matches.begin(), matches.end(), match_less);
    return matches;
}

std::unordered_set<TermId> find_present_terms(const Corpus& corpus, const std::vector<Term>& terms,
                                              const std::vector<MetaRule>& rules, int workers) {
    std::vector<VariantPattern> patterns;
    for (const Term& term : terms) {
        patterns.push_back(base_pattern(term));
        for (VariantPattern& pattern : compile_variant_patterns(term, rules))
            patterns.push_back(std::move(pattern));
    }
    std::unordered_set<TermId> present;
    for (const VariantMatch& match : scan(corpus, patterns, workers))
        present.insert(patterns[match.pattern_index].source_term);
    return present;
}

}  // namespace termnet
