#pragma once
// Deterministic random instances for the property suites: a small medical-ish
// vocabulary, sentences salted with variant-shaped snippets of the seed
// terms, and 2-3 word seed terms over the content vocabulary.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "termnet/corpus.hpp"
#include "termnet/term.hpp"

namespace testsupport {

struct VocabWord {
    const char* lemma;
    const char* tag;
};

inline const std::vector<VocabWord>& content_vocab() {
    static const std::vector<VocabWord> vocab = {
        {"cell", "N"},   {"tissue", "N"}, {"tumor", "N"},  {"control", "N"}, {"factor", "N"},
        {"level", "N"},  {"rate", "N"},   {"normal", "A"}, {"acute", "A"},   {"viral", "A"},
        {"renal", "A"},  {"serum", "N"},
    };
    return vocab;
}

inline const std::vector<VocabWord>& closed_vocab() {
    static const std::vector<VocabWord> vocab = {
        {"and", "C"}, {"or", "C"}, {"of", "P"}, {"in", "P"}, {"the", "D"}, {"their", "PRO"},
    };
    return vocab;
}

inline size_t pick(std::mt19937_64& rng, size_t bound) { return rng() % bound; }

struct RandomInstance {
    std::string corpus_text;
    termnet::Corpus corpus;
    std::vector<termnet::Term> seeds;
};

inline termnet::Term random_seed_term(std::mt19937_64& rng) {
    const auto& vocab = content_vocab();
    size_t len = 2 + pick(rng, 2);
    std::vector<termnet::TermWord> words;
    for (size_t i = 0; i + 1 < len; ++i) {
        const VocabWord& w = vocab[pick(rng, vocab.size())];
        words.push_back({termnet::normalize_lemma(w.lemma), termnet::word_class_from_tag(w.tag)});
    }
    // Noun head.
    for (;;) {
        const VocabWord& w = vocab[pick(rng, vocab.size())];
        if (std::string_view(w.tag) != "N") continue;
        words.push_back({termnet::normalize_lemma(w.lemma), termnet::WordClass::Noun});
        break;
    }
    return termnet::Term(words);
}

// A variant-shaped token run for the term: its words with coordination,
// insertion or permutation material spliced in.
inline std::vector<std::string> variant_snippet(std::mt19937_64& rng, const termnet::Term& term) {
    const auto& vocab = content_vocab();
    auto token = [](const VocabWord& w) { return std::string(w.lemma) + "|" + w.lemma + "|" + w.tag; };
    auto term_token = [&term](size_t i) {
        const termnet::TermWord& w = term.word(i);
        return w.lemma.text() + "|" + w.lemma.text() + "|" + std::string(termnet::word_class_tag(w.word_class));
    };
    const std::string filler = token(vocab[pick(rng, vocab.size())]);
    const std::string conj = pick(rng, 2) ? "and|and|C" : "or|or|C";
    const std::string prep = pick(rng, 2) ? "of|of|P" : "in|in|P";

    std::vector<std::string> out;
    size_t n = term.size();
    switch (pick(rng, 5)) {
        case 0:  // plain occurrence
            for (size_t i = 0; i < n; ++i) out.push_back(term_token(i));
            break;
        case 1:  // coordination after the first argument
            out.push_back(term_token(0));
            out.push_back(conj);
            out.push_back(filler);
            for (size_t i = 1; i < n; ++i) out.push_back(term_token(i));
            break;
        case 2:  // coordinated head before the source head
            for (size_t i = 0; i + 1 < n; ++i) out.push_back(term_token(i));
            out.push_back(filler);
            out.push_back(conj);
            out.push_back(term_token(n - 1));
            break;
        case 3:  // insertion before the head
            for (size_t i = 0; i + 1 < n; ++i) out.push_back(term_token(i));
            out.push_back(filler);
            out.push_back(term_token(n - 1));
            break;
        default:  // permutation: head, preposition, free word, arguments
            out.push_back(term_token(n - 1));
            out.push_back(prep);
            if (pick(rng, 3) == 0) out.push_back("the|the|D");
            out.push_back(filler);
            for (size_t i = 0; i + 1 < n; ++i) out.push_back(term_token(i));
            break;
    }
    return out;
}

inline RandomInstance make_instance(std::mt19937_64& rng, int max_tokens = 200, int max_seeds = 10) {
    RandomInstance instance;
    size_t n_seeds = 1 + pick(rng, static_cast<size_t>(max_seeds));
    for (size_t i = 0; i < n_seeds; ++i) {
        termnet::Term term = random_seed_term(rng);
        bool duplicate = false;
        for (const termnet::Term& other : instance.seeds) duplicate |= other == term;
        if (!duplicate) instance.seeds.push_back(std::move(term));
    }

    std::ostringstream text;
    int tokens = 0;
    int budget = 20 + static_cast<int>(pick(rng, static_cast<size_t>(max_tokens - 20)));
    while (tokens < budget) {
        std::vector<std::string> sentence;
        size_t runs = 1 + pick(rng, 3);
        for (size_t r = 0; r < runs; ++r) {
            if (pick(rng, 100) < 55) {
                const termnet::Term& seed = instance.seeds[pick(rng, instance.seeds.size())];
                for (std::string& tok : variant_snippet(rng, seed)) sentence.push_back(std::move(tok));
            } else {
                size_t words = 1 + pick(rng, 4);
                for (size_t i = 0; i < words; ++i) {
                    bool closed = pick(rng, 100) < 25;
                    const auto& vocab = closed ? closed_vocab() : content_vocab();
                    const VocabWord& w = vocab[pick(rng, vocab.size())];
                    sentence.push_back(std::string(w.lemma) + "|" + w.lemma + "|" + w.tag);
                }
            }
        }
        tokens += static_cast<int>(sentence.size());
        for (size_t i = 0; i < sentence.size(); ++i) text << (i ? " " : "") << sentence[i];
        text << "\n";
    }
    instance.corpus_text = text.str();
    std::istringstream in(instance.corpus_text);
    instance.corpus = termnet::load_corpus(in);
    return instance;
}

}  // namespace testsupport
