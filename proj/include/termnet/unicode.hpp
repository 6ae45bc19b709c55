#pragma once
// Minimal UTF-8 utilities for lemma normalization: canonical composition
// (NFC) and simple lowercasing. Covers the Latin, Greek and Cyrillic
// composites below U+1000; other code points pass through unchanged.
// Combining marks are assumed to be in canonical order already, which holds
// for single-diacritic text.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace termnet::unicode {

// Decodes UTF-8 into code points. Throws DataError on malformed sequences.
std::vector<char32_t> decode_utf8(std::string_view text);

std::string encode_utf8(const std::vector<char32_t>& code_points);

// Canonical composition followed by simple lowercasing.
std::string nfc_lowercase(std::string_view text);

bool is_space(char32_t cp);
bool is_control(char32_t cp);

}  // namespace termnet::unicode
