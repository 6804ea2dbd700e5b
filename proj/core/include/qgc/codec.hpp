#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgc/stats.hpp"
#include "qgc/transform.hpp"

/// Conversions between bytes/text and symbol strings, sampling of random
/// plaintexts with a prescribed letter distribution, and the key file
/// format.
namespace qgc {

/// Malformed textual input (key files, symbol text); the message carries the
/// offending line or token position.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Splits each byte big-endian into fixed-width bit groups (8/log2(a) groups
/// per byte) and maps group g to internal symbol g. Supported orders: 2, 4,
/// 16, 256 (symbols pack whole bytes, so ciphertext length equals plaintext
/// length).
SymbolString bytes_to_symbols(std::span<const std::uint8_t> data, std::uint32_t order);

/// Exact inverse of bytes_to_symbols; the symbol count must be divisible by
/// the number of groups per byte.
std::vector<std::uint8_t> symbols_to_bytes(const SymbolString& s);

/// Parses whitespace-separated 1-based integers. Errors report the 1-based
/// token index. Empty text gives the empty string.
SymbolString parse_symbol_text(std::string_view text, std::uint32_t order);

/// Renders 1-based values separated by single spaces, with a trailing
/// newline for nonempty strings; inverse of parse_symbol_text.
std::string format_symbol_text(const SymbolString& s);

/// k independent draws from p by inverse-CDF over the cumulative sums.
/// Deterministic for a given seed (mt19937_64 with 53-bit uniform doubles);
/// bit-equality across implementations of this toolkit is not promised, only
/// the distribution.
SymbolString sample_message(const LetterDistribution& p, std::uint64_t k,
                            std::uint64_t seed);

/// Canonical key file text (UTF-8, LF line endings, single spaces):
///
///   PEKEY 1
///   order <a>
///   row <a integers, 1-based>     (a lines)
///   round <leader> <d1>           (one line per round, at least one)
///
/// parse_key re-validates the Latin square; serialize then parse is the
/// identity on keys and parse then serialize is byte-identical on canonical
/// text.
std::string serialize_key(const PEKey& key);
PEKey parse_key(std::string_view text);

}  // namespace qgc
