#include "qgc/codec.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <stdexcept>
#include <string>
#include <utility>

#include "rng.hpp"

namespace qgc {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Bits per symbol for the byte codec; only orders that pack whole bytes.
std::uint32_t bits_for_order(std::uint32_t order) {
    switch (order) {
        case 2: return 1;
        case 4: return 2;
        case 16: return 4;
        case 256: return 8;
        default:
            fail("unsupported order " + std::to_string(order) +
                 " for the byte codec (need 2, 4, 16 or 256)");
    }
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    // A canonical file ends with a newline, leaving one empty trailing piece.
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    tokens.reserve(line.size() / 4 + 2);
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::uint64_t parse_u64(std::string_view token, std::size_t line_number) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line_number) +
                         ": expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

SymbolString bytes_to_symbols(std::span<const std::uint8_t> data, std::uint32_t order) {
    const std::uint32_t bits = bits_for_order(order);
    const std::uint32_t groups = 8 / bits;
    const std::uint32_t mask = order - 1;
    std::vector<Symbol> symbols;
    symbols.reserve(data.size() * groups);
    for (std::uint8_t byte : data) {
        for (std::uint32_t g = 0; g < groups; ++g) {
            const std::uint32_t shift = 8 - bits * (g + 1);
            symbols.push_back((byte >> shift) & mask);
        }
    }
    return SymbolString::unchecked(Alphabet(order), std::move(symbols));
}

std::vector<std::uint8_t> symbols_to_bytes(const SymbolString& s) {
    const std::uint32_t order = s.order();
    const std::uint32_t bits = bits_for_order(order);
    const std::uint32_t groups = 8 / bits;
    if (s.size() % groups != 0) {
        fail("length " + std::to_string(s.size()) + " not divisible by " +
             std::to_string(groups));
    }
    std::vector<std::uint8_t> bytes(s.size() / groups);
    const auto sym = s.symbols();
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        std::uint32_t byte = 0;
        for (std::uint32_t g = 0; g < groups; ++g) {
            byte = (byte << bits) | sym[i * groups + g];
        }
        bytes[i] = static_cast<std::uint8_t>(byte);
    }
    return bytes;
}

SymbolString parse_symbol_text(std::string_view text, std::uint32_t order) {
    const Alphabet alphabet(order);
    std::vector<Symbol> symbols;
    for (std::size_t index = 0; const std::string_view token : split_tokens(text)) {
        ++index;
        std::uint32_t value = 0;
        const auto [ptr, ec] =
            std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ParseError("token " + std::to_string(index) +
                             ": expected an integer, got '" + std::string(token) + "'");
        }
        if (value < 1 || value > order) {
            throw ParseError("token " + std::to_string(index) + ": symbol " +
                             std::to_string(value) + " out of range 1.." +
                             std::to_string(order));
        }
        symbols.push_back(value - 1);
    }
    return SymbolString::unchecked(alphabet, std::move(symbols));
}

std::string format_symbol_text(const SymbolString& s) {
    if (s.empty()) return "";
    std::string out;
    out.reserve(s.size() * 4);
    for (std::size_t i = 0; const Symbol sym : s.symbols()) {
        if (i++ > 0) out += ' ';
        out += std::to_string(sym + 1);
    }
    out += '\n';
    return out;
}

SymbolString sample_message(const LetterDistribution& p, std::uint64_t k,
                            std::uint64_t seed) {
    if (k < 1) fail("message length must be at least 1");
    std::vector<double> cumulative(p.probs().begin(), p.probs().end());
    for (std::size_t i = 1; i < cumulative.size(); ++i) cumulative[i] += cumulative[i - 1];
    cumulative.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<Symbol> symbols(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        const double u = detail::unit_double(rng);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        symbols[i] = static_cast<Symbol>(
            std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1));
    }
    return SymbolString::unchecked(Alphabet(p.order()), std::move(symbols));
}

std::string serialize_key(const PEKey& key) {
    const std::uint32_t a = key.order();
    const auto& table = key.table().entries();
    std::string out;
    out.reserve(32 + std::size_t{a} * (4 + std::size_t{a} * 4) +
                key.rounds().size() * 32);
    out += "PEKEY 1\norder " + std::to_string(a) + "\n";
    for (std::uint32_t r = 0; r < a; ++r) {
        out += "row";
        for (std::uint32_t c = 0; c < a; ++c) {
            out += ' ';
            out += std::to_string(table[std::size_t{r} * a + c] + 1);
        }
        out += '\n';
    }
    for (const RoundParams& round : key.rounds()) {
        out += "round " + std::to_string(round.leader + 1) + " " +
               std::to_string(round.first_block_length) + "\n";
    }
    return out;
}

PEKey parse_key(std::string_view text) {
    const auto lines = split_lines(text);
    const auto line_error = [&](std::size_t number, const std::string& msg) -> ParseError {
        return ParseError("line " + std::to_string(number) + ": " + msg);
    };
    if (lines.empty() || split_tokens(lines[0]) != std::vector<std::string_view>{"PEKEY", "1"}) {
        throw line_error(1, "expected header 'PEKEY 1'");
    }
    if (lines.size() < 2) throw line_error(2, "expected 'order <a>'");
    const auto order_tokens = split_tokens(lines[1]);
    if (order_tokens.size() != 2 || order_tokens[0] != "order") {
        throw line_error(2, "expected 'order <a>'");
    }
    const std::uint64_t order64 = parse_u64(order_tokens[1], 2);
    if (order64 < 2 || order64 > 0xFFFFFFFFull) {
        throw line_error(2, "order " + std::to_string(order64) + " out of range");
    }
    const std::uint32_t order = static_cast<std::uint32_t>(order64);

    std::vector<std::uint32_t> raw;
    raw.reserve(std::size_t{order} * order);
    for (std::uint32_t r = 0; r < order; ++r) {
        const std::size_t number = 3 + r;
        const auto row_error = [&] {
            return line_error(number,
                              "expected 'row' with " + std::to_string(order) + " entries");
        };
        if (number > lines.size()) throw row_error();
        // Cursor-based scan; rows of large tables are hot for this parser.
        const std::string_view line = lines[number - 1];
        std::size_t i = 0;
        while (i < line.size() && is_space(line[i])) ++i;
        if (line.substr(i, 3) != "row") throw row_error();
        i += 3;
        for (std::uint32_t c = 0; c < order; ++c) {
            while (i < line.size() && is_space(line[i])) ++i;
            std::uint32_t v = 0;
            const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
            if (ec != std::errc{} || ptr == line.data() + i) throw row_error();
            i = static_cast<std::size_t>(ptr - line.data());
            if (v < 1 || v > order) {
                throw line_error(number, "entry " + std::to_string(v) + " out of range 1.." +
                                             std::to_string(order));
            }
            raw.push_back(v);
        }
        while (i < line.size() && is_space(line[i])) ++i;
        if (i != line.size()) throw row_error();
    }

    OperationTable table = [&] {
        try {
            return OperationTable::from_external(order, raw);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("invalid quasigroup table: ") + e.what());
        }
    }();

    std::vector<RoundParams> rounds;
    for (std::size_t number = 3 + order; number <= lines.size(); ++number) {
        const auto tokens = split_tokens(lines[number - 1]);
        if (tokens.size() != 3 || tokens[0] != "round") {
            throw line_error(number, "expected 'round <leader> <d1>'");
        }
        const std::uint64_t leader = parse_u64(tokens[1], number);
        const std::uint64_t d1 = parse_u64(tokens[2], number);
        if (leader < 1 || leader > order) {
            throw line_error(number, "leader " + std::to_string(leader) + " out of range 1.." +
                                         std::to_string(order));
        }
        if (d1 < 2) {
            throw line_error(number, "first block length must be at least 2, got " +
                                         std::to_string(d1));
        }
        rounds.push_back({static_cast<Symbol>(leader - 1), d1});
    }
    if (rounds.empty()) {
        throw line_error(lines.size() + 1, "expected at least one 'round <leader> <d1>'");
    }
    return PEKey(std::move(table), std::move(rounds));
}

}  // namespace qgc
