#include "qgc/transform.hpp"

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

namespace qgc {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_symbols(const Alphabet& alphabet, std::span<const Symbol> symbols) {
    for (Symbol s : symbols) {
        if (!alphabet.contains(s)) {
            fail("symbol " + std::to_string(s + 1) + " out of range 1.." +
                 std::to_string(alphabet.order()));
        }
    }
}

void check_leader(const Alphabet& alphabet, Symbol leader) {
    if (!alphabet.contains(leader)) {
        fail("leader " + std::to_string(leader + 1) + " out of range 1.." +
             std::to_string(alphabet.order()));
    }
}

int selector_for(std::uint64_t d) { return static_cast<int>(d % 6) + 1; }

// Length of the block that follows a block ending in ...uv: a*u + v with u, v
// taken as 1-based values.
std::uint64_t chained_length(std::uint32_t order, Symbol u, Symbol v) {
    return std::uint64_t{order} * (u + 1) + (v + 1);
}

}  // namespace

SymbolString::SymbolString(Alphabet alphabet, std::vector<Symbol> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
    check_symbols(alphabet_, symbols_);
}

SymbolString::SymbolString(Alphabet alphabet, std::vector<Symbol> symbols, unchecked_t)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {}

SymbolString SymbolString::unchecked(Alphabet alphabet, std::vector<Symbol> symbols) {
    return SymbolString(alphabet, std::move(symbols), unchecked_t{});
}

SymbolString SymbolString::from_external(std::uint32_t order,
                                         std::span<const std::uint32_t> values) {
    Alphabet alphabet(order);
    std::vector<Symbol> symbols(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1 || values[i] > order) {
            fail("symbol " + std::to_string(values[i]) + " out of range 1.." +
                 std::to_string(order) + " at position " + std::to_string(i + 1));
        }
        symbols[i] = values[i] - 1;
    }
    return SymbolString(alphabet, std::move(symbols), unchecked_t{});
}

std::vector<std::uint32_t> SymbolString::to_external() const {
    std::vector<std::uint32_t> out(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) out[i] = symbols_[i] + 1;
    return out;
}

PEKey::PEKey(OperationTable table, std::vector<RoundParams> rounds)
    : parastrophes_(std::move(table)), rounds_(std::move(rounds)) {
    if (rounds_.empty()) fail("key must have at least one round");
    const Alphabet alphabet(parastrophes_.order());
    for (const RoundParams& r : rounds_) {
        check_leader(alphabet, r.leader);
        if (r.first_block_length < 2) {
            fail("first block length must be at least 2, got " +
                 std::to_string(r.first_block_length));
        }
    }
}

SymbolString e_transform(const OperationTable& op, Symbol leader,
                         const SymbolString& input) {
    if (op.order() != input.order()) fail("alphabet mismatch between table and input");
    check_leader(input.alphabet(), leader);
    const auto in = input.symbols();
    const std::uint32_t a = op.order();
    const auto& t = op.entries();
    std::vector<Symbol> out(in.size());
    Symbol y = leader;
    for (std::size_t i = 0; i < in.size(); ++i) {
        y = t[std::size_t{y} * a + in[i]];
        out[i] = y;
    }
    return SymbolString::unchecked(input.alphabet(), std::move(out));
}

SymbolString e_inverse(const OperationTable& op, Symbol leader,
                       const SymbolString& output) {
    if (op.order() != output.order()) fail("alphabet mismatch between table and input");
    check_leader(output.alphabet(), leader);
    const auto in = output.symbols();
    const std::uint32_t a = op.order();
    const auto& inv = op.inverse_entries();
    std::vector<Symbol> out(in.size());
    Symbol prev = leader;
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = inv[std::size_t{prev} * a + in[i]];
        prev = in[i];
    }
    return SymbolString::unchecked(output.alphabet(), std::move(out));
}

SymbolString e_chain(std::span<const EStep> steps, const SymbolString& input) {
    if (steps.empty()) fail("e_chain needs at least one step");
    for (const EStep& step : steps) {
        if (step.op.order() != input.order()) fail("alphabet mismatch in chain step");
    }
    SymbolString current = input;
    for (const EStep& step : steps) {
        current = e_transform(step.op, step.leader, current);
    }
    return current;
}

namespace detail {

void pe_round_encrypt_raw(const ParastropheSet& q, Symbol leader, std::uint64_t d1,
                          std::span<const Symbol> in, std::vector<Symbol>& out) {
    const std::uint32_t a = q.order();
    const std::uint64_t k = in.size();
    out.resize(k);
    std::uint64_t pos = 0;
    std::uint64_t d = d1;
    Symbol lead = leader;
    while (pos < k) {
        const auto& t = q.table(ParastropheIndex(selector_for(d))).entries();
        const std::uint64_t len = std::min(d, k - pos);
        Symbol y = lead;
        for (std::uint64_t j = 0; j < len; ++j) {
            y = t[std::size_t{y} * a + in[pos + j]];
            out[pos + j] = y;
        }
        pos += len;
        if (pos >= k) break;
        // A block with a successor was not clamped, so it has >= 2 symbols.
        assert(len >= 2);
        d = chained_length(a, out[pos - 2], out[pos - 1]);
        lead = out[pos - 1];
    }
}

}  // namespace detail

PERoundResult pe_round_encrypt(const ParastropheSet& q, const RoundParams& params,
                               const SymbolString& message) {
    if (q.order() != message.order()) fail("alphabet mismatch between key and message");
    if (message.empty()) fail("PE is undefined on the empty string");
    check_leader(message.alphabet(), params.leader);
    if (params.first_block_length < 2) {
        fail("first block length must be at least 2, got " +
             std::to_string(params.first_block_length));
    }
    std::vector<Symbol> out;
    detail::pe_round_encrypt_raw(q, params.leader, params.first_block_length,
                                 message.symbols(), out);
    SymbolString cipher = SymbolString::unchecked(message.alphabet(), std::move(out));
    std::vector<BlockRecord> schedule = pe_trace_schedule(q, params, cipher, true);
    return {std::move(cipher), std::move(schedule)};
}

SymbolString pe_round_decrypt(const ParastropheSet& q, const RoundParams& params,
                              const SymbolString& cipher) {
    if (q.order() != cipher.order()) fail("alphabet mismatch between key and cipher");
    if (cipher.empty()) fail("PE is undefined on the empty string");
    check_leader(cipher.alphabet(), params.leader);
    if (params.first_block_length < 2) {
        fail("first block length must be at least 2, got " +
             std::to_string(params.first_block_length));
    }
    const auto in = cipher.symbols();
    const std::uint32_t a = q.order();
    const std::uint64_t k = in.size();
    std::vector<Symbol> out(k);
    std::uint64_t pos = 0;
    std::uint64_t d = params.first_block_length;
    Symbol lead = params.leader;
    while (pos < k) {
        const auto& inv = q.table(ParastropheIndex(selector_for(d))).inverse_entries();
        const std::uint64_t len = std::min(d, k - pos);
        Symbol prev = lead;
        for (std::uint64_t j = 0; j < len; ++j) {
            out[pos + j] = inv[std::size_t{prev} * a + in[pos + j]];
            prev = in[pos + j];
        }
        pos += len;
        if (pos >= k) break;
        d = chained_length(a, in[pos - 2], in[pos - 1]);
        lead = in[pos - 1];
    }
    return SymbolString::unchecked(cipher.alphabet(), std::move(out));
}

SymbolString pe_encrypt(const PEKey& key, const SymbolString& message) {
    if (key.order() != message.order()) fail("alphabet mismatch between key and message");
    if (message.empty()) fail("PE is undefined on the empty string");
    std::vector<Symbol> buf(message.symbols().begin(), message.symbols().end());
    std::vector<Symbol> next;
    for (const RoundParams& params : key.rounds()) {
        detail::pe_round_encrypt_raw(key.parastrophes(), params.leader,
                                     params.first_block_length, buf, next);
        buf.swap(next);
    }
    return SymbolString::unchecked(message.alphabet(), std::move(buf));
}

SymbolString pe_decrypt(const PEKey& key, const SymbolString& cipher) {
    if (key.order() != cipher.order()) fail("alphabet mismatch between key and cipher");
    if (cipher.empty()) fail("PE is undefined on the empty string");
    SymbolString current = cipher;
    const auto rounds = key.rounds();
    for (std::size_t i = rounds.size(); i > 0; --i) {
        current = pe_round_decrypt(key.parastrophes(), rounds[i - 1], current);
    }
    return current;
}

std::vector<BlockRecord> pe_trace_schedule(const ParastropheSet& q,
                                           const RoundParams& params,
                                           const SymbolString& message_or_cipher,
                                           bool from_cipher) {
    if (q.order() != message_or_cipher.order()) fail("alphabet mismatch");
    if (message_or_cipher.empty()) fail("PE is undefined on the empty string");
    if (!from_cipher) {
        return pe_round_encrypt(q, params, message_or_cipher).schedule;
    }
    const auto in = message_or_cipher.symbols();
    const std::uint32_t a = q.order();
    const std::uint64_t k = in.size();
    std::vector<BlockRecord> schedule;
    std::uint64_t pos = 0;
    std::uint64_t d = params.first_block_length;
    Symbol lead = params.leader;
    while (pos < k) {
        const std::uint64_t len = std::min(d, k - pos);
        schedule.push_back({pos + 1, d, len, selector_for(d), lead});
        pos += len;
        if (pos >= k) break;
        d = chained_length(a, in[pos - 2], in[pos - 1]);
        lead = in[pos - 1];
    }
    return schedule;
}

}  // namespace qgc
