#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgc/quasigroup.hpp"

/// Quasigroup string transformations: the leader-seeded cumulative transform
/// E, its chained composition E^(n), and the block-parastrophic transform PE
/// with full encryption/decryption and schedule introspection.
namespace qgc {

/// A finite string over an alphabet; every element lies in the alphabet's
/// range.
class SymbolString {
public:
    SymbolString(Alphabet alphabet, std::vector<Symbol> symbols);

    /// Skips range validation; caller guarantees symbols < order.
    static SymbolString unchecked(Alphabet alphabet, std::vector<Symbol> symbols);

    /// Builds a string from external 1-based values.
    static SymbolString from_external(std::uint32_t order,
                                      std::span<const std::uint32_t> values);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::uint32_t order() const noexcept { return alphabet_.order(); }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }

    std::vector<std::uint32_t> to_external() const;

    bool operator==(const SymbolString&) const = default;

private:
    struct unchecked_t {};
    SymbolString(Alphabet alphabet, std::vector<Symbol> symbols, unchecked_t);

    Alphabet alphabet_;
    std::vector<Symbol> symbols_;
};

/// Per-round secret parameters of PE: the leader l and the first block
/// length d1 (>= 2). d1 has no message-independent upper bound; the first
/// block is clamped to the message length at encryption time, mirroring the
/// handling of the short final block.
struct RoundParams {
    Symbol leader = 0;
    std::uint64_t first_block_length = 2;
};

/// Encryption key: one quasigroup (with its parastrophes, shared by all
/// rounds) plus per-round (leader, d1) parameters.
class PEKey {
public:
    PEKey(OperationTable table, std::vector<RoundParams> rounds);

    std::uint32_t order() const noexcept { return parastrophes_.order(); }
    const OperationTable& table() const noexcept { return parastrophes_.base(); }
    const ParastropheSet& parastrophes() const noexcept { return parastrophes_; }
    std::span<const RoundParams> rounds() const noexcept { return rounds_; }

private:
    ParastropheSet parastrophes_;
    std::vector<RoundParams> rounds_;
};

/// One PE block's derived schedule entry.
///
/// For block i >= 2 the planned length is a*u + v, where u and v are the
/// 1-based values of the last two ciphertext symbols of the previous block
/// (so a+1 <= planned <= a^2+a), the parastrophe selector is
/// (planned mod 6) + 1, and the leader is the previous block's last
/// ciphertext symbol. The final block may be shorter than planned; a block
/// is never empty (the schedule ends when the message is exhausted).
struct BlockRecord {
    std::uint64_t start = 0;           // 1-based position of the first symbol
    std::uint64_t planned_length = 0;  // d_i
    std::uint64_t actual_length = 0;   // min(d_i, remaining)
    int parastrophe = 1;               // s_i in 1..6
    Symbol leader = 0;                 // internal 0-based symbol
};

/// y_1 = op(l, x_1), y_i = op(y_{i-1}, x_i). Length-preserving bijection;
/// empty input gives empty output.
SymbolString e_transform(const OperationTable& op, Symbol leader,
                         const SymbolString& input);

/// Inverse of e_transform: x_i = solve_right(y_{i-1}, y_i) with y_0 = l.
SymbolString e_inverse(const OperationTable& op, Symbol leader,
                       const SymbolString& output);

/// One link of an E-transformation chain.
struct EStep {
    OperationTable op;
    Symbol leader = 0;
};

/// Applies e_transform once per step, first step first.
SymbolString e_chain(std::span<const EStep> steps, const SymbolString& input);

struct PERoundResult {
    SymbolString output;
    std::vector<BlockRecord> schedule;
};

/// One PE round: the message is split into blocks whose lengths, parastrophe
/// selectors and leaders are chained through the ciphertext as described at
/// BlockRecord, and each block is E-transformed with its selected
/// parastrophe. Rejects empty messages.
PERoundResult pe_round_encrypt(const ParastropheSet& q, const RoundParams& params,
                               const SymbolString& message);

/// Exact inverse of pe_round_encrypt. The block schedule is recomputed
/// directly from the ciphertext (lengths and leaders depend only on
/// ciphertext symbols, which the receiver holds), then each block is
/// inverted with the division table of its parastrophe.
SymbolString pe_round_decrypt(const ParastropheSet& q, const RoundParams& params,
                              const SymbolString& cipher);

/// Applies one PE round per entry of key.rounds(), round 1 first.
SymbolString pe_encrypt(const PEKey& key, const SymbolString& message);

/// Inverse of pe_encrypt; rounds are undone in reverse order.
SymbolString pe_decrypt(const PEKey& key, const SymbolString& cipher);

/// Returns the block schedule without producing output text. With
/// from_cipher the schedule is read off the given ciphertext; otherwise the
/// encryption of the given message is simulated.
std::vector<BlockRecord> pe_trace_schedule(const ParastropheSet& q,
                                           const RoundParams& params,
                                           const SymbolString& message_or_cipher,
                                           bool from_cipher);

namespace detail {
/// Schedule-free PE round over raw spans; out is resized to in.size().
void pe_round_encrypt_raw(const ParastropheSet& q, Symbol leader, std::uint64_t d1,
                          std::span<const Symbol> in, std::vector<Symbol>& out);
}  // namespace detail

}  // namespace qgc
