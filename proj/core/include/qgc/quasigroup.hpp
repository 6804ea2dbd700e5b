#pragma once

#include <cstdint>
#include <span>
#include <vector>

/// Finite quasigroups represented as Latin-square operation tables, their six
/// parastrophes (conjugate operations), and O(1) division lookups.
///
/// Symbols are stored 0-based internally. All file formats and user-facing
/// values use the 1-based convention (external = internal + 1); conversion
/// happens only at I/O boundaries (see codec.hpp).
namespace qgc {

/// Internal 0-based symbol. The alphabet {1..a} maps to {0..a-1}.
using Symbol = std::uint32_t;

/// Symbol alphabet of a given order a >= 2.
class Alphabet {
public:
    explicit Alphabet(std::uint32_t order);

    std::uint32_t order() const noexcept { return order_; }
    bool contains(Symbol s) const noexcept { return s < order_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::uint32_t order_;
};

class ParastropheIndex;

/// A binary operation on {0..a-1} whose a-by-a Cayley table is a Latin
/// square, i.e. x*u=v and u*y=v are uniquely solvable. Division by the right
/// operand is precomputed at construction so both apply() and solve_right()
/// are single table lookups.
class OperationTable {
public:
    /// Validates a row-major table given with external 1-based entries.
    /// Throws std::invalid_argument on dimension mismatch, out-of-range
    /// entries, or a duplicate in any row or column (reported with the
    /// offending 1-based index).
    static OperationTable from_external(std::uint32_t order,
                                        std::span<const std::uint32_t> raw);

    /// Same validation for a table already in internal 0-based form.
    static OperationTable from_internal(std::uint32_t order,
                                        std::vector<Symbol> entries);

    std::uint32_t order() const noexcept { return order_; }

    /// op(x, y), bounds-checked.
    Symbol apply(Symbol x, Symbol y) const;

    /// The unique x with op(u, x) = v, bounds-checked. This is the inverse
    /// used to undo a transformation step: if op(u, x) = v then
    /// solve_right(u, v) = x.
    Symbol solve_right(Symbol u, Symbol v) const;

    /// Row-major table entries (size order^2); entry(x,y) at x*order+y.
    const std::vector<Symbol>& entries() const noexcept { return table_; }

    /// Row-major right-division entries: inverse_entries()[u*order+v] is the
    /// unique x with op(u,x)=v.
    const std::vector<Symbol>& inverse_entries() const noexcept { return inverse_; }

    bool operator==(const OperationTable& other) const noexcept {
        return order_ == other.order_ && table_ == other.table_;
    }

private:
    OperationTable(std::uint32_t order, std::vector<Symbol> table);

    // Parastrophes of a valid table are valid; derivation skips revalidation.
    friend OperationTable derive_parastrophe(const OperationTable& base,
                                             ParastropheIndex s);

    std::uint32_t order_;
    std::vector<Symbol> table_;
    std::vector<Symbol> inverse_;
};

/// Selects one of the six parastrophes f1..f6 of a quasigroup operation *:
///
///   f1(x,y) = x*y
///   f2(x,y) = z  <=>  x*z = y      (left division x\y)
///   f3(x,y) = z  <=>  z*y = x      (right division x/y)
///   f4(x,y) = y*x                  (transpose)
///   f5(x,y) = z  <=>  z*x = y
///   f6(x,y) = z  <=>  y*z = x
class ParastropheIndex {
public:
    explicit ParastropheIndex(int index);
    int value() const noexcept { return index_; }

    bool operator==(const ParastropheIndex&) const = default;

private:
    int index_;
};

/// Derives the table of the parastrophe f_s from a base operation.
/// Parastrophes of a quasigroup are quasigroups, so the result is again a
/// valid Latin square.
OperationTable derive_parastrophe(const OperationTable& base, ParastropheIndex s);

/// All six parastrophes of a base operation, precomputed (tables and
/// division lookups) so that applying any f_s during encryption is O(1).
class ParastropheSet {
public:
    explicit ParastropheSet(OperationTable base);

    std::uint32_t order() const noexcept { return tables_.front().order(); }

    /// f1, the base operation itself.
    const OperationTable& base() const noexcept { return tables_.front(); }

    const OperationTable& table(ParastropheIndex s) const noexcept {
        return tables_[static_cast<std::size_t>(s.value()) - 1];
    }

private:
    std::vector<OperationTable> tables_;  // f1..f6
};

/// Deterministically generates an order-a Latin square from a seed by
/// applying independent uniformly drawn row, column and symbol permutations
/// to the cyclic-group table (x+y mod a). This does not sample uniformly
/// over all quasigroups of order a; it samples the isotopy class of the
/// cyclic group.
OperationTable random_quasigroup(std::uint32_t order, std::uint64_t seed);

}  // namespace qgc
