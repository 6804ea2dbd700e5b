#include "qgc/quasigroup.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "rng.hpp"

namespace qgc {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Checks that every row and every column of a 0-based table is a permutation
// of 0..order-1. Indices in messages are 1-based.
void check_latin_square(std::uint32_t order, const std::vector<Symbol>& t) {
    std::vector<bool> seen(order);
    for (std::uint32_t r = 0; r < order; ++r) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::uint32_t c = 0; c < order; ++c) {
            const Symbol v = t[std::size_t{r} * order + c];
            if (v >= order) {
                fail("entry " + std::to_string(v + 1) + " out of range 1.." +
                     std::to_string(order) + " at row " + std::to_string(r + 1) +
                     " column " + std::to_string(c + 1));
            }
            if (seen[v]) fail("duplicate in row " + std::to_string(r + 1));
            seen[v] = true;
        }
    }
    for (std::uint32_t c = 0; c < order; ++c) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::uint32_t r = 0; r < order; ++r) {
            const Symbol v = t[std::size_t{r} * order + c];
            if (seen[v]) fail("duplicate in column " + std::to_string(c + 1));
            seen[v] = true;
        }
    }
}

}  // namespace

Alphabet::Alphabet(std::uint32_t order) : order_(order) {
    if (order < 2) fail("alphabet order must be at least 2, got " + std::to_string(order));
}

OperationTable::OperationTable(std::uint32_t order, std::vector<Symbol> table)
    : order_(order), table_(std::move(table)), inverse_(table_.size()) {
    for (std::uint32_t u = 0; u < order_; ++u) {
        for (Symbol x = 0; x < order_; ++x) {
            inverse_[std::size_t{u} * order_ + table_[std::size_t{u} * order_ + x]] = x;
        }
    }
}

OperationTable OperationTable::from_external(std::uint32_t order,
                                             std::span<const std::uint32_t> raw) {
    if (order < 2) fail("table order must be at least 2, got " + std::to_string(order));
    if (raw.size() != std::size_t{order} * order) {
        fail("dimension mismatch: got " + std::to_string(raw.size()) +
             " entries, need " + std::to_string(std::size_t{order} * order) +
             " for order " + std::to_string(order));
    }
    std::vector<Symbol> internal(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] < 1 || raw[i] > order) {
            fail("entry " + std::to_string(raw[i]) + " out of range 1.." +
                 std::to_string(order) + " at row " + std::to_string(i / order + 1) +
                 " column " + std::to_string(i % order + 1));
        }
        internal[i] = raw[i] - 1;
    }
    check_latin_square(order, internal);
    return OperationTable(order, std::move(internal));
}

OperationTable OperationTable::from_internal(std::uint32_t order,
                                             std::vector<Symbol> entries) {
    if (order < 2) fail("table order must be at least 2, got " + std::to_string(order));
    if (entries.size() != std::size_t{order} * order) {
        fail("dimension mismatch: got " + std::to_string(entries.size()) +
             " entries, need " + std::to_string(std::size_t{order} * order) +
             " for order " + std::to_string(order));
    }
    check_latin_square(order, entries);
    return OperationTable(order, std::move(entries));
}

Symbol OperationTable::apply(Symbol x, Symbol y) const {
    if (x >= order_ || y >= order_) fail("symbol out of range for order " + std::to_string(order_));
    return table_[std::size_t{x} * order_ + y];
}

Symbol OperationTable::solve_right(Symbol u, Symbol v) const {
    if (u >= order_ || v >= order_) fail("symbol out of range for order " + std::to_string(order_));
    return inverse_[std::size_t{u} * order_ + v];
}

ParastropheIndex::ParastropheIndex(int index) : index_(index) {
    if (index < 1 || index > 6) {
        fail("parastrophe index must be in 1..6, got " + std::to_string(index));
    }
}

OperationTable derive_parastrophe(const OperationTable& base, ParastropheIndex s) {
    const std::uint32_t a = base.order();
    const auto& t = base.entries();
    std::vector<Symbol> out(t.size());
    const auto at = [a](std::vector<Symbol>& v, Symbol x, Symbol y) -> Symbol& {
        return v[std::size_t{x} * a + y];
    };
    switch (s.value()) {
        case 1:
            return base;
        case 2:  // f2(x, x*z) = z
            for (Symbol x = 0; x < a; ++x)
                for (Symbol z = 0; z < a; ++z) at(out, x, t[std::size_t{x} * a + z]) = z;
            break;
        case 3:  // f3(z*y, y) = z
            for (Symbol z = 0; z < a; ++z)
                for (Symbol y = 0; y < a; ++y) at(out, t[std::size_t{z} * a + y], y) = z;
            break;
        case 4:  // f4(x, y) = y*x
            for (Symbol x = 0; x < a; ++x)
                for (Symbol y = 0; y < a; ++y) at(out, x, y) = t[std::size_t{y} * a + x];
            break;
        case 5:  // f5(x, z*x) = z
            for (Symbol z = 0; z < a; ++z)
                for (Symbol x = 0; x < a; ++x) at(out, x, t[std::size_t{z} * a + x]) = z;
            break;
        case 6:  // f6(y*z, y) = z
            for (Symbol y = 0; y < a; ++y)
                for (Symbol z = 0; z < a; ++z) at(out, t[std::size_t{y} * a + z], y) = z;
            break;
    }
    return OperationTable(a, std::move(out));
}

ParastropheSet::ParastropheSet(OperationTable base) {
    tables_.reserve(6);
    tables_.push_back(std::move(base));
    for (int s = 2; s <= 6; ++s) {
        tables_.push_back(derive_parastrophe(tables_.front(), ParastropheIndex(s)));
    }
}

OperationTable random_quasigroup(std::uint32_t order, std::uint64_t seed) {
    if (order < 2) fail("quasigroup order must be at least 2, got " + std::to_string(order));
    std::mt19937_64 rng(seed);
    std::vector<Symbol> rows(order), cols(order), syms(order);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::iota(syms.begin(), syms.end(), 0);
    detail::fisher_yates(rows, rng);
    detail::fisher_yates(cols, rng);
    detail::fisher_yates(syms, rng);
    std::vector<Symbol> t(std::size_t{order} * order);
    for (std::uint32_t x = 0; x < order; ++x) {
        for (std::uint32_t y = 0; y < order; ++y) {
            t[std::size_t{x} * order + y] =
                syms[(std::uint64_t{rows[x]} + cols[y]) % order];
        }
    }
    return OperationTable::from_internal(order, std::move(t));
}

}  // namespace qgc
