#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <qgc/quasigroup.hpp>
#include <qgc/transform.hpp>

// Shared fixtures and reference implementations for the test suite. The
// reference routines here recompute results straight from the defining
// identities and recurrences, independently of the code paths they check.
namespace testsupport {

// The order-4 quasigroup used by the worked examples (1-based, row-major).
inline const std::vector<std::uint32_t> kReferenceTable4 = {
    1, 2, 4, 3,
    3, 4, 2, 1,
    4, 3, 1, 2,
    2, 1, 3, 4,
};

inline qgc::OperationTable reference_table() {
    return qgc::OperationTable::from_external(4, kReferenceTable4);
}

// Evaluates the parastrophe f_s(x, y) of a base table by scanning for the
// unique solution of its defining identity.
inline qgc::Symbol scan_parastrophe(const qgc::OperationTable& base, int s,
                                    qgc::Symbol x, qgc::Symbol y) {
    const std::uint32_t a = base.order();
    const auto op = [&](qgc::Symbol p, qgc::Symbol q) {
        return base.entries()[std::size_t{p} * a + q];
    };
    switch (s) {
        case 1: return op(x, y);
        case 2:
            for (qgc::Symbol z = 0; z < a; ++z)
                if (op(x, z) == y) return z;
            break;
        case 3:
            for (qgc::Symbol z = 0; z < a; ++z)
                if (op(z, y) == x) return z;
            break;
        case 4: return op(y, x);
        case 5:
            for (qgc::Symbol z = 0; z < a; ++z)
                if (op(z, x) == y) return z;
            break;
        case 6:
            for (qgc::Symbol z = 0; z < a; ++z)
                if (op(y, z) == x) return z;
            break;
    }
    throw std::logic_error("no parastrophe solution found");
}

struct FlatBlock {
    std::uint64_t start;   // 1-based
    std::uint64_t length;  // planned length d
    int selector;          // (d mod 6) + 1
    qgc::Symbol leader;
};

struct FlatPEResult {
    std::vector<qgc::Symbol> output;
    std::vector<FlatBlock> blocks;
};

// PE round as one flat recurrence y_j = f_{s(j)}(y_{j-1}, x_j) with
// y_0 = leader: because each block's leader is the previous ciphertext
// symbol, only the selector changes at block boundaries. Uses
// scan_parastrophe throughout.
inline FlatPEResult flat_pe_reference(const qgc::OperationTable& base,
                                      qgc::Symbol leader, std::uint64_t d1,
                                      std::span<const qgc::Symbol> x) {
    const std::uint32_t a = base.order();
    FlatPEResult r;
    r.output.resize(x.size());
    std::uint64_t block_start = 0;
    std::uint64_t d = d1;
    int s = static_cast<int>(d % 6) + 1;
    r.blocks.push_back({1, d, s, leader});
    for (std::uint64_t j = 0; j < x.size(); ++j) {
        if (j == block_start + d) {
            block_start = j;
            d = std::uint64_t{a} * (r.output[j - 2] + 1) + (r.output[j - 1] + 1);
            s = static_cast<int>(d % 6) + 1;
            r.blocks.push_back({j + 1, d, s, r.output[j - 1]});
        }
        const qgc::Symbol left = (j == 0) ? leader : r.output[j - 1];
        r.output[j] = scan_parastrophe(base, s, left, x[j]);
    }
    return r;
}

}  // namespace testsupport
