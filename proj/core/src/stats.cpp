#include "qgc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qgc/gamma.hpp"

namespace qgc {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// order^m, guarded against overflow and oversized count tables.
std::uint64_t cell_count(std::uint32_t order, std::uint32_t m) {
    std::uint64_t cells = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (cells > kMaxNGramCells / order) {
            fail("tuple space " + std::to_string(order) + "^" + std::to_string(m) +
                 " exceeds the supported table size");
        }
        cells *= order;
    }
    return cells;
}

}  // namespace

LetterDistribution::LetterDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
    if (probs_.size() < 2) fail("letter distribution needs at least 2 probabilities");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p > 0.0)) fail("letter probabilities must be positive");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        fail("letter probabilities sum to " + std::to_string(total) + ", expected 1");
    }
}

NGramDistribution count_ngrams(const SymbolString& s, std::uint32_t m, bool overlapping) {
    if (m < 1 || m > s.size()) {
        fail("tuple length " + std::to_string(m) + " out of range 1.." +
             std::to_string(s.size()));
    }
    const std::uint32_t a = s.order();
    const std::uint64_t cells = cell_count(a, m);
    NGramDistribution d;
    d.order = a;
    d.tuple_length = m;
    d.overlapping = overlapping;
    d.counts.assign(cells, 0);
    const auto sym = s.symbols();
    if (overlapping) {
        const std::uint64_t top = cells / a;
        std::uint64_t idx = 0;
        for (std::uint32_t j = 0; j < m; ++j) idx = idx * a + sym[j];
        d.counts[idx]++;
        for (std::size_t j = m; j < sym.size(); ++j) {
            idx = (idx % top) * a + sym[j];
            d.counts[idx]++;
        }
        d.total_windows = sym.size() - m + 1;
    } else {
        const std::uint64_t windows = sym.size() / m;
        for (std::uint64_t w = 0; w < windows; ++w) {
            std::uint64_t idx = 0;
            for (std::uint32_t j = 0; j < m; ++j) idx = idx * a + sym[w * m + j];
            d.counts[idx]++;
        }
        d.total_windows = windows;
    }
    return d;
}

DistanceToUniform distance_to_uniform(const NGramDistribution& d) {
    if (d.total_windows == 0) fail("empty distribution");
    const double n = static_cast<double>(d.total_windows);
    const double uniform = 1.0 / static_cast<double>(d.counts.size());
    DistanceToUniform out;
    for (std::uint64_t c : d.counts) {
        const double dev = std::fabs(static_cast<double>(c) / n - uniform);
        out.l1 += dev;
        out.max_deviation = std::max(out.max_deviation, dev);
    }
    return out;
}

UniformityReport chi_square_uniformity(const NGramDistribution& d) {
    if (d.total_windows == 0) fail("empty distribution");
    const double n = static_cast<double>(d.total_windows);
    const double expected = n / static_cast<double>(d.counts.size());
    UniformityReport r;
    r.expected_per_cell = expected;
    r.sample_adequate = expected >= 5.0;
    for (std::uint64_t c : d.counts) {
        const double diff = static_cast<double>(c) - expected;
        r.statistic += diff * diff / expected;
    }
    r.degrees_of_freedom = d.counts.size() - 1;
    r.p_value = regularized_gamma_q(static_cast<double>(r.degrees_of_freedom) / 2.0,
                                    r.statistic / 2.0);
    const DistanceToUniform dist = distance_to_uniform(d);
    r.l1_distance = dist.l1;
    r.max_deviation = dist.max_deviation;
    return r;
}

std::vector<double> expected_class_means(const LetterDistribution& p, std::uint32_t n) {
    if (n < 1) fail("round count must be at least 1");
    const double denom = std::pow(static_cast<double>(p.order()), static_cast<double>(n));
    std::vector<double> means(p.probs().begin(), p.probs().end());
    for (double& m : means) m /= denom;
    return means;
}

ClassReport detect_classes(const NGramDistribution& d, std::uint32_t expected_classes,
                           double threshold) {
    if (expected_classes < 2) fail("expected class count must be at least 2");
    if (d.counts.size() < expected_classes) {
        fail("tuple space smaller than the expected class count");
    }
    if (d.total_windows == 0) fail("empty distribution");

    ClassReport r;
    const double n = static_cast<double>(d.total_windows);
    r.sorted_probs.reserve(d.counts.size());
    for (std::uint64_t c : d.counts) r.sorted_probs.push_back(static_cast<double>(c) / n);
    std::sort(r.sorted_probs.begin(), r.sorted_probs.end(), std::greater<>());

    // Adjacent gaps of the descending sequence; cut at the largest ones.
    const std::size_t gaps = r.sorted_probs.size() - 1;
    std::vector<std::size_t> gap_order(gaps);
    std::iota(gap_order.begin(), gap_order.end(), std::size_t{0});
    const auto gap = [&](std::size_t i) {
        return r.sorted_probs[i] - r.sorted_probs[i + 1];
    };
    std::stable_sort(gap_order.begin(), gap_order.end(),
                     [&](std::size_t l, std::size_t rr) { return gap(l) > gap(rr); });

    r.boundaries.assign(gap_order.begin(), gap_order.begin() + (expected_classes - 1));
    std::sort(r.boundaries.begin(), r.boundaries.end());

    double smallest_cut = gap(r.boundaries.front());
    for (std::size_t b : r.boundaries) smallest_cut = std::min(smallest_cut, gap(b));
    double largest_noncut = 0.0;
    for (std::size_t i = expected_classes - 1; i < gaps; ++i) {
        largest_noncut = std::max(largest_noncut, gap(gap_order[i]));
    }
    r.separation_score = smallest_cut / std::max(largest_noncut, 1.0 / (10.0 * n));
    r.classes_detected = r.separation_score >= threshold;

    std::size_t begin = 0;
    for (std::size_t c = 0; c < expected_classes; ++c) {
        const std::size_t end =
            (c + 1 < expected_classes) ? r.boundaries[c] + 1 : r.sorted_probs.size();
        const double mean =
            std::accumulate(r.sorted_probs.begin() + begin, r.sorted_probs.begin() + end, 0.0) /
            static_cast<double>(end - begin);
        r.class_means.push_back(mean);
        r.class_sizes.push_back(end - begin);
        begin = end;
    }
    return r;
}

std::vector<double> exact_output_distribution(const ParastropheSet& q,
                                              std::span<const std::uint64_t> round_d1,
                                              const LetterDistribution& p,
                                              std::uint32_t k, std::uint32_t m,
                                              std::uint32_t t) {
    const std::uint32_t a = q.order();
    if (p.order() != a) fail("letter distribution order does not match the quasigroup");
    if (round_d1.empty()) fail("at least one round is required");
    for (std::uint64_t d1 : round_d1) {
        if (d1 < 2) fail("first block length must be at least 2");
    }
    if (k < 1) fail("message length must be at least 1");
    if (m < 1 || m > k) fail("tuple length out of range");
    if (t < 1 || t + m - 1 > k) fail("position out of range");

    const std::uint32_t n = static_cast<std::uint32_t>(round_d1.size());
    double evaluations = 1.0;
    for (std::uint32_t i = 0; i < k + n; ++i) evaluations *= a;
    if (evaluations > kMaxExactEnumeration) {
        fail("enumeration of " + std::to_string(evaluations) +
             " cases exceeds the supported bound");
    }

    const std::uint64_t cells = cell_count(a, m);
    std::vector<double> dist(cells, 0.0);
    const double leader_weight = 1.0 / std::pow(static_cast<double>(a), n);
    const auto probs = p.probs();

    std::vector<Symbol> plaintext(k, 0);
    std::vector<Symbol> leaders(n, 0);
    std::vector<Symbol> buf, next;
    bool plaintext_done = false;
    while (!plaintext_done) {
        double weight = 1.0;
        for (Symbol x : plaintext) weight *= probs[x];
        weight *= leader_weight;

        std::fill(leaders.begin(), leaders.end(), 0);
        bool leaders_done = false;
        while (!leaders_done) {
            buf.assign(plaintext.begin(), plaintext.end());
            for (std::uint32_t r = 0; r < n; ++r) {
                detail::pe_round_encrypt_raw(q, leaders[r], round_d1[r], buf, next);
                buf.swap(next);
            }
            std::uint64_t rank = 0;
            for (std::uint32_t j = 0; j < m; ++j) rank = rank * a + buf[t - 1 + j];
            dist[rank] += weight;

            leaders_done = true;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (++leaders[i] < a) {
                    leaders_done = false;
                    break;
                }
                leaders[i] = 0;
            }
        }

        plaintext_done = true;
        for (std::uint32_t i = 0; i < k; ++i) {
            if (++plaintext[i] < a) {
                plaintext_done = false;
                break;
            }
            plaintext[i] = 0;
        }
    }
    return dist;
}

}  // namespace qgc
