#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgc/quasigroup.hpp"
#include "qgc/transform.hpp"

/// Frequency analysis of m-tuples, chi-square uniformity testing, the
/// class-structure diagnostic that powers the statistical attack on chained
/// E-transformations, and an exact enumeration oracle for output
/// distributions at desk scale.
namespace qgc {

/// Letter probabilities p_1..p_a of an input source; all p_i > 0 and the
/// total is 1 within 1e-12.
class LetterDistribution {
public:
    explicit LetterDistribution(std::vector<double> probs);

    std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(probs_.size()); }
    std::span<const double> probs() const noexcept { return probs_; }

private:
    std::vector<double> probs_;
};

/// Counts of m-tuples over a string, indexed by lexicographic rank with
/// symbol 1 lowest and the first tuple position most significant
/// (rank of '1 2' is 2 in 1-based terms).
struct NGramDistribution {
    std::uint32_t order = 0;
    std::uint32_t tuple_length = 0;        // m
    std::vector<std::uint64_t> counts;     // size order^m
    std::uint64_t total_windows = 0;       // N
    bool overlapping = false;
};

/// Largest order^m count-table size count_ngrams will allocate.
inline constexpr std::uint64_t kMaxNGramCells = std::uint64_t{1} << 24;

/// Counts all length-m windows of s: stride 1 when overlapping
/// (N = k-m+1), stride m otherwise (N = floor(k/m), trailing partial window
/// ignored).
NGramDistribution count_ngrams(const SymbolString& s, std::uint32_t m, bool overlapping);

struct UniformityReport {
    double statistic = 0.0;
    std::uint64_t degrees_of_freedom = 0;  // order^m - 1
    double p_value = 1.0;
    double l1_distance = 0.0;              // sum_i |c_i/N - 1/order^m|
    double max_deviation = 0.0;            // max_i |c_i/N - 1/order^m|
    double expected_per_cell = 0.0;        // N / order^m
    bool sample_adequate = true;           // expected_per_cell >= 5
};

/// Pearson chi-square test of the counts against the uniform distribution;
/// the p-value is the upper regularized incomplete gamma Q(df/2, stat/2)
/// (see gamma.hpp). Counts from overlapping windows violate the test's
/// independence assumption; prefer non-overlapping counts here.
UniformityReport chi_square_uniformity(const NGramDistribution& d);

struct DistanceToUniform {
    double l1 = 0.0;
    double max_deviation = 0.0;
};

DistanceToUniform distance_to_uniform(const NGramDistribution& d);

/// The theoretical class values p_i / a^n of (n+1)-tuple probabilities after
/// n chained E-transformations, in the order of p. Classes whose p_i
/// coincide merge into one.
std::vector<double> expected_class_means(const LetterDistribution& p, std::uint32_t n);

inline constexpr double kDefaultClassThreshold = 5.0;

/// Class-structure diagnostic over empirical tuple probabilities.
struct ClassReport {
    std::vector<double> sorted_probs;      // descending
    std::vector<std::size_t> boundaries;   // index of the last element of each
                                           // class except the final one
    std::vector<double> class_means;
    std::vector<std::size_t> class_sizes;
    double separation_score = 0.0;
    bool classes_detected = false;
};

/// Sorts the empirical probabilities descending and cuts at the
/// expected_classes-1 largest adjacent gaps. The separation score is the
/// smallest cut gap divided by the largest non-cut adjacent gap (floored at
/// 1/(10N)); classes are detected when the score reaches the threshold.
ClassReport detect_classes(const NGramDistribution& d, std::uint32_t expected_classes,
                           double threshold = kDefaultClassThreshold);

/// Largest plaintext-times-leader enumeration exact_output_distribution
/// accepts: order^(k + rounds) evaluations.
inline constexpr double kMaxExactEnumeration = 1e8;

/// Exact distribution of the output window (Y_t .. Y_{t+m-1}) after applying
/// the PE rounds with the given first-block lengths to a random message:
/// plaintext letters are drawn independently from p and each round's leader
/// is uniform on the alphabet, independent of everything else. Enumerates
/// all order^k plaintexts against all order^n leader tuples; t is 1-based.
std::vector<double> exact_output_distribution(const ParastropheSet& q,
                                              std::span<const std::uint64_t> round_d1,
                                              const LetterDistribution& p,
                                              std::uint32_t k, std::uint32_t m,
                                              std::uint32_t t);

}  // namespace qgc
