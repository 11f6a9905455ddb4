#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "korobov/caps.hpp"
#include "korobov/sequences.hpp"

namespace korobov {

/// Frequency h in Z^d.
using MultiIndex = std::vector<std::int64_t>;

/// Log-domain eigenvalue: value = sum_k a_k |h_k|^{b_k}, so that the
/// eigenvalue is omega^value. `index` is the canonical representative
/// (componentwise |h_k|) and `multiplicity` = 2^{#nonzero components} counts
/// its sign variants.
struct Exponent {
    double value = 0.0;
    MultiIndex index;
    std::uint64_t multiplicity = 1;

    double eigenvalue(const WeightSpec& spec) const;
};

/// a |h|^b with the convention 0^b = 0 (also when a is huge).
double coordinate_cost(double a, double b, std::int64_t h);

Exponent exponent(const WeightSpec& spec, std::span<const std::int64_t> h);

/// lambda(k, j): 1 for j = 1, omega^{a_k floor(j/2)^{b_k}} otherwise.
double one_dim_eigenvalue(const WeightSpec& spec, std::size_t k, std::uint64_t j);

/// Canonical index |h| componentwise.
MultiIndex canonical(std::span<const std::int64_t> h);

/// The 2^m sign variants of a canonical index with m nonzero components, in
/// stream order: variant v negates the j-th nonzero component iff bit j of v
/// is set. Variant 0 is the canonical index itself.
std::vector<MultiIndex> signed_variants(std::span<const std::int64_t> canonical_index);

/// Position of a signed frequency among the variants of its canonical index.
std::uint64_t variant_position(std::span<const std::int64_t> h);

/// One canonical index emitted by EigenStream together with the ranks its
/// sign variants occupy in the non-increasing eigenvalue order.
struct SpectrumEntry {
    Exponent exponent;
    std::uint64_t first_rank = 1;  // 1-based
    std::uint64_t last_rank = 1;   // first_rank + multiplicity - 1
};

/// Lazy enumeration of the product spectrum {lambda_{d,j}} in non-increasing
/// eigenvalue order (non-decreasing exponent).
///
/// Best-first search over canonical indices in N_0^d: a popped index whose
/// highest incremented coordinate is i spawns h + e_j for j >= i, so every
/// index has exactly one parent and no visited set is needed. Exponents that
/// agree within `tie_tolerance * max(1, E)` form a tie group, which is
/// emitted in lexicographic order of the canonical index.
///
/// Single owner; not safe to share between threads.
class EigenStream {
public:
    EigenStream(const WeightSpec& spec, std::size_t d, Caps caps = {},
                double tie_tolerance = kExponentTolerance);

    const SpectrumEntry& next();
    /// Exponent value the next call to next() will return.
    double peek_value();

    std::uint64_t emitted_ranks() const noexcept { return emitted_ranks_; }
    std::size_t dimension() const noexcept { return a_.size(); }
    std::size_t frontier_size() const noexcept { return heap_.size(); }

private:
    struct Node {
        double value;
        std::uint32_t last;  // 1-based coordinate incremented last, 0 for the root
        MultiIndex index;
    };
    struct Later {
        bool operator()(const Node& x, const Node& y) const {
            if (x.value != y.value) return x.value > y.value;
            return x.index > y.index;
        }
    };

    double value_of(const MultiIndex& index) const;
    void expand(const Node& node);
    void fill_group();

    std::vector<double> a_;
    std::vector<double> b_;
    Caps caps_;
    double tie_tolerance_;
    std::priority_queue<Node, std::vector<Node>, Later> heap_;
    std::deque<Node> group_;
    SpectrumEntry current_;
    std::uint64_t emitted_ranks_ = 0;
};

/// Canonical entries covering lambda_{d,1..N}: the last entry's last_rank >= N.
std::vector<SpectrumEntry> top_eigenvalues(const WeightSpec& spec, std::size_t d, std::uint64_t N,
                                           const Caps& caps = {});

/// Exponent of each of the ranks 1..N (multiplicities expanded).
std::vector<double> rank_exponents(const WeightSpec& spec, std::size_t d, std::uint64_t N,
                                   const Caps& caps = {});

/// Exhaustive enumeration of all canonical h with E(h) <= E_max, aggregated
/// into (exponent, total multiplicity) pairs sorted by exponent. Exponents
/// within the relative tie tolerance are merged. Test oracle for EigenStream.
std::vector<std::pair<double, std::uint64_t>> brute_force_spectrum(const WeightSpec& spec, std::size_t d,
                                                                   double E_max, const Caps& caps = {});

/// Merges a sorted (exponent, multiplicity) list on tie-tolerance equality.
std::vector<std::pair<double, std::uint64_t>> aggregate_exponents(
    std::vector<std::pair<double, std::uint64_t>> sorted, double tie_tolerance = kExponentTolerance);

}  // namespace korobov
