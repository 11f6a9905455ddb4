#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace korobov {

/// Resource limits shared by the enumerators. Exceeding any of them raises
/// ResourceError.
struct Caps {
    std::uint64_t frontier = 10'000'000;       // live heap entries in an EigenStream
    std::uint64_t nodes = 100'000'000;         // recursion nodes in lattice counting
    std::uint64_t terms = 100'000;             // terms of a one-dimensional series
    std::uint64_t ranks = 100'000'000;         // N in top_eigenvalues and friends
    std::uint64_t box = 10'000'000;            // cells of a brute-force enumeration box
    std::uint64_t points = 2'000;              // finite point sets in the entropy module
    std::uint64_t exact_points = 256;          // above this, packing falls back to greedy
    std::uint64_t search_nodes = 50'000'000;   // branch-and-bound nodes

    /// Applies "key=value,key=value" overrides. Unknown keys throw DomainError.
    void apply_overrides(std::string_view text);

    /// Defaults overridden by the KOROBOV_TRACT_CAPS environment variable, if set.
    static Caps from_environment();
};

/// Relative tolerance used for exponent tie grouping and threshold tests.
inline constexpr double kExponentTolerance = 1e-12;

}  // namespace korobov
