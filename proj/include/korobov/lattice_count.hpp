#pragma once

#include <cstdint>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "korobov/caps.hpp"

namespace korobov {

using BigCount = boost::multiprecision::cpp_int;

enum class Inequality {
    Strict,     // sum < budget; |sum - budget| <= tol * max(1, budget) is NOT counted
    NonStrict,  // sum <= budget; |sum - budget| <= tol * max(1, budget) IS counted
};

/// Number of h in Z^d with sum_k cost_k |h_k|^{power_k} below the budget.
///
/// Coordinates are visited in decreasing cost order with per-branch budget
/// pruning; the cheapest coordinate is counted in closed form and sign
/// variants are counted by multiplicity. Sub-counts are memoized on the exact
/// remaining budget, which collapses the recursion when costs repeat.
///
/// Count is std::uint64_t (ResourceError on overflow) or BigCount. Throws
/// ResourceError when more than caps.nodes recursion nodes are expanded.
template <class Count>
Count count_weighted_lattice(std::span<const double> cost, std::span<const double> power, double budget,
                             Inequality inequality, const Caps& caps = {});

extern template std::uint64_t count_weighted_lattice<std::uint64_t>(std::span<const double>, std::span<const double>,
                                                                    double, Inequality, const Caps&);
extern template BigCount count_weighted_lattice<BigCount>(std::span<const double>, std::span<const double>, double,
                                                          Inequality, const Caps&);

}  // namespace korobov
