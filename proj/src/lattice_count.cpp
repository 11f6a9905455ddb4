#include "korobov/lattice_count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "korobov/errors.hpp"
#include "korobov/spectrum.hpp"

namespace korobov {

namespace {

void add_into(std::uint64_t& acc, std::uint64_t v) {
    if (__builtin_add_overflow(acc, v, &acc)) throw ResourceError("lattice count exceeds 64-bit range");
}
std::uint64_t scaled(std::uint64_t v, std::uint64_t factor) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(v, factor, &out)) throw ResourceError("lattice count exceeds 64-bit range");
    return out;
}
void add_into(BigCount& acc, const BigCount& v) { acc += v; }
BigCount scaled(const BigCount& v, std::uint64_t factor) { return v * factor; }

constexpr std::size_t kMemoLimit = 4'000'000;

template <class Count>
class LatticeCounter {
public:
    LatticeCounter(std::vector<double> cost, std::vector<double> power, bool strict, const Caps& caps)
        : cost_(std::move(cost)), power_(std::move(power)), strict_(strict), caps_(caps), memo_(cost_.size()) {}

    Count count(std::size_t level, double remaining) {
        if (level + 1 == cost_.size()) return Count(last_level(remaining));

        auto& memo = memo_[level];
        const auto key = std::bit_cast<std::uint64_t>(remaining);
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        if (++nodes_ > caps_.nodes) {
            throw ResourceError("lattice recursion exceeded node cap of " + std::to_string(caps_.nodes));
        }
        Count total = 0;
        for (std::int64_t h = 0;; ++h) {
            const double term = coordinate_cost(cost_[level], power_[level], h);
            if (!admits(term, remaining)) break;
            Count sub = count(level + 1, remaining - term);
            add_into(total, h == 0 ? sub : scaled(sub, 2));
        }
        if (memo_size_ < kMemoLimit) {
            memo.emplace(key, total);
            ++memo_size_;
        }
        return total;
    }

private:
    bool admits(double term, double remaining) const { return strict_ ? term < remaining : term <= remaining; }

    // Number of integers h with cost |h|^power admitted by `remaining`.
    std::uint64_t last_level(double remaining) const {
        const double a = cost_.back();
        const double b = power_.back();
        if (!admits(0.0, remaining)) return 0;
        const double guess = std::floor(std::pow(remaining / a, 1.0 / b));
        if (!(guess < 4e15)) throw ResourceError("lattice coordinate range exceeds 2^52");
        auto x = static_cast<std::int64_t>(std::max(guess, 0.0));
        while (admits(coordinate_cost(a, b, x + 1), remaining)) ++x;
        while (x > 0 && !admits(coordinate_cost(a, b, x), remaining)) --x;
        return 2 * static_cast<std::uint64_t>(x) + 1;
    }

    std::vector<double> cost_;
    std::vector<double> power_;
    bool strict_;
    const Caps& caps_;
    std::vector<std::unordered_map<std::uint64_t, Count>> memo_;
    std::size_t memo_size_ = 0;
    std::uint64_t nodes_ = 0;
};

}  // namespace

template <class Count>
Count count_weighted_lattice(std::span<const double> cost, std::span<const double> power, double budget,
                             Inequality inequality, const Caps& caps) {
    if (cost.size() != power.size()) throw DomainError("cost and power must have the same length");
    if (cost.empty()) throw DomainError("dimension must be >= 1");
    if (!std::isfinite(budget)) throw DomainError("budget must be finite");

    std::vector<std::size_t> order(cost.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return cost[i] > cost[j]; });
    std::vector<double> sorted_cost, sorted_power;
    for (auto i : order) {
        if (!(cost[i] > 0.0) || !(power[i] > 0.0)) throw DomainError("costs and powers must be positive");
        sorted_cost.push_back(cost[i]);
        sorted_power.push_back(power[i]);
    }

    const bool strict = inequality == Inequality::Strict;
    const double slack = kExponentTolerance * std::max(1.0, std::abs(budget));
    const double remaining = strict ? budget - slack : budget + slack;

    LatticeCounter<Count> counter(std::move(sorted_cost), std::move(sorted_power), strict, caps);
    return counter.count(0, remaining);
}

template std::uint64_t count_weighted_lattice<std::uint64_t>(std::span<const double>, std::span<const double>, double,
                                                             Inequality, const Caps&);
template BigCount count_weighted_lattice<BigCount>(std::span<const double>, std::span<const double>, double,
                                                   Inequality, const Caps&);

}  // namespace korobov
