#include "korobov/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "korobov/errors.hpp"

namespace korobov {

double coordinate_cost(double a, double b, std::int64_t h) {
    if (h == 0) return 0.0;
    const double x = static_cast<double>(h < 0 ? -h : h);
    return a * (b == 1.0 ? x : std::pow(x, b));
}

double Exponent::eigenvalue(const WeightSpec& spec) const {
    return std::pow(spec.omega(), value);
}

Exponent exponent(const WeightSpec& spec, std::span<const std::int64_t> h) {
    Exponent e;
    e.index.resize(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        const std::int64_t x = h[k] < 0 ? -h[k] : h[k];
        e.index[k] = x;
        if (x != 0) {
            e.value += coordinate_cost(spec.eval_a(k + 1), spec.eval_b(k + 1), x);
            e.multiplicity *= 2;
        }
    }
    return e;
}

double one_dim_eigenvalue(const WeightSpec& spec, std::size_t k, std::uint64_t j) {
    if (k < 1 || j < 1) throw DomainError("one_dim_eigenvalue: k and j must be >= 1");
    if (j == 1) return 1.0;
    const auto half = static_cast<std::int64_t>(j / 2);
    return std::pow(spec.omega(), coordinate_cost(spec.eval_a(k), spec.eval_b(k), half));
}

MultiIndex canonical(std::span<const std::int64_t> h) {
    MultiIndex out(h.begin(), h.end());
    for (auto& x : out) x = x < 0 ? -x : x;
    return out;
}

std::vector<MultiIndex> signed_variants(std::span<const std::int64_t> canonical_index) {
    std::vector<std::size_t> nonzero;
    for (std::size_t k = 0; k < canonical_index.size(); ++k) {
        if (canonical_index[k] != 0) nonzero.push_back(k);
    }
    const std::uint64_t count = std::uint64_t{1} << nonzero.size();
    std::vector<MultiIndex> out;
    out.reserve(count);
    for (std::uint64_t v = 0; v < count; ++v) {
        MultiIndex h(canonical_index.begin(), canonical_index.end());
        for (std::size_t j = 0; j < nonzero.size(); ++j) {
            if (v >> j & 1U) h[nonzero[j]] = -h[nonzero[j]];
        }
        out.push_back(std::move(h));
    }
    return out;
}

std::uint64_t variant_position(std::span<const std::int64_t> h) {
    std::uint64_t v = 0;
    std::size_t j = 0;
    for (auto x : h) {
        if (x == 0) continue;
        if (x < 0) v |= std::uint64_t{1} << j;
        ++j;
    }
    return v;
}

EigenStream::EigenStream(const WeightSpec& spec, std::size_t d, Caps caps, double tie_tolerance)
    : a_(spec.a_prefix(d)), b_(spec.b_prefix(d)), caps_(caps), tie_tolerance_(tie_tolerance) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    if (d > 64) throw DomainError("dimension must be <= 64");
    heap_.push(Node{0.0, 0, MultiIndex(d, 0)});
}

double EigenStream::value_of(const MultiIndex& index) const {
    double value = 0.0;
    for (std::size_t k = 0; k < index.size(); ++k) value += coordinate_cost(a_[k], b_[k], index[k]);
    return value;
}

void EigenStream::expand(const Node& node) {
    const std::size_t d = a_.size();
    for (std::size_t i = std::max<std::uint32_t>(node.last, 1); i <= d; ++i) {
        MultiIndex child = node.index;
        ++child[i - 1];
        const double value = value_of(child);
        if (!std::isfinite(value)) continue;
        heap_.push(Node{value, static_cast<std::uint32_t>(i), std::move(child)});
    }
    if (heap_.size() > caps_.frontier) {
        throw ResourceError("eigenvalue frontier exceeded cap of " + std::to_string(caps_.frontier) + " entries");
    }
}

void EigenStream::fill_group() {
    if (heap_.empty()) throw ResourceError("eigenvalue stream exhausted (all remaining exponents are infinite)");
    Node first = heap_.top();
    heap_.pop();
    expand(first);
    const double limit = first.value + tie_tolerance_ * std::max(1.0, first.value);
    group_.push_back(std::move(first));
    while (!heap_.empty() && heap_.top().value <= limit) {
        Node tied = heap_.top();
        heap_.pop();
        expand(tied);
        group_.push_back(std::move(tied));
    }
    std::sort(group_.begin(), group_.end(), [](const Node& x, const Node& y) { return x.index < y.index; });
}

const SpectrumEntry& EigenStream::next() {
    if (group_.empty()) fill_group();
    Node node = std::move(group_.front());
    group_.pop_front();

    std::uint64_t multiplicity = 1;
    for (auto x : node.index) {
        if (x != 0) multiplicity *= 2;
    }
    current_.exponent.value = node.value;
    current_.exponent.index = std::move(node.index);
    current_.exponent.multiplicity = multiplicity;
    current_.first_rank = emitted_ranks_ + 1;
    current_.last_rank = emitted_ranks_ + multiplicity;
    emitted_ranks_ += multiplicity;
    return current_;
}

double EigenStream::peek_value() {
    if (group_.empty()) fill_group();
    return group_.front().value;
}

std::vector<SpectrumEntry> top_eigenvalues(const WeightSpec& spec, std::size_t d, std::uint64_t N,
                                           const Caps& caps) {
    if (N < 1) throw DomainError("N must be >= 1");
    if (N > caps.ranks) throw ResourceError("N=" + std::to_string(N) + " exceeds rank cap " + std::to_string(caps.ranks));
    EigenStream stream(spec, d, caps);
    std::vector<SpectrumEntry> out;
    while (stream.emitted_ranks() < N) out.push_back(stream.next());
    return out;
}

std::vector<double> rank_exponents(const WeightSpec& spec, std::size_t d, std::uint64_t N, const Caps& caps) {
    if (N > caps.ranks) throw ResourceError("N=" + std::to_string(N) + " exceeds rank cap " + std::to_string(caps.ranks));
    std::vector<double> out;
    out.reserve(N);
    if (N == 0) return out;
    EigenStream stream(spec, d, caps);
    while (out.size() < N) {
        const auto& entry = stream.next();
        for (std::uint64_t r = 0; r < entry.exponent.multiplicity && out.size() < N; ++r) {
            out.push_back(entry.exponent.value);
        }
    }
    return out;
}

std::vector<std::pair<double, std::uint64_t>> aggregate_exponents(std::vector<std::pair<double, std::uint64_t>> sorted,
                                                                  double tie_tolerance) {
    std::vector<std::pair<double, std::uint64_t>> out;
    for (const auto& [value, mult] : sorted) {
        if (!out.empty() && value - out.back().first <= tie_tolerance * std::max(1.0, out.back().first)) {
            out.back().second += mult;
        } else {
            out.emplace_back(value, mult);
        }
    }
    return out;
}

std::vector<std::pair<double, std::uint64_t>> brute_force_spectrum(const WeightSpec& spec, std::size_t d,
                                                                   double E_max, const Caps& caps) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    if (!(E_max >= 0.0)) throw DomainError("E_max must be >= 0");
    const double limit = E_max + kExponentTolerance * std::max(1.0, E_max);
    const auto a = spec.a_prefix(d);
    const auto b = spec.b_prefix(d);

    std::vector<std::int64_t> extent(d);
    double cells = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double r = std::ceil(std::pow(E_max / a[k], 1.0 / b[k]));
        extent[k] = static_cast<std::int64_t>(std::min(r, 1e15));
        cells *= static_cast<double>(extent[k] + 1);
    }
    if (cells > static_cast<double>(caps.box)) {
        throw ResourceError("brute-force box of " + std::to_string(cells) + " cells exceeds cap " + std::to_string(caps.box));
    }

    std::vector<std::pair<double, std::uint64_t>> found;
    std::vector<std::int64_t> h(d, 0);
    while (true) {
        double value = 0.0;
        std::uint64_t mult = 1;
        for (std::size_t k = 0; k < d; ++k) {
            if (h[k] != 0) {
                value += coordinate_cost(a[k], b[k], h[k]);
                mult *= 2;
            }
        }
        if (value <= limit) found.emplace_back(value, mult);

        std::size_t k = 0;
        while (k < d && h[k] == extent[k]) h[k++] = 0;
        if (k == d) break;
        ++h[k];
    }
    std::sort(found.begin(), found.end());
    return aggregate_exponents(std::move(found));
}

}  // namespace korobov
