#include "korobov/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "korobov/errors.hpp"

namespace korobov {

BigCount grid_count(const LpBallQuery& q, const Caps& caps) {
    if (!(q.p > 0.0) || !std::isfinite(q.p)) throw DomainError("p must be a positive real");
    if (!(q.m >= 0.0) || !std::isfinite(q.m)) throw DomainError("m must be a nonnegative real");
    if (q.d < 1) throw DomainError("dimension must be >= 1");
    const std::vector<double> cost(q.d, 1.0);
    const std::vector<double> power(q.d, q.p);
    return count_weighted_lattice<BigCount>(cost, power, q.m, Inequality::NonStrict, caps);
}

double log_count(const BigCount& count) {
    if (count <= 0) return -INFINITY;
    const auto bits = boost::multiprecision::msb(count);
    if (bits < 60) return std::log(count.convert_to<double>());
    const auto shift = bits - 52;
    const BigCount top = count >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

GridCountBound grid_count_log_bound(const LpBallQuery& q, double C_p) {
    if (!(C_p > 0.0)) throw DomainError("C_p must be > 0");
    if (!(q.m >= 1.0)) throw DomainError("the bound needs m >= 1");
    if (q.d < 1) throw DomainError("dimension must be >= 1");
    const double d = static_cast<double>(q.d);
    GridCountBound out;
    out.piecewise = d >= q.m ? C_p * q.m * std::log(2.0 * d / q.m) : C_p * d * std::log(2.0 * q.m / d);
    out.uniform = C_p * d * (std::log(2.0 * d) + std::log(2.0 * q.m));
    return out;
}

double entropy_log_bound(double p, double eps, std::size_t d, double C_p) {
    if (!(p > 0.0) || !(eps > 0.0 && eps < 1.0) || d < 1 || !(C_p > 0.0)) {
        throw DomainError("entropy bound needs p > 0, eps in (0,1), d >= 1, C_p > 0");
    }
    const double scaled = static_cast<double>(d) * std::pow(eps, p);
    if (scaled >= 1.0) return C_p * std::pow(eps, -p) * std::log(2.0 * scaled);
    return C_p * static_cast<double>(d) * std::log(2.0 / scaled);
}

FinitePointSet::FinitePointSet(std::vector<Point> points) : points_(std::move(points)) {
    for (const auto& pt : points_) {
        if (pt.size() != points_.front().size()) throw DomainError("points must share one dimension");
        for (double x : pt) {
            if (!std::isfinite(x)) throw DomainError("point coordinates must be finite");
        }
    }
    if (!points_.empty() && points_.front().empty()) throw DomainError("points must have dimension >= 1");
}

FinitePointSet FinitePointSet::parse(std::istream& in) {
    std::vector<Point> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        Point pt;
        std::string token;
        while (fields >> token) {
            char* end = nullptr;
            double v = std::strtod(token.c_str(), &end);
            if (end != token.c_str() + token.size()) {
                throw DomainError("line " + std::to_string(line_no) + ": cannot parse '" + token + "'");
            }
            pt.push_back(v);
        }
        if (!points.empty() && pt.size() != points.front().size()) {
            throw DomainError("line " + std::to_string(line_no) + ": expected " + std::to_string(points.front().size()) +
                              " coordinates, got " + std::to_string(pt.size()));
        }
        points.push_back(std::move(pt));
    }
    return FinitePointSet(std::move(points));
}

double linf_distance(const Point& x, const Point& y) {
    double out = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) out = std::max(out, std::abs(x[k] - y[k]));
    return out;
}

namespace {

// Fixed-width bitset sized at runtime.
class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1U; }
    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bits& subtract(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    std::size_t intersect_count(const Bits& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            for (auto w = words_[i]; w != 0; w &= w - 1) f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

// Maximum clique with greedy colouring bounds (Tomita-Seki style).
class MaxClique {
public:
    MaxClique(std::vector<Bits> adjacency, std::uint64_t node_cap)
        : adj_(std::move(adjacency)), node_cap_(node_cap) {}

    std::vector<std::size_t> solve(std::vector<std::size_t> initial_best) {
        best_ = std::move(initial_best);
        Bits all(adj_.size());
        for (std::size_t v = 0; v < adj_.size(); ++v) all.set(v);
        expand(all);
        return best_;
    }

private:
    void expand(Bits candidates) {
        if (++nodes_ > node_cap_) {
            throw ResourceError("exact packing search exceeded " + std::to_string(node_cap_) + " nodes");
        }
        std::vector<std::size_t> order;
        std::vector<std::size_t> colour;
        colour_sort(candidates, order, colour);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current_.size() + colour[i] <= best_.size()) return;
            const std::size_t v = order[i];
            current_.push_back(v);
            Bits next = candidates;
            next &= adj_[v];
            if (next.none()) {
                if (current_.size() > best_.size()) best_ = current_;
            } else {
                expand(std::move(next));
            }
            current_.pop_back();
            candidates.reset(v);
        }
    }

    void colour_sort(const Bits& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& colour) const {
        Bits uncoloured = candidates;
        std::size_t c = 0;
        while (!uncoloured.none()) {
            ++c;
            Bits q = uncoloured;
            while (!q.none()) {
                std::size_t v = 0;
                q.for_each([&](std::size_t i) { v = i; });  // highest index first keeps output stable
                q.reset(v);
                q.subtract(adj_[v]);
                uncoloured.reset(v);
                order.push_back(v);
                colour.push_back(c);
            }
        }
    }

    std::vector<Bits> adj_;
    std::uint64_t node_cap_;
    std::uint64_t nodes_ = 0;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

void check_points(const FinitePointSet& points, double eps, const Caps& caps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be a positive real");
    if (points.size() > caps.points) {
        throw ResourceError("point set of " + std::to_string(points.size()) + " exceeds cap " + std::to_string(caps.points));
    }
}

std::vector<std::size_t> greedy_packing(const FinitePointSet& points, double eps) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool separated = std::all_of(chosen.begin(), chosen.end(),
                                     [&](std::size_t j) { return linf_distance(points[i], points[j]) > eps; });
        if (separated) chosen.push_back(i);
    }
    return chosen;
}

class SetCover {
public:
    SetCover(std::vector<Bits> covers, std::vector<Bits> shares, std::size_t points, std::uint64_t node_cap)
        : covers_(std::move(covers)), shares_(std::move(shares)), points_(points), node_cap_(node_cap) {
        covering_.resize(points_);
        for (std::size_t c = 0; c < covers_.size(); ++c) {
            covers_[c].for_each([&](std::size_t p) { covering_[p].push_back(c); });
        }
    }

    std::vector<std::size_t> solve() {
        Bits uncovered(points_);
        for (std::size_t p = 0; p < points_; ++p) uncovered.set(p);
        best_ = greedy(uncovered);
        drop_dominated();
        search(uncovered);
        std::sort(best_.begin(), best_.end());
        return best_;
    }

private:
    std::vector<std::size_t> greedy(Bits uncovered) const {
        std::vector<std::size_t> chosen;
        while (!uncovered.none()) {
            std::size_t best_c = 0, best_gain = 0;
            for (std::size_t c = 0; c < covers_.size(); ++c) {
                const auto gain = uncovered.intersect_count(covers_[c]);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            chosen.push_back(best_c);
            uncovered.subtract(covers_[best_c]);
        }
        return chosen;
    }

    // A candidate whose ball is inside another's is never needed.
    void drop_dominated() {
        std::vector<std::size_t> sizes(covers_.size());
        for (std::size_t c = 0; c < covers_.size(); ++c) sizes[c] = covers_[c].count();
        std::vector<bool> keep(covers_.size(), true);
        for (std::size_t c = 0; c < covers_.size(); ++c) {
            for (std::size_t o = 0; o < covers_.size() && keep[c]; ++o) {
                if (o == c || !keep[o] || sizes[o] < sizes[c]) continue;
                if (sizes[o] == sizes[c] && o > c) continue;
                if (covers_[c].intersect_count(covers_[o]) == sizes[c]) keep[c] = false;
            }
        }
        for (auto& list : covering_) {
            std::erase_if(list, [&](std::size_t c) { return !keep[c]; });
        }
    }

    // Max of two bounds: points pairwise sharing no candidate each need their
    // own ball, and no ball covers more than the largest remaining one.
    std::size_t lower_bound(const Bits& uncovered) const {
        Bits free = uncovered;
        std::size_t independent = 0;
        while (!free.none()) {
            std::size_t v = points_, fewest = static_cast<std::size_t>(-1);
            free.for_each([&](std::size_t i) {
                const auto n = free.intersect_count(shares_[i]);
                if (n < fewest) {
                    fewest = n;
                    v = i;
                }
            });
            ++independent;
            free.subtract(shares_[v]);
            free.reset(v);
        }
        std::size_t widest = 0;
        for (const auto& cover : covers_) widest = std::max(widest, uncovered.intersect_count(cover));
        const std::size_t left = uncovered.count();
        const std::size_t by_size = widest == 0 ? left : (left + widest - 1) / widest;
        return std::max(independent, by_size);
    }

    void search(const Bits& uncovered) {
        if (uncovered.none()) {
            if (current_.size() < best_.size()) best_ = current_;
            return;
        }
        if (++nodes_ > node_cap_) {
            throw ResourceError("exact covering search exceeded " + std::to_string(node_cap_) + " nodes");
        }
        if (current_.size() + lower_bound(uncovered) >= best_.size()) return;

        std::size_t pivot = points_;
        std::size_t fewest = static_cast<std::size_t>(-1);
        uncovered.for_each([&](std::size_t p) {
            if (covering_[p].size() < fewest) {
                fewest = covering_[p].size();
                pivot = p;
            }
        });
        std::vector<std::size_t> options = covering_[pivot];
        std::stable_sort(options.begin(), options.end(), [&](std::size_t x, std::size_t y) {
            return uncovered.intersect_count(covers_[x]) > uncovered.intersect_count(covers_[y]);
        });
        for (std::size_t c : options) {
            Bits rest = uncovered;
            rest.subtract(covers_[c]);
            current_.push_back(c);
            search(rest);
            current_.pop_back();
        }
    }

    std::vector<Bits> covers_;
    std::vector<Bits> shares_;
    std::vector<std::vector<std::size_t>> covering_;
    std::size_t points_;
    std::uint64_t node_cap_;
    std::uint64_t nodes_ = 0;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

}  // namespace

PackingResult packing_max(const FinitePointSet& points, double eps, const Caps& caps) {
    check_points(points, eps, caps);
    PackingResult out;
    auto greedy = greedy_packing(points, eps);
    if (points.size() > caps.exact_points) {
        out.exact = false;
        out.members = std::move(greedy);
    } else {
        std::vector<Bits> adjacency(points.size(), Bits(points.size()));
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t j = i + 1; j < points.size(); ++j) {
                if (linf_distance(points[i], points[j]) > eps) {
                    adjacency[i].set(j);
                    adjacency[j].set(i);
                }
            }
        }
        out.members = MaxClique(std::move(adjacency), caps.search_nodes).solve(std::move(greedy));
        std::sort(out.members.begin(), out.members.end());
    }
    out.size = out.members.size();
    return out;
}

CoveringResult covering_min(const FinitePointSet& points, double eps, const FinitePointSet& candidates,
                            const Caps& caps) {
    check_points(points, eps, caps);
    check_points(candidates, eps, caps);
    CoveringResult out;
    if (points.size() == 0) return out;
    if (candidates.size() == 0 || candidates.dimension() != points.dimension()) {
        throw DomainError("covering is infeasible: no candidate centres of matching dimension");
    }

    const std::size_t n = points.size();
    std::vector<Bits> covers(candidates.size(), Bits(n));
    std::vector<bool> reached(n, false);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (std::size_t p = 0; p < n; ++p) {
            if (linf_distance(candidates[c], points[p]) <= eps) {
                covers[c].set(p);
                reached[p] = true;
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (!reached[p]) {
            throw DomainError("covering is infeasible: point " + std::to_string(p) + " is farther than eps from every candidate");
        }
    }
    std::vector<Bits> shares(n, Bits(n));
    for (const auto& cover : covers) {
        cover.for_each([&](std::size_t p) { shares[p] |= cover; });
    }
    out.centers = SetCover(std::move(covers), std::move(shares), n, caps.search_nodes).solve();
    out.size = out.centers.size();
    return out;
}

bool ChainCheck::holds() const noexcept {
    // A greedy packing is only a lower bound; the left inequality then needs
    // an exact M_{2 eps}, the right one only needs M_eps >= what was found.
    if (!packing_2eps.exact) return false;
    return packing_2eps.size <= covering_eps.size && covering_eps.size <= packing_eps.size;
}

ChainCheck chain_check(const FinitePointSet& points, double eps, const Caps& caps) {
    ChainCheck out;
    out.packing_2eps = packing_max(points, 2.0 * eps, caps);
    out.covering_eps = covering_min(points, eps, points, caps);
    out.packing_eps = packing_max(points, eps, caps);
    return out;
}

}  // namespace korobov
