#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "korobov/errors.hpp"
#include "korobov/spectrum.hpp"

using namespace korobov;

namespace {

WeightSpec linear() { return {0.5, SequenceFamily::power(1, 1), SequenceFamily::constant(1)}; }
WeightSpec two_coord() { return {0.5, SequenceFamily::explicit_list({1, 2}), SequenceFamily::constant(1)}; }

std::vector<double> eigenvalues(const WeightSpec& spec, std::size_t d, std::uint64_t n) {
    std::vector<double> out;
    for (double e : rank_exponents(spec, d, n)) out.push_back(std::pow(spec.omega(), e));
    return out;
}

// Independent oracle: full signed box enumeration of Z^d, sorted exponents.
std::vector<double> signed_box_exponents(const WeightSpec& spec, std::size_t d, double e_max) {
    std::vector<std::int64_t> bound(d);
    for (std::size_t k = 0; k < d; ++k) {
        bound[k] = static_cast<std::int64_t>(std::floor(std::pow(e_max / spec.eval_a(k + 1), 1.0 / spec.eval_b(k + 1))));
    }
    std::vector<double> out;
    std::vector<std::int64_t> h(d);
    for (std::size_t k = 0; k < d; ++k) h[k] = -bound[k];
    while (true) {
        double e = 0;
        for (std::size_t k = 0; k < d; ++k) {
            if (h[k] != 0) e += spec.eval_a(k + 1) * std::pow(std::abs(static_cast<double>(h[k])), spec.eval_b(k + 1));
        }
        if (e <= e_max * (1 + 1e-12)) out.push_back(e);
        std::size_t k = 0;
        while (k < d && h[k] == bound[k]) h[k] = -bound[k], ++k;
        if (k == d) break;
        ++h[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("one_dim_eigenvalue examples") {
    auto spec = linear();
    CHECK(one_dim_eigenvalue(spec, 1, 1) == 1.0);
    CHECK(one_dim_eigenvalue(spec, 1, 2) == 0.5);
    CHECK(one_dim_eigenvalue(spec, 1, 3) == 0.5);
    CHECK(one_dim_eigenvalue(spec, 2, 4) == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("exponent examples") {
    auto spec = two_coord();
    std::vector<std::int64_t> zero{0, 0, 0};
    auto e0 = exponent(linear(), zero);
    CHECK(e0.value == 0.0);
    CHECK(e0.multiplicity == 1);
    std::vector<std::int64_t> h{3, -1};
    auto e = exponent(spec, h);
    CHECK(e.value == 5.0);
    CHECK(e.multiplicity == 4);
    CHECK(e.index == MultiIndex{3, 1});
    WeightSpec sq(0.5, SequenceFamily::constant(1), SequenceFamily::constant(2));
    std::vector<std::int64_t> h3{3};
    CHECK(exponent(sq, h3).value == 9.0);
}

TEST_CASE("top_eigenvalues examples") {
    CHECK(eigenvalues(linear(), 1, 5) == std::vector<double>{1, 0.5, 0.5, 0.25, 0.25});
    CHECK(eigenvalues(two_coord(), 2, 4) == std::vector<double>{1, 0.5, 0.5, 0.25});
    for (std::size_t d = 1; d <= 6; ++d) CHECK(eigenvalues(linear(), d, 1) == std::vector<double>{1});
    Caps caps;
    caps.ranks = 10;
    CHECK_THROWS_AS(top_eigenvalues(linear(), 1, 11, caps), ResourceError);
}

TEST_CASE("brute_force_spectrum examples") {
    using V = std::vector<std::pair<double, std::uint64_t>>;
    CHECK(brute_force_spectrum(linear(), 1, 2) == V{{0, 1}, {1, 2}, {2, 2}});
    CHECK(brute_force_spectrum(linear(), 3, 0) == V{{0, 1}});
    CHECK(brute_force_spectrum(two_coord(), 2, 2) == V{{0, 1}, {1, 2}, {2, 4}});
    Caps caps;
    caps.box = 100;
    CHECK_THROWS_AS(brute_force_spectrum(linear(), 4, 12, caps), ResourceError);
}

TEST_CASE("stream matches signed box enumeration") {
    const WeightSpec specs[] = {
        linear(),
        {0.3, SequenceFamily::constant(1), SequenceFamily::constant(1)},
        {0.7, SequenceFamily::log_power(1, 1), SequenceFamily::power(1, 0.5)},
        {0.5, SequenceFamily::power(0.5, 0.5), SequenceFamily::explicit_list({2, 0.7, 1.5})},
    };
    for (const auto& spec : specs) {
        for (std::size_t d = 1; d <= 3; ++d) {
            const double e_max = 6;
            auto oracle = signed_box_exponents(spec, d, e_max);
            EigenStream stream(spec, d);
            std::vector<double> got;
            while (stream.peek_value() <= e_max * (1 + 1e-12)) {
                const auto& entry = stream.next();
                for (auto r = entry.first_rank; r <= entry.last_rank; ++r) got.push_back(entry.exponent.value);
            }
            REQUIRE(got.size() == oracle.size());
            for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("stream invariants") {
    WeightSpec spec(0.5, SequenceFamily::power(1, 0.7), SequenceFamily::log_power(1.5, 0.5));
    EigenStream a(spec, 4), b(spec, 4);
    double prev = -1;
    std::uint64_t ranks = 0;
    std::map<MultiIndex, int> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto ea = a.next();
        const auto& eb = b.next();
        CHECK(ea.exponent.value == eb.exponent.value);
        CHECK(ea.exponent.index == eb.exponent.index);
        CHECK(ea.exponent.value >= prev);
        prev = ea.exponent.value;
        CHECK(ea.first_rank == ranks + 1);
        ranks = ea.last_rank;
        CHECK(++seen[ea.exponent.index] == 1);
        const auto nonzero = std::count_if(ea.exponent.index.begin(), ea.exponent.index.end(), [](auto x) { return x != 0; });
        CHECK(ea.exponent.multiplicity == (std::uint64_t{1} << nonzero));
    }
    CHECK(EigenStream(spec, 4).next().exponent.eigenvalue(spec) == 1.0);
}

TEST_CASE("tensor consistency") {
    WeightSpec spec(0.5, SequenceFamily::power(1, 1), SequenceFamily::constant(1));
    auto full = brute_force_spectrum(spec, 3, 8);
    auto first = brute_force_spectrum(spec, 2, 8);
    // The third coordinate alone has a_3 = 3.
    for (const auto& [e, mult] : full) {
        bool found = false;
        for (const auto& [e1, m1] : first) {
            for (std::int64_t h = 0; 3.0 * h + e1 <= e + 1e-9; ++h) {
                if (std::abs(3.0 * h + e1 - e) < 1e-9) found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("sign variants") {
    MultiIndex c{2, 0, 1};
    auto vs = signed_variants(c);
    REQUIRE(vs.size() == 4);
    CHECK(vs[0] == MultiIndex{2, 0, 1});
    CHECK(vs[1] == MultiIndex{-2, 0, 1});
    CHECK(vs[2] == MultiIndex{2, 0, -1});
    CHECK(vs[3] == MultiIndex{-2, 0, -1});
    for (std::uint64_t v = 0; v < vs.size(); ++v) CHECK(variant_position(vs[v]) == v);
    std::vector<std::int64_t> h{-4, 3};
    CHECK(canonical(h) == MultiIndex{4, 3});
}

TEST_CASE("stream rejects bad dimension") {
    CHECK_THROWS_AS(EigenStream(linear(), 0), DomainError);
}
