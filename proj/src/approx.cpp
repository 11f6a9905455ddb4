#include "korobov/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "korobov/complexity.hpp"
#include "korobov/errors.hpp"

namespace korobov {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t draw) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ draw));
}

void check_config(const GaussianDrawConfig& cfg) {
    if (!(cfg.truncation_fraction > 0.0 && cfg.truncation_fraction <= 0.01)) {
        throw DomainError("truncation fraction must lie in (0, 0.01]");
    }
}

// Rank (1-based) of each support frequency that falls within the first n
// ranks; frequencies absent from the result have rank > n.
std::map<MultiIndex, std::uint64_t> leading_ranks(const WeightSpec& spec, const SpectralFunction& f,
                                                  std::uint64_t n, const Caps& caps) {
    std::map<MultiIndex, std::uint64_t> kept;
    if (n == 0 || f.empty()) return kept;

    std::map<MultiIndex, std::vector<const MultiIndex*>> pending;
    for (const auto& [h, c] : f.coefficients()) pending[canonical(h)].push_back(&h);

    EigenStream stream(spec, f.dimension(), caps);
    while (!pending.empty() && stream.emitted_ranks() < n) {
        const auto& entry = stream.next();
        auto it = pending.find(entry.exponent.index);
        if (it == pending.end()) continue;
        for (const MultiIndex* h : it->second) {
            const std::uint64_t rank = entry.first_rank + variant_position(*h);
            if (rank <= n) kept.emplace(*h, rank);
        }
        pending.erase(it);
    }
    return kept;
}

}  // namespace

SpectralFunction SpectralFunction::fourier_basis(const MultiIndex& h) {
    SpectralFunction f(h.size());
    f.set(h, 1.0);
    return f;
}

SpectralFunction SpectralFunction::eigenfunction(const WeightSpec& spec, const MultiIndex& h) {
    SpectralFunction f(h.size());
    f.set(h, std::sqrt(exponent(spec, h).eigenvalue(spec)));
    return f;
}

void SpectralFunction::check(const MultiIndex& h) const {
    if (h.size() != d_) {
        throw DomainError("frequency has dimension " + std::to_string(h.size()) + ", function has " + std::to_string(d_));
    }
}

void SpectralFunction::set(const MultiIndex& h, Coefficient c) {
    check(h);
    if (c == Coefficient{}) {
        coeffs_.erase(h);
    } else {
        coeffs_[h] = c;
    }
}

Coefficient SpectralFunction::at(const MultiIndex& h) const {
    check(h);
    auto it = coeffs_.find(h);
    return it == coeffs_.end() ? Coefficient{} : it->second;
}

SpectralFunction& SpectralFunction::operator+=(const SpectralFunction& other) {
    if (other.d_ != d_) throw DomainError("dimension mismatch");
    for (const auto& [h, c] : other.coeffs_) set(h, at(h) + c);
    return *this;
}

SpectralFunction& SpectralFunction::operator-=(const SpectralFunction& other) {
    if (other.d_ != d_) throw DomainError("dimension mismatch");
    for (const auto& [h, c] : other.coeffs_) set(h, at(h) - c);
    return *this;
}

SpectralFunction& SpectralFunction::operator*=(Coefficient s) {
    if (s == Coefficient{}) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [h, c] : coeffs_) c *= s;
    return *this;
}

Coefficient SpectralFunction::evaluate(std::span<const double> x) const {
    if (x.size() != d_) throw DomainError("point has wrong dimension");
    Coefficient sum{};
    for (const auto& [h, c] : coeffs_) {
        double phase = 0.0;
        for (std::size_t k = 0; k < d_; ++k) phase += static_cast<double>(h[k]) * x[k];
        sum += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
    return sum;
}

SpectralFunction operator+(SpectralFunction lhs, const SpectralFunction& rhs) { return lhs += rhs; }
SpectralFunction operator-(SpectralFunction lhs, const SpectralFunction& rhs) { return lhs -= rhs; }
SpectralFunction operator*(Coefficient s, SpectralFunction f) { return f *= s; }

double h_norm(const WeightSpec& spec, const SpectralFunction& f) {
    if (f.empty()) return 0.0;
    // log(|c|^2 / omega^E) = 2 log|c| + E ln(1/omega)
    std::vector<double> logs;
    logs.reserve(f.support_size());
    for (const auto& [h, c] : f.coefficients()) {
        logs.push_back(2.0 * std::log(std::abs(c)) + exponent(spec, h).value * spec.log_inv_omega());
    }
    const double peak = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0;
    for (double t : logs) sum += std::exp(t - peak);
    const double log_norm = 0.5 * (peak + std::log(sum));
    if (!(log_norm < std::log(std::numeric_limits<double>::max()))) {
        throw DomainError("H-norm overflows double precision (log-norm " + std::to_string(log_norm) + ")");
    }
    return std::exp(log_norm);
}

double l2_norm(const SpectralFunction& f) {
    double sum = 0.0;
    for (const auto& [h, c] : f.coefficients()) sum += std::norm(c);
    return std::sqrt(sum);
}

SpectralFunction truncate(const WeightSpec& spec, const SpectralFunction& f, std::uint64_t n, const Caps& caps) {
    SpectralFunction out(f.dimension());
    for (const auto& [h, rank] : leading_ranks(spec, f, n, caps)) out.set(h, f.at(h));
    return out;
}

double worst_case_error_of_truncation(const WeightSpec& spec, std::size_t d, std::uint64_t n,
                                      const SpectralFunction& f, const Caps& caps) {
    if (f.dimension() != d) throw DomainError("function dimension does not match d");
    if (f.empty()) throw DomainError("worst-case error ratio needs a nonzero function");
    return l2_norm(f - truncate(spec, f, n, caps)) / h_norm(spec, f);
}

SpectralFunction truncate_lambda_weighted(const WeightSpec& spec, const SpectralFunction& f, std::uint64_t n,
                                          const Caps& caps) {
    SpectralFunction out(f.dimension());
    for (const auto& [h, rank] : leading_ranks(spec, f, n, caps)) {
        out.set(h, exponent(spec, h).eigenvalue(spec) * f.at(h));
    }
    return out;
}

double lambda_weighted_worst_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const Caps& caps) {
    EigenStream stream(spec, d, caps);
    double worst = 0.0;
    while (true) {
        const auto& entry = stream.next();
        const double lambda = entry.exponent.eigenvalue(spec);
        if (entry.first_rank > n) return std::max(worst, std::sqrt(lambda));
        worst = std::max(worst, (1.0 - lambda) * std::sqrt(lambda));
    }
}

KarhunenLoeveBasis karhunen_loeve_basis(const WeightSpec& spec, std::size_t d, double truncation_fraction,
                                        const Caps& caps) {
    check_config(GaussianDrawConfig{truncation_fraction, 0, 1});
    KarhunenLoeveBasis basis;
    basis.trace = trace_tau(spec, d, 1.0, 1e-15, caps).point;
    const double allowed = truncation_fraction * basis.trace;
    EigenStream stream(spec, d, caps);
    double remaining = basis.trace;
    while (remaining > allowed) {
        const auto& entry = stream.next();
        const double lambda = entry.exponent.eigenvalue(spec);
        for (auto& h : signed_variants(entry.exponent.index)) {
            basis.frequencies.push_back(std::move(h));
            basis.eigenvalues.push_back(lambda);
            basis.kept_variance += lambda;
            remaining -= lambda;
        }
        if (basis.frequencies.size() > caps.ranks) throw ResourceError("Karhunen-Loeve basis exceeds rank cap");
    }
    basis.neglected_variance = std::max(0.0, basis.trace - basis.kept_variance);
    return basis;
}

namespace {

void draw_coefficients(const KarhunenLoeveBasis& basis, std::uint64_t seed, std::uint64_t draw,
                       std::vector<double>& out) {
    auto rng = substream(seed, draw);
    std::normal_distribution<double> normal(0.0, 1.0);
    out.resize(basis.eigenvalues.size());
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = std::sqrt(basis.eigenvalues[r]) * normal(rng);
}

}  // namespace

GaussianDraw sample_gaussian(const WeightSpec& spec, std::size_t d, const GaussianDrawConfig& cfg,
                             std::uint64_t draw_index, const Caps& caps) {
    check_config(cfg);
    const auto basis = karhunen_loeve_basis(spec, d, cfg.truncation_fraction, caps);
    std::vector<double> coeffs;
    draw_coefficients(basis, cfg.seed, draw_index, coeffs);
    GaussianDraw draw{SpectralFunction(d), basis.kept_variance, basis.neglected_variance};
    for (std::size_t r = 0; r < coeffs.size(); ++r) draw.f.set(basis.frequencies[r], coeffs[r]);
    return draw;
}

bool MonteCarloResult::consistent(double sigmas) const {
    return std::abs(estimate - oracle) <= sigmas * standard_error + allowance;
}

MonteCarloResult mc_avg_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const GaussianDrawConfig& cfg,
                              unsigned threads, const Caps& caps) {
    check_config(cfg);
    if (cfg.samples < 100) throw DomainError("Monte-Carlo needs at least 100 samples");
    const auto basis = karhunen_loeve_basis(spec, d, cfg.truncation_fraction, caps);

    MonteCarloResult result;
    result.samples = cfg.samples;
    result.kept_frequencies = basis.frequencies.size();
    result.neglected_variance = basis.neglected_variance;
    result.oracle = avg_error(spec, d, n, caps);

    const double oracle_sq = result.oracle * result.oracle;
    if (n < basis.frequencies.size() && !(basis.neglected_variance < 0.01 * oracle_sq)) {
        throw DomainError("neglected variance " + std::to_string(basis.neglected_variance) +
                          " is not below 1% of the squared error " + std::to_string(oracle_sq) +
                          "; lower the truncation fraction");
    }
    result.allowance = result.oracle - std::sqrt(std::max(0.0, oracle_sq - basis.neglected_variance));

    std::vector<double> residuals(cfg.samples);
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<double> coeffs;
        for (std::uint64_t i = begin; i < end; ++i) {
            draw_coefficients(basis, cfg.seed, i, coeffs);
            double sq = 0.0;
            for (std::size_t r = n; r < coeffs.size(); ++r) sq += coeffs[r] * coeffs[r];
            residuals[i] = sq;
        }
    };
    threads = std::max(1U, threads);
    if (threads == 1) {
        work(0, cfg.samples);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (cfg.samples + threads - 1) / threads;
        for (std::uint64_t begin = 0; begin < cfg.samples; begin += chunk) {
            pool.emplace_back(work, begin, std::min(cfg.samples, begin + chunk));
        }
    }

    double mean = 0.0;
    for (double r : residuals) mean += r;
    mean /= static_cast<double>(cfg.samples);
    double var = 0.0;
    for (double r : residuals) var += (r - mean) * (r - mean);
    var /= static_cast<double>(cfg.samples - 1);

    result.estimate = std::sqrt(mean);
    const double se_mean = std::sqrt(var / static_cast<double>(cfg.samples));
    result.standard_error = result.estimate > 0.0 ? se_mean / (2.0 * result.estimate) : 0.0;
    result.z_score = result.standard_error > 0.0 ? (result.estimate - result.oracle) / result.standard_error : 0.0;
    return result;
}

}  // namespace korobov
