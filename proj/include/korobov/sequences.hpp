#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace korobov {

enum class FamilyKind { Constant, Power, LogPower, Exponential, ExplicitList };

std::string_view to_string(FamilyKind kind);

/// A parametric positive sequence indexed from k = 1.
///
///   constant     c
///   power        c * k^p
///   log-power    c * (ln(k + 1))^p
///   exponential  c * exp(gamma * k)
///   list         v_1, ..., v_m, v_m, v_m, ...   (last value repeats)
///
/// Construction only checks that every term is positive. Whether the family
/// is admissible as the `a` or `b` sequence of a problem instance is decided
/// by validate().
class SequenceFamily {
public:
    static SequenceFamily constant(double c);
    static SequenceFamily power(double c, double p);
    static SequenceFamily log_power(double c, double p);
    static SequenceFamily exponential(double c, double gamma);
    static SequenceFamily explicit_list(std::vector<double> values);

    /// Parses `const:c=2`, `power:c=1,p=1`, `logpower:c=1,p=2`,
    /// `exp:c=1,gamma=0.5` or `list:2,1.5,1`.
    static SequenceFamily parse(std::string_view text);

    /// k-th term, k >= 1.
    double operator()(std::size_t k) const;

    FamilyKind kind() const noexcept { return kind_; }
    double coefficient() const noexcept { return c_; }
    /// p for power/log-power, gamma for exponential, 0 otherwise.
    double rate() const noexcept { return rate_; }
    std::span<const double> values() const noexcept { return values_; }

    /// inf_k of the terms, by kind. 0 when the family decays to zero.
    double infimum() const;

    /// First k >= 2 with term(k) < term(k-1), decided symbolically for the
    /// closed forms (which are monotone) and termwise for lists.
    std::optional<std::size_t> first_decrease() const;

    std::string to_string() const;

private:
    SequenceFamily() = default;

    FamilyKind kind_ = FamilyKind::Constant;
    double c_ = 1.0;
    double rate_ = 0.0;
    std::vector<double> values_;
};

struct ValidationReport {
    bool ok = true;
    std::string message;               // first violated constraint, empty when ok
    std::optional<std::size_t> index;  // offending k, when the violation has one

    explicit operator bool() const noexcept { return ok; }
};

/// Checks 0 < omega < 1, a non-decreasing (termwise for lists, symbolically for
/// closed forms, over k = 1..K) and b with positive infimum.
ValidationReport validate(double omega, const SequenceFamily& a, const SequenceFamily& b,
                          std::size_t K = 1000);

/// The problem instance: omega plus the sequences a and b. Immutable, and
/// always valid: the constructor throws DomainError with the validate()
/// message on bad input.
class WeightSpec {
public:
    WeightSpec(double omega, SequenceFamily a, SequenceFamily b);

    double omega() const noexcept { return omega_; }
    /// ln(1/omega) > 0.
    double log_inv_omega() const noexcept { return log_inv_omega_; }
    const SequenceFamily& a() const noexcept { return a_; }
    const SequenceFamily& b() const noexcept { return b_; }

    double eval_a(std::size_t k) const { return a_(k); }
    double eval_b(std::size_t k) const { return b_(k); }
    double b_star() const noexcept { return b_star_; }

    /// (a_1..a_d) and (b_1..b_d).
    std::vector<double> a_prefix(std::size_t d) const;
    std::vector<double> b_prefix(std::size_t d) const;

private:
    double omega_;
    double log_inv_omega_;
    SequenceFamily a_;
    SequenceFamily b_;
    double b_star_;
};

}  // namespace korobov
