#include "korobov/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "korobov/errors.hpp"

namespace korobov {

namespace {

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double parse_real(std::string_view field, std::string_view text) {
    std::string buf(text);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
        throw DomainError("sequence '" + std::string(field) + "': cannot parse '" + buf + "' as a real");
    }
    return v;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be a positive finite real");
    }
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Constant: return "const";
        case FamilyKind::Power: return "power";
        case FamilyKind::LogPower: return "logpower";
        case FamilyKind::Exponential: return "exp";
        case FamilyKind::ExplicitList: return "list";
    }
    return "?";
}

SequenceFamily SequenceFamily::constant(double c) {
    require_positive(c, "const: c");
    SequenceFamily f;
    f.kind_ = FamilyKind::Constant;
    f.c_ = c;
    return f;
}

SequenceFamily SequenceFamily::power(double c, double p) {
    require_positive(c, "power: c");
    if (!std::isfinite(p)) throw DomainError("power: p must be finite");
    SequenceFamily f;
    f.kind_ = FamilyKind::Power;
    f.c_ = c;
    f.rate_ = p;
    return f;
}

SequenceFamily SequenceFamily::log_power(double c, double p) {
    require_positive(c, "logpower: c");
    if (!std::isfinite(p)) throw DomainError("logpower: p must be finite");
    SequenceFamily f;
    f.kind_ = FamilyKind::LogPower;
    f.c_ = c;
    f.rate_ = p;
    return f;
}

SequenceFamily SequenceFamily::exponential(double c, double gamma) {
    require_positive(c, "exp: c");
    require_positive(gamma, "exp: gamma");
    SequenceFamily f;
    f.kind_ = FamilyKind::Exponential;
    f.c_ = c;
    f.rate_ = gamma;
    return f;
}

SequenceFamily SequenceFamily::explicit_list(std::vector<double> values) {
    if (values.empty()) throw DomainError("list: needs at least one value");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw DomainError("list: value at k=" + std::to_string(i + 1) + " must be a positive finite real");
        }
    }
    SequenceFamily f;
    f.kind_ = FamilyKind::ExplicitList;
    f.values_ = std::move(values);
    return f;
}

SequenceFamily SequenceFamily::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw DomainError("sequence '" + std::string(text) + "': expected <kind>:<params>");
    }
    const auto kind = text.substr(0, colon);
    auto rest = text.substr(colon + 1);

    std::vector<std::string_view> items;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        items.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (rest.empty()) items.emplace_back();
    }

    if (kind == "list") {
        std::vector<double> values;
        for (auto item : items) values.push_back(parse_real(text, item));
        return explicit_list(std::move(values));
    }

    double c = 1.0;
    std::optional<double> rate;
    bool have_c = false;
    for (auto item : items) {
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw DomainError("sequence '" + std::string(text) + "': parameter '" + std::string(item) + "' is not key=value");
        }
        auto key = item.substr(0, eq);
        double v = parse_real(text, item.substr(eq + 1));
        if (key == "c") {
            c = v;
            have_c = true;
        } else if ((key == "p" && (kind == "power" || kind == "logpower")) ||
                   (key == "gamma" && kind == "exp")) {
            rate = v;
        } else {
            throw DomainError("sequence '" + std::string(text) + "': unexpected parameter '" + std::string(key) + "'");
        }
    }
    if (!have_c) throw DomainError("sequence '" + std::string(text) + "': missing c");

    if (kind == "const") {
        if (rate) throw DomainError("sequence '" + std::string(text) + "': const takes only c");
        return constant(c);
    }
    if (!rate) throw DomainError("sequence '" + std::string(text) + "': missing exponent parameter");
    if (kind == "power") return power(c, *rate);
    if (kind == "logpower") return log_power(c, *rate);
    if (kind == "exp") return exponential(c, *rate);
    throw DomainError("sequence '" + std::string(text) + "': unknown kind '" + std::string(kind) + "'");
}

double SequenceFamily::operator()(std::size_t k) const {
    const double x = static_cast<double>(k);
    switch (kind_) {
        case FamilyKind::Constant: return c_;
        case FamilyKind::Power: return c_ * std::pow(x, rate_);
        case FamilyKind::LogPower: return c_ * std::pow(std::log1p(x), rate_);
        case FamilyKind::Exponential: return c_ * std::exp(rate_ * x);
        case FamilyKind::ExplicitList: return values_[std::min(k, values_.size()) - 1];
    }
    return c_;
}

double SequenceFamily::infimum() const {
    switch (kind_) {
        case FamilyKind::Constant: return c_;
        case FamilyKind::Power:
        case FamilyKind::LogPower: return rate_ >= 0.0 ? (*this)(1) : 0.0;
        case FamilyKind::Exponential: return (*this)(1);
        case FamilyKind::ExplicitList: return *std::min_element(values_.begin(), values_.end());
    }
    return 0.0;
}

std::optional<std::size_t> SequenceFamily::first_decrease() const {
    switch (kind_) {
        case FamilyKind::Constant:
        case FamilyKind::Exponential: return std::nullopt;
        case FamilyKind::Power:
        case FamilyKind::LogPower:
            if (rate_ < 0.0) return 2;
            return std::nullopt;
        case FamilyKind::ExplicitList:
            for (std::size_t i = 1; i < values_.size(); ++i) {
                if (values_[i] < values_[i - 1]) return i + 1;
            }
            return std::nullopt;
    }
    return std::nullopt;
}

std::string SequenceFamily::to_string() const {
    std::string out(korobov::to_string(kind_));
    out += ':';
    switch (kind_) {
        case FamilyKind::Constant: out += "c=" + format_real(c_); break;
        case FamilyKind::Power:
        case FamilyKind::LogPower: out += "c=" + format_real(c_) + ",p=" + format_real(rate_); break;
        case FamilyKind::Exponential: out += "c=" + format_real(c_) + ",gamma=" + format_real(rate_); break;
        case FamilyKind::ExplicitList:
            for (std::size_t i = 0; i < values_.size(); ++i) {
                if (i) out += ',';
                out += format_real(values_[i]);
            }
            break;
    }
    return out;
}

ValidationReport validate(double omega, const SequenceFamily& a, const SequenceFamily& b, std::size_t K) {
    if (!(omega > 0.0 && omega < 1.0)) return {false, "omega not in (0,1)", std::nullopt};

    if (auto k = a.first_decrease(); k && *k <= std::max<std::size_t>(K, 2)) {
        return {false, "a not non-decreasing at k=" + std::to_string(*k), *k};
    }

    if (!(b.infimum() > 0.0)) {
        return {false, "b has infimum 0 (b_* must be positive)", std::nullopt};
    }
    return {};
}

WeightSpec::WeightSpec(double omega, SequenceFamily a, SequenceFamily b)
    : omega_(omega), log_inv_omega_(-std::log(omega)), a_(std::move(a)), b_(std::move(b)), b_star_(0.0) {
    if (auto report = validate(omega_, a_, b_, static_cast<std::size_t>(-1)); !report) throw DomainError(report.message);
    b_star_ = b_.infimum();
}

std::vector<double> WeightSpec::a_prefix(std::size_t d) const {
    std::vector<double> out(d);
    for (std::size_t k = 0; k < d; ++k) out[k] = a_(k + 1);
    return out;
}

std::vector<double> WeightSpec::b_prefix(std::size_t d) const {
    std::vector<double> out(d);
    for (std::size_t k = 0; k < d; ++k) out[k] = b_(k + 1);
    return out;
}

}  // namespace korobov
