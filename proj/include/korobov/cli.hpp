#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "korobov/caps.hpp"
#include "korobov/sequences.hpp"

namespace korobov::cli {

/// Parsed spec file: {"omega": 0.5, "a": "power:c=1,p=1", "b": "const:c=1",
/// "caps": {"frontier": 1e6}}. Caps start from the defaults, take the file's
/// overrides, then KOROBOV_TRACT_CAPS.
struct LoadedSpec {
    WeightSpec spec;
    Caps caps;
};

/// Throws DomainError with "<origin>:<line>: message" on parse or validation failure.
LoadedSpec parse_spec(std::string_view text, const std::string& origin = "<spec>");
LoadedSpec load_spec(const std::string& path);

enum class Format { Csv, Json };
Format parse_format(std::string_view text);

/// Arbitrary-size integers are carried as their decimal digits.
struct BigInteger {
    std::string digits;
};

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string, bool, BigInteger>;

/// Header plus typed rows. Reals print with 17 significant digits.
class OutputTable {
public:
    explicit OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row);
    std::size_t rows() const noexcept { return rows_.size(); }

    void write(std::ostream& out, Format format) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double v);

/// Entry point shared by the binary and the tests. Returns 0 on success, 1 on
/// a domain error (bad input, infeasible query, usage) and 2 when a resource
/// cap is exceeded. Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace korobov::cli
