#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vbf {

inline constexpr int kRecordSchema = 1;

struct LedgerRecord {
    std::uint32_t j = 0;
    std::uint64_t t = 0;
    std::int64_t k = 0;
    std::uint64_t u = 0, r = 0;
    bool holds = false;
    bool operator==(const LedgerRecord&) const = default;
};

struct BoundRecord {
    std::string name;
    bool applicable = false;
    std::string relation;
    /// Decimal integers; empty when inapplicable.
    std::string lhs, rhs;
    std::optional<bool> holds;
    std::string reason;
    bool operator==(const BoundRecord&) const = default;
};

/// One analyzed binomial x^d1 + x^d2. JSON keys are emitted in declaration order.
struct AnalysisRecord {
    int schema = kRecordSchema;
    std::string tool_version;
    int n = 0;
    std::string modulus;  // "0x..."
    std::uint32_t d1 = 0, d2 = 0;
    std::string label;
    bool maximal = false;
    std::uint64_t sf_size = 0;
    bool sf_is_subspace = false;
    bool sf_is_subfield = false;
    bool sf_equals_subfield = false;
    std::int64_t nonlinearity = 0;
    int delta = 0;
    std::uint64_t image_size = 0;
    std::optional<std::uint64_t> c, s;
    int nu = 0;
    std::optional<LedgerRecord> ledger;
    std::vector<BoundRecord> bound_checks;
    std::string class_label;
    std::string class_member;
    std::optional<std::string> witness;
    bool plateaued = false;
    std::int64_t T = 0;
    int ell_n = 0;
    bool ell_exceeds_m = false;
    /// name -> "pass" | "fail" | "skip", in a fixed order.
    std::vector<std::pair<std::string, std::string>> checks;

    bool ok() const;
    bool operator==(const AnalysisRecord&) const = default;
};

/// Single-line JSON.
std::string to_json_line(const AnalysisRecord& r);
/// Throws UsageError on malformed input or an unknown schema.
AnalysisRecord record_from_json(const std::string& line);

/// Fixed CSV columns, see csv_header().
std::string csv_header();
std::string to_csv_row(const AnalysisRecord& r);

std::string to_text(const AnalysisRecord& r);

}  // namespace vbf
