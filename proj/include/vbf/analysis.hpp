#pragma once

#include "vbf/boolfun.hpp"
#include "vbf/record.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace vbf {

/// Full analyses beyond this degree need an explicit opt-in (the DDT is quadratic in 2^n).
inline constexpr int kMaxDefaultAnalysisDegree = 14;

struct AnalyzeOptions {
    unsigned jobs = 0;
    bool allow_large = false;
};

/// Every module's view of x^d1 + x^d2 over K, with its cross-checks. Needs even n.
AnalysisRecord analyze_binomial(const FieldPtr& K, std::uint32_t d1, std::uint32_t d2, const AnalyzeOptions& opts = {});

/// Parseval on a few Walsh rows, each bounded by 2^n - 2 nonlinearity.
bool parseval_spot_check(const VectorialFn& F, std::int64_t nonlinearity);

std::string to_decimal(__int128 v);

/// JSON-lines store under DIR/records.jsonl keyed by (tool_version, n, modulus, d1, d2).
class RecordCache {
public:
    explicit RecordCache(std::filesystem::path dir);
    std::optional<AnalysisRecord> find(int n, const std::string& modulus, std::uint32_t d1, std::uint32_t d2) const;
    void store(const AnalysisRecord& r);
    std::size_t size() const { return records_.size(); }

private:
    static std::string key(const std::string& version, int n, const std::string& modulus, std::uint32_t d1, std::uint32_t d2);
    std::filesystem::path file_;
    std::map<std::string, AnalysisRecord> records_;
};

/// Cached analysis: a hit is reused only after parseval_spot_check passes; misses and stale hits are recomputed and stored.
AnalysisRecord analyze_cached(const FieldPtr& K, std::uint32_t d1, std::uint32_t d2, const AnalyzeOptions& opts,
                              RecordCache* cache);

std::string tool_version();

}  // namespace vbf
