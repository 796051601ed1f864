#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "hitcalc/hit_engine.hpp"

namespace hitcalc {

/// Content digest (FNV-1a, 64-bit, hex) over t, n, scope, part and the admissible list.
std::string report_digest(const BasisReport& r);

nlohmann::json to_json(const BasisReport& r);
/// Throws std::runtime_error on schema violations or a digest mismatch.
BasisReport report_from_json(const nlohmann::json& j);

/// On-disk store of BasisReports, one JSON document per report under
/// `<root>/t<t>/n<n>/<scope>-<part>.json`. Readers and writers take advisory file locks.
class ReportCache {
public:
    explicit ReportCache(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path path_for(int t, int n, const std::string& scope, Part part) const;

    /// Cached report for the key, or nullopt when absent, unreadable, digest-invalid, or
    /// produced by a different strategy or engine version.
    std::optional<BasisReport> load(int t, int n, const std::optional<WeightVector>& block, Part part,
                                     const std::string& strategy) const;
    void store(const BasisReport& r) const;

private:
    std::filesystem::path root_;
};

}  // namespace hitcalc
