#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hitcalc/hit_engine.hpp"

namespace hitcalc::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kMemoryCeiling = 3 };

enum class Format { Text, Json, Csv };
Format parse_format(const std::string& s);

struct RunConfig {
    std::optional<std::filesystem::path> cache_dir;  // nullopt disables the on-disk cache
    unsigned threads = 1;
    std::uint64_t memory_limit = std::uint64_t{12} << 30;
    Strategy strategy = Strategy::Auto;
    Format format = Format::Text;

    /// Throws std::invalid_argument unless threads >= 1 and memory_limit >= 64 MiB.
    void validate() const;
    EngineOptions engine_options() const;
};

/// `4096`, `512M`, `12G`, `2GiB` and so on; binary multiples. Throws std::invalid_argument.
std::uint64_t parse_byte_size(const std::string& text);

using Environment = std::map<std::string, std::string>;
/// HITCALC_CACHE_DIR, HITCALC_THREADS and HITCALC_MEM_LIMIT from the process environment.
Environment process_environment();

/// Full command-line run: `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace hitcalc::cli
