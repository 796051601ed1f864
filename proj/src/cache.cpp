#include "hitcalc/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hitcalc {

namespace {

class FileLock {
public:
    FileLock(const std::filesystem::path& path, bool exclusive)
    {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
    }
    ~FileLock()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

std::string scope_tag_of(const std::optional<WeightVector>& block)
{
    BasisReport r;
    r.block = block;
    return r.scope_tag();
}

std::optional<WeightVector> parse_scope(const std::string& tag)
{
    if (tag == "full") return std::nullopt;
    if (tag.empty() || tag[0] != 'w') throw std::runtime_error("bad scope tag '" + tag + "'");
    std::vector<int> entries;
    std::stringstream ss(tag.substr(1));
    for (std::string item; std::getline(ss, item, '.');) entries.push_back(std::stoi(item));
    return WeightVector(std::move(entries));
}

}  // namespace

std::string report_digest(const BasisReport& r)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    feed("t=" + std::to_string(r.t) + ";n=" + std::to_string(r.n) + ";scope=" + r.scope_tag() +
         ";part=" + to_string(r.part) + ";");
    for (const auto& m : r.admissibles) {
        for (int j = 0; j < m.arity(); ++j) feed(std::to_string(m[j]) + ",");
        feed(";");
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

nlohmann::json to_json(const BasisReport& r)
{
    nlohmann::json adm = nlohmann::json::array();
    for (const auto& m : r.admissibles) adm.push_back(m.exponent_vector());
    return nlohmann::json{{"t", r.t},
                          {"n", r.n},
                          {"scope", r.scope_tag()},
                          {"part", to_string(r.part)},
                          {"strategy", r.strategy},
                          {"dim", r.dim()},
                          {"admissibles", std::move(adm)},
                          {"digest", report_digest(r)},
                          {"engine_version", r.engine_version},
                          {"elapsed_seconds", r.elapsed_seconds}};
}

BasisReport report_from_json(const nlohmann::json& j)
{
    BasisReport r;
    try {
        r.t = j.at("t").get<int>();
        r.n = j.at("n").get<int>();
        r.block = parse_scope(j.at("scope").get<std::string>());
        r.part = parse_part(j.at("part").get<std::string>());
        r.strategy = j.at("strategy").get<std::string>();
        r.engine_version = j.at("engine_version").get<std::string>();
        r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
        for (const auto& e : j.at("admissibles")) {
            const auto v = e.get<std::vector<int>>();
            if (static_cast<int>(v.size()) != r.t) throw std::runtime_error("admissible of wrong arity");
            r.admissibles.emplace_back(std::span<const int>(v));
        }
        if (j.at("dim").get<std::size_t>() != r.admissibles.size()) throw std::runtime_error("dim mismatch");
        if (j.at("digest").get<std::string>() != report_digest(r)) throw std::runtime_error("basis report digest mismatch");
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed basis report: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("malformed basis report: ") + e.what());
    }
    return r;
}

ReportCache::ReportCache(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path ReportCache::path_for(int t, int n, const std::string& scope, Part part) const
{
    return root_ / ("t" + std::to_string(t)) / ("n" + std::to_string(n)) / (scope + "-" + to_string(part) + ".json");
}

std::optional<BasisReport> ReportCache::load(int t, int n, const std::optional<WeightVector>& block, Part part,
                                             const std::string& strategy) const
{
    const auto path = path_for(t, n, scope_tag_of(block), part);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    FileLock lock(path.string() + ".lock", false);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(in);
        BasisReport r = report_from_json(j);
        if (r.t != t || r.n != n || r.block != block || r.part != part) return std::nullopt;
        if (r.strategy != strategy || r.engine_version != kEngineVersion) return std::nullopt;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ReportCache::store(const BasisReport& r) const
{
    const auto path = path_for(r.t, r.n, r.scope_tag(), r.part);
    std::filesystem::create_directories(path.parent_path());
    FileLock lock(path.string() + ".lock", true);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp);
        out << to_json(r).dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace hitcalc
