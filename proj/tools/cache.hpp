#ifndef MOTIVIC_TOOLS_CACHE_HPP
#define MOTIVIC_TOOLS_CACHE_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include <openssl/evp.h>

#include <json.hpp>

namespace motivic::cli
{

inline std::string sha256_hex(const std::string &data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

// Writes through a temporary in the same directory, then renames into place.
inline void write_atomic(const std::filesystem::path &path, const std::string &text)
{
    const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out.flush()) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Entries live in <dir>/<sha256(key)>.json as {"key", "version", "digest", "payload"},
// where digest = sha256(payload.dump()). Anything that fails to validate is recomputed.
class Cache
{
public:
    Cache(std::optional<std::filesystem::path> dir, std::string version)
        : m_dir(std::move(dir)), m_version(std::move(version))
    {
    }

    [[nodiscard]] bool enabled() const
    {
        return m_dir.has_value();
    }

    [[nodiscard]] std::filesystem::path entry_path(const nlohmann::json &key) const
    {
        return *m_dir / (sha256_hex(key_string(key)) + ".json");
    }

    nlohmann::json get_or_compute(const nlohmann::json &key, const std::function<nlohmann::json()> &compute)
    {
        if (!enabled()) {
            return compute();
        }
        const std::filesystem::path path = entry_path(key);
        if (std::filesystem::exists(path)) {
            if (auto hit = load(path, key)) {
                return *hit;
            }
            std::cerr << "warning: cache entry " << path.string() << " failed validation; recomputing\n";
        }
        nlohmann::json payload = compute();
        std::filesystem::create_directories(*m_dir);
        const nlohmann::json entry{{"key", key_string(key)},
                                   {"version", m_version},
                                   {"digest", sha256_hex(payload.dump())},
                                   {"payload", payload}};
        write_atomic(path, entry.dump() + "\n");
        return payload;
    }

private:
    [[nodiscard]] std::string key_string(const nlohmann::json &key) const
    {
        nlohmann::json k = key;
        k["version"] = m_version;
        return k.dump();
    }

    [[nodiscard]] std::optional<nlohmann::json> load(const std::filesystem::path &path, const nlohmann::json &key) const
    {
        try {
            const nlohmann::json entry = nlohmann::json::parse(read_file(path));
            if (entry.at("key").get<std::string>() != key_string(key) ||
                entry.at("version").get<std::string>() != m_version ||
                entry.at("digest").get<std::string>() != sha256_hex(entry.at("payload").dump())) {
                return std::nullopt;
            }
            return entry.at("payload");
        } catch (const std::exception &) {
            return std::nullopt;
        }
    }

    std::optional<std::filesystem::path> m_dir;
    std::string m_version;
};

} // namespace motivic::cli

#endif
