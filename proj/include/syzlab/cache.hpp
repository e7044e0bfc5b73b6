#pragma once

/*
 * Tiny on-disk key/value store for computed ranks.
 *
 * One file per key under the cache directory, named by the 64-bit FNV hash
 * of the full key.  The full key is stored inside the file and verified on
 * read, so a hash collision degrades to a cache miss instead of returning a
 * wrong value.  Writes go through a temp file + rename, which keeps
 * concurrent runs from observing half-written entries.
 *
 * Values only ever contain dimensions and ranks -- small, derived,
 * regenerable data.  Keys are versioned so a change in conventions
 * invalidates old caches wholesale.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "numeric.hpp"

namespace syzlab {

inline constexpr const char* cache_key_version = "syzlab-cache-v1";

class kv_cache {
  public:
    explicit kv_cache(std::string dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    std::optional<std::string> get(const std::string& key) const {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        std::string stored_key;
        if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
        std::ostringstream rest;
        rest << in.rdbuf();
        return rest.str();
    }

    void put(const std::string& key, const std::string& value) const {
        const std::string final_path = path_for(key);
        const std::string tmp_path = final_path + ".tmp" + std::to_string(
            static_cast<unsigned long long>(
                std::hash<std::thread::id>{}(std::this_thread::get_id())));
        {
            std::ofstream out(tmp_path, std::ios::trunc);
            if (!out) return;  // caching is best-effort
            out << key << "\n" << value;
        }
        std::error_code ec;
        std::filesystem::rename(tmp_path, final_path, ec);
        if (ec) std::filesystem::remove(tmp_path, ec);
    }

    const std::string& dir() const { return dir_; }

  private:
    std::string path_for(const std::string& key) const {
        std::ostringstream os;
        os << dir_ << "/" << std::hex << fnv1a64(key) << ".kv";
        return os.str();
    }

    std::string dir_;
};

}  // namespace syzlab
