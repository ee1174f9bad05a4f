#pragma once
/// @file cache.hpp
/// @brief Content-addressed on-disk cache for invariant reports.  Keys are
///        digests of (spec digest, invariant, region, engine version); values
///        are JSON documents.  An unwritable cache directory degrades to a
///        warning and uncached computation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "deltakit/io.hpp"
#include "deltakit/sha256.hpp"

namespace deltakit {

/// Bump when result formats or algorithms change in ways that invalidate
/// cached values.
inline constexpr const char* kEngineVersion = "deltakit-1";

/// Resolution order: explicit path, DELTAKIT_CACHE_DIR, ~/.cache/deltakit.
inline std::filesystem::path resolve_cache_dir(
    const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("DELTAKIT_CACHE_DIR");
      env != nullptr && *env != '\0') {
    return env;
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "deltakit";
  }
  return std::filesystem::path(".deltakit-cache");
}

class ResultCache {
 public:
  /// enabled=false produces a null cache: every get misses, puts are no-ops.
  ResultCache(bool enabled, const std::string& explicit_dir)
      : enabled_(enabled) {
    if (enabled_) dir_ = resolve_cache_dir(explicit_dir);
  }

  static std::string key_of(const std::string& spec_digest,
                            const std::string& invariant,
                            const std::string& region) {
    Sha256 h;
    h.update(spec_digest);
    h.update("\n");
    h.update(invariant);
    h.update("\n");
    h.update(region);
    h.update("\n");
    h.update(std::string(kEngineVersion));
    return h.hex_digest();
  }

  std::optional<Json> get(const std::string& spec_digest,
                          const std::string& invariant,
                          const std::string& region) const {
    if (!enabled_) return std::nullopt;
    std::filesystem::path file =
        dir_ / (key_of(spec_digest, invariant, region) + ".json");
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    try {
      Json j = Json::parse(in);
      return j;
    } catch (...) {
      return std::nullopt;  // corrupt entries are treated as misses
    }
  }

  void put(const std::string& spec_digest, const std::string& invariant,
           const std::string& region, const Json& value) {
    if (!enabled_) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::string key = key_of(spec_digest, invariant, region);
    std::filesystem::path file = dir_ / (key + ".json");
    std::filesystem::path tmp = dir_ / (key + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        warn_once();
        return;
      }
      out << value.dump();
      if (!out.good()) {
        warn_once();
        return;
      }
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) warn_once();
  }

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void warn_once() {
    if (!warned_) {
      std::cerr << "warning: cache directory " << dir_
                << " is not writable; results will not be cached\n";
      warned_ = true;
    }
  }

  bool enabled_;
  bool warned_ = false;
  std::filesystem::path dir_;
};

}  // namespace deltakit
