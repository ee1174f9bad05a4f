/// @file cache_test.cpp
/// @brief On-disk result cache: keying, round trips, corruption tolerance,
///        and directory resolution.

#include "deltakit/cache.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace deltakit;

namespace {

std::string fresh_dir(const std::string& tag) {
  std::string dir = ::testing::TempDir() + "deltakit_cache_" + tag;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(ResultCache, PutThenGetRoundTrips) {
  ResultCache cache(true, fresh_dir("roundtrip"));
  Json value = {{"delta", {1, 2}}, {"max_catenary", 4}};
  EXPECT_FALSE(cache.get("digest", "scan", "seq<=6").has_value());
  cache.put("digest", "scan", "seq<=6", value);
  auto hit = cache.get("digest", "scan", "seq<=6");
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(*hit, value);
}

TEST(ResultCache, KeySeparatesInvariantAndRegion) {
  ResultCache cache(true, fresh_dir("keys"));
  cache.put("d", "scan", "seq<=6", Json(1));
  EXPECT_FALSE(cache.get("d", "scan", "seq<=8").has_value());
  EXPECT_FALSE(cache.get("d", "catenary", "seq<=6").has_value());
  EXPECT_FALSE(cache.get("other", "scan", "seq<=6").has_value());
  EXPECT_TRUE(cache.get("d", "scan", "seq<=6").has_value());
  EXPECT_NE(ResultCache::key_of("d", "scan", "seq<=6"),
            ResultCache::key_of("d", "scan", "seq<=8"));
  EXPECT_EQ(ResultCache::key_of("d", "scan", "seq<=6"),
            ResultCache::key_of("d", "scan", "seq<=6"));
}

TEST(ResultCache, CorruptEntryIsAMiss) {
  std::string dir = fresh_dir("corrupt");
  ResultCache cache(true, dir);
  cache.put("d", "scan", "r", Json(42));
  std::string file =
      dir + "/" + ResultCache::key_of("d", "scan", "r") + ".json";
  {
    std::ofstream out(file, std::ios::trunc);
    out << "{not json";
  }
  EXPECT_FALSE(cache.get("d", "scan", "r").has_value());
}

TEST(ResultCache, DisabledCacheNeverStoresOrHits) {
  ResultCache cache(false, fresh_dir("disabled"));
  cache.put("d", "scan", "r", Json(1));
  EXPECT_FALSE(cache.get("d", "scan", "r").has_value());
  EXPECT_FALSE(cache.enabled());
}

TEST(ResolveCacheDir, PrecedenceExplicitThenEnvThenHome) {
  EXPECT_EQ(resolve_cache_dir("/explicit/path"), "/explicit/path");
  ::setenv("DELTAKIT_CACHE_DIR", "/from/env", 1);
  EXPECT_EQ(resolve_cache_dir(""), "/from/env");
  ::unsetenv("DELTAKIT_CACHE_DIR");
  std::string fallback = resolve_cache_dir("").string();
  EXPECT_NE(fallback.find("deltakit"), std::string::npos);
}
