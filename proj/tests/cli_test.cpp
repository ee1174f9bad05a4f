/// @file cli_test.cpp
/// @brief End-to-end runs of the command-line binary: exit codes, JSON
///        output, caching flags, and error handling.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "deltakit/io.hpp"
#include "deltakit/report.hpp"

#ifndef DELTAKIT_BIN
#error "DELTAKIT_BIN must point at the CLI binary"
#endif

using namespace deltakit;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(DELTAKIT_BIN) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) {
    r.output += buf.data();
  }
  int status = ::pclose(pipe);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string temp_path(const std::string& leaf) {
  return ::testing::TempDir() + leaf;
}

}  // namespace

TEST(CliGroup, CyclicGroupPassesWithClosedForms) {
  RunResult r = run("group [6] --no-cache");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("davenport [exact] = 6"), std::string::npos);
  EXPECT_NE(r.output.find("max-delta"), std::string::npos);
  EXPECT_NE(r.output.find("PASS"), std::string::npos);
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
}

TEST(CliGroup, JsonFormatEmitsParseableReportLines) {
  RunResult r = run("group [4] --no-cache --format json");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::size_t reports = 0;
  std::size_t checks = 0;
  std::istringstream lines(r.output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] != '{') continue;
    Json j = Json::parse(line);
    if (j.contains("invariant")) {
      InvariantReport rep = InvariantReport::from_json(j);
      EXPECT_FALSE(rep.invariant.empty());
      ++reports;
    } else if (j.contains("check")) {
      EXPECT_TRUE(j.at("pass").get<bool>()) << line;
      ++checks;
    }
  }
  EXPECT_GE(reports, 6u);
  EXPECT_GE(checks, 3u);
}

TEST(CliGroup, RefusesOversizeGroupsWithUsageError) {
  RunResult r = run("group [997] --no-cache");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("--max-order"), std::string::npos);
}

TEST(CliGroup, MalformedSpecIsAUsageError) {
  RunResult r = run("group not-json --no-cache");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("error"), std::string::npos);
}

TEST(CliTblock, InlineSpecScansAndPredicts) {
  std::string spec =
      "'{\"group\":[2],\"components\":[{\"rank\":2,"
      "\"unit_class_generators\":[],\"prime_classes\":[[1],[1]]}]}'";
  RunResult r = run("tblock " + spec + " --no-cache --predict");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("max-delta-prediction"), std::string::npos);
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
}

TEST(CliTblock, PredictRefusesLargerGroups) {
  std::string spec =
      "'{\"group\":[3],\"components\":[{\"rank\":2,"
      "\"unit_class_generators\":[],\"prime_classes\":[[1],[2]]}]}'";
  RunResult r = run("tblock " + spec + " --no-cache --predict --caps seq=4,exp=4");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("error"), std::string::npos);
}

TEST(CliTblock, CapsFlagNarrowsTheRegion) {
  std::string spec =
      "'{\"group\":[2],\"components\":[{\"rank\":2,"
      "\"unit_class_generators\":[],\"prime_classes\":[[1],[1]]}]}'";
  RunResult r = run("tblock " + spec + " --no-cache --caps seq=2,exp=2");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("seq<=2,exp<=2"), std::string::npos);
}

TEST(CliTblock, BadCapsStringIsAUsageError) {
  RunResult r = run("tblock [2] --caps seq=two");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("--caps"), std::string::npos);
}

TEST(CliTblock, GuardrailRefusalMentionsCaps) {
  std::string spec =
      "'{\"group\":[2],\"components\":[{\"rank\":2,"
      "\"unit_class_generators\":[],\"prime_classes\":[[1],[1]]}]}'";
  RunResult r = run("tblock " + spec + " --no-cache --region-guard 10");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("guardrail"), std::string::npos);
}

TEST(CliExamplesAndVerify, RoundTripPasses) {
  std::string dir = temp_path("cli_corpus");
  std::filesystem::remove_all(dir);
  RunResult wrote = run("examples " + dir);
  EXPECT_EQ(wrote.exit_code, 0) << wrote.output;
  RunResult verified = run("verify " + dir + " --no-cache");
  EXPECT_EQ(verified.exit_code, 0) << verified.output;
  EXPECT_NE(verified.output.find("VERIFY PASS"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CliVerify, EmptyDirectoryWarnsButSucceeds) {
  std::string dir = temp_path("cli_empty_corpus");
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  RunResult r = run("verify " + dir);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("nothing to verify"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CliVerify, BrokenSpecFileFailsTheRun) {
  std::string dir = temp_path("cli_broken_corpus");
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/broken.json");
    out << "{\"group\": [2]";  // truncated
  }
  RunResult r = run("verify " + dir + " --no-cache");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("FAIL"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CliCache, SecondRunHitsTheCache) {
  std::string cache = temp_path("cli_cache_dir");
  std::filesystem::remove_all(cache);
  std::string spec =
      "'{\"group\":[2],\"components\":[{\"rank\":2,"
      "\"unit_class_generators\":[],\"prime_classes\":[[1],[0]]}]}'";
  RunResult first = run("tblock " + spec + " --cache-dir " + cache);
  EXPECT_EQ(first.exit_code, 0) << first.output;
  EXPECT_FALSE(std::filesystem::is_empty(cache));
  RunResult second = run("tblock " + spec + " --cache-dir " + cache);
  EXPECT_EQ(second.exit_code, 0) << second.output;
  std::filesystem::remove_all(cache);
}

TEST(CliHelp, TopLevelHelpExitsZero) {
  RunResult r = run("--help");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("tblock"), std::string::npos);
  RunResult bad = run("frobnicate");
  EXPECT_EQ(bad.exit_code, 2);
}
