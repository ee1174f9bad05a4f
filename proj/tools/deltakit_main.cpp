/// @file deltakit_main.cpp
/// @brief Command-line front end: group invariants, block-structure scans,
///        corpus verification, and bundled-example regeneration.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "deltakit/commands.hpp"

namespace {

/// Parses "seq=K,exp=K" (either key optional) into the option struct.
bool parse_caps(const std::string& text, deltakit::CliOptions& opt,
                std::string& error) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      error = "expected key=value, got '" + item + "'";
      return false;
    }
    std::string key = item.substr(0, eq);
    deltakit::Coord value = 0;
    try {
      value = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      error = "cap value in '" + item + "' is not an integer";
      return false;
    }
    if (value < 0) {
      error = "cap value in '" + item + "' is negative";
      return false;
    }
    if (key == "seq") {
      opt.cap_seq = value;
    } else if (key == "exp") {
      opt.cap_exp = value;
    } else {
      error = "unknown cap '" + key + "' (use seq or exp)";
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "deltakit: exact arithmetic invariants (sets of lengths, distance "
      "sets, catenary degrees) of zero-sum and block structures"};
  app.require_subcommand(1);

  deltakit::CliOptions opt;
  std::string caps_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--caps", caps_text,
                    "scan region caps, e.g. seq=6,exp=4");
    sub->add_option("--workers", opt.workers,
                    "worker thread count (0 = hardware concurrency)");
    sub->add_flag("--no-cache", opt.no_cache,
                  "disable the on-disk result cache");
    sub->add_option("--cache-dir", opt.cache_dir,
                    "cache directory (default: DELTAKIT_CACHE_DIR or "
                    "~/.cache/deltakit)");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-order", opt.max_order,
                    "largest group order accepted");
    sub->add_option("--region-guard", opt.region_guard,
                    "refuse scans above this candidate count");
  };

  std::string group_spec;
  CLI::App* group = app.add_subcommand(
      "group", "invariants of the block monoid over a finite abelian group");
  group->add_option("spec", group_spec,
                    "group spec: JSON file path or inline JSON, e.g. "
                    "'[2,4]' or '{\"group\":[3,3]}'")
      ->required();
  add_common(group);

  std::string tblock_spec;
  CLI::App* tblock = app.add_subcommand(
      "tblock",
      "distance-set scan of a block structure with primary components");
  tblock->add_option("spec", tblock_spec,
                     "block spec: JSON file path or inline JSON")
      ->required();
  tblock->add_flag("--predict", opt.predict,
                   "require the two-element-class-group distance formula "
                   "(errors unless |G| = 2 with the full ground set)");
  add_common(tblock);

  std::string verify_dir;
  CLI::App* verify = app.add_subcommand(
      "verify", "scan every spec in a directory and check its expectations");
  verify->add_option("dir", verify_dir, "directory of *.json spec files")
      ->required();
  add_common(verify);

  std::string examples_dir;
  CLI::App* examples = app.add_subcommand(
      "examples", "write the bundled spec corpus into a directory");
  examples->add_option("dir", examples_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!caps_text.empty()) {
    std::string error;
    if (!parse_caps(caps_text, opt, error)) {
      std::cerr << "error: bad --caps: " << error << '\n';
      return 2;
    }
  }

  if (group->parsed()) return deltakit::cmd_group(group_spec, opt);
  if (tblock->parsed()) return deltakit::cmd_tblock(tblock_spec, opt);
  if (verify->parsed()) return deltakit::cmd_verify(verify_dir, opt);
  if (examples->parsed()) return deltakit::cmd_examples(examples_dir, opt);
  return 2;
}
