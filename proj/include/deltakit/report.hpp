#pragma once
/// @file report.hpp
/// @brief Invariant reports: one record per (spec, invariant, region), with
///        certification anchors, optional witnesses, and JSONL emission.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "deltakit/io.hpp"

namespace deltakit {

/// One computed invariant.  `value` is an integer, an integer list, or an
/// interval object depending on the invariant; `certified` is set only when a
/// closed-form predictor pinned the value and the scan matched it, and then
/// `certificate` names the predictor.
struct InvariantReport {
  std::string spec_digest;
  std::string spec_name;
  std::string invariant;
  std::string region;
  Json value;
  bool certified = false;
  std::string certificate;
  bool complete = true;  // false when a certified value was not attained
  Json witnesses = nullptr;
  std::int64_t runtime_ms = 0;

  Json to_json() const {
    Json j;
    j["spec_digest"] = spec_digest;
    if (!spec_name.empty()) j["spec_name"] = spec_name;
    j["invariant"] = invariant;
    j["region"] = region;
    j["value"] = value;
    j["certified"] = certified;
    if (certified) j["certificate"] = certificate;
    j["complete"] = complete;
    if (!witnesses.is_null()) j["witnesses"] = witnesses;
    j["runtime_ms"] = runtime_ms;
    return j;
  }

  static InvariantReport from_json(const Json& j) {
    InvariantReport r;
    r.spec_digest = j.value("spec_digest", std::string{});
    r.spec_name = j.value("spec_name", std::string{});
    r.invariant = j.value("invariant", std::string{});
    r.region = j.value("region", std::string{});
    r.value = j.value("value", Json(nullptr));
    r.certified = j.value("certified", false);
    r.certificate = j.value("certificate", std::string{});
    r.complete = j.value("complete", true);
    r.witnesses = j.value("witnesses", Json(nullptr));
    r.runtime_ms = j.value("runtime_ms", std::int64_t{0});
    return r;
  }
};

/// Emits one JSONL line per report.
inline void write_jsonl(std::ostream& os,
                        const std::vector<InvariantReport>& reports) {
  for (const InvariantReport& r : reports) {
    os << r.to_json().dump() << '\n';
  }
}

/// Human-readable one-liner for a report.
inline std::string format_report_line(const InvariantReport& r) {
  std::string line = r.invariant;
  if (!r.spec_name.empty()) line = r.spec_name + ": " + line;
  line += " [" + r.region + "] = " + r.value.dump();
  if (r.certified) line += "  (certified: " + r.certificate + ")";
  if (!r.complete) line += "  [INCOMPLETE]";
  return line;
}

/// Renders an integer set as either an interval object or a plain list.
inline Json delta_value_json(const std::vector<Coord>& sorted_delta) {
  if (sorted_delta.empty()) return Json::array();
  bool interval = true;
  for (std::size_t i = 0; i < sorted_delta.size(); ++i) {
    if (sorted_delta[i] != sorted_delta.front() + static_cast<Coord>(i)) {
      interval = false;
      break;
    }
  }
  if (interval) {
    Json j;
    j["interval"] = Json::array({sorted_delta.front(), sorted_delta.back()});
    return j;
  }
  return Json(sorted_delta);
}

}  // namespace deltakit
