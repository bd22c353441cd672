#ifndef REPLAYGEN_REPORT_HPP
#define REPLAYGEN_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "replaygen/engine.hpp"

namespace replaygen {

inline constexpr const char* kSchemaTag = "replaygen/v1";

// What a run was: enough to reproduce it and to fingerprint its reports.
struct RunManifest {
  std::string generator;
  std::string adversary;
  std::string cls;
  std::string target;
  std::uint64_t seed = 0;
  int horizon = 0;
  std::string notion;
  std::string extra;  // free-form knob summary, e.g. "rate=250"

  std::string canonical() const;
};

std::uint64_t fnv1a64(std::string_view s);
std::string hash_hex(std::uint64_t h);

nlohmann::ordered_json manifest_json(const RunManifest& m);

// One header object, then one object per round, newline-delimited.
std::string transcript_jsonl(const Transcript& tr, const RunManifest& m);
std::string transcript_jsonl(const ProperTranscript& tr, const RunManifest& m);

nlohmann::ordered_json verdict_json(const Verdict& v, const RunManifest& m);
nlohmann::ordered_json verdict_json(const ProperVerdict& v,
                                    const RunManifest& m);

// Writes via a sibling temp file and renames into place.
void write_atomic(const std::filesystem::path& path,
                  const std::string& content);

}  // namespace replaygen

#endif
