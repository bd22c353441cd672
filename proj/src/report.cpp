#include "replaygen/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace replaygen {

using nlohmann::ordered_json;

std::string RunManifest::canonical() const {
  std::ostringstream os;
  os << "generator=" << generator << ";adversary=" << adversary
     << ";class=" << cls << ";target=" << target << ";seed=" << seed
     << ";horizon=" << horizon << ";notion=" << notion << ";extra=" << extra;
  return os.str();
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

ordered_json manifest_json(const RunManifest& m) {
  ordered_json j;
  j["generator"] = m.generator;
  j["adversary"] = m.adversary;
  j["class"] = m.cls;
  j["target"] = m.target;
  j["seed"] = m.seed;
  j["horizon"] = m.horizon;
  j["notion"] = m.notion;
  j["extra"] = m.extra;
  j["hash"] = hash_hex(fnv1a64(m.canonical()));
  return j;
}

namespace {

ordered_json header_json(const RunManifest& m, const char* kind,
                         RunOutcome outcome, const std::string& detail,
                         std::size_t rounds) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = kind;
  j["manifest"] = manifest_json(m);
  j["outcome"] = outcome_name(outcome);
  if (!detail.empty()) j["detail"] = detail;
  j["rounds"] = rounds;
  return j;
}

}  // namespace

std::string transcript_jsonl(const Transcript& tr, const RunManifest& m) {
  std::ostringstream os;
  os << header_json(m, "transcript", tr.outcome, tr.detail, tr.rounds.size())
     << "\n";
  for (const RoundRecord& r : tr.rounds) {
    ordered_json j;
    j["t"] = r.t;
    j["x"] = r.example.str();
    j["tag"] = step_tag_name(r.tag);
    j["o"] = r.output.str();
    j["q"] = r.queries;
    os << j << "\n";
  }
  return os.str();
}

std::string transcript_jsonl(const ProperTranscript& tr,
                             const RunManifest& m) {
  std::ostringstream os;
  os << header_json(m, "proper_transcript", tr.outcome, tr.detail,
                    tr.rounds.size())
     << "\n";
  for (const ProperRoundRecord& r : tr.rounds) {
    ordered_json j;
    j["t"] = r.t;
    j["x"] = r.example.str();
    j["tag"] = step_tag_name(r.tag);
    j["sure"] = r.sure;
    j["h"] = r.output_index;
    j["q"] = r.queries;
    os << j << "\n";
  }
  return os.str();
}

ordered_json verdict_json(const Verdict& v, const RunManifest& m) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "verdict";
  j["manifest"] = manifest_json(m);
  j["notion"] = notion_name(v.notion);
  j["rounds"] = v.rounds;
  j["legal_for_target"] = v.legal_for_target;
  j["mistakes"] = v.mistake_times.size();
  j["last_mistake"] = v.last_mistake;
  j["trigger_round"] = v.trigger_round;
  j["clean_tail"] = v.clean_tail;
  j["frontier"] = v.frontier;
  j["enumeration_ok"] = v.enumeration_ok;
  j["max_round_queries"] = v.max_round_queries;
  j["success"] = v.success;
  return j;
}

ordered_json verdict_json(const ProperVerdict& v, const RunManifest& m) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "proper_verdict";
  j["manifest"] = manifest_json(m);
  j["rounds"] = v.rounds;
  j["legal_for_target"] = v.legal_for_target;
  j["mistakes"] = v.mistake_times.size();
  j["last_mistake"] = v.last_mistake;
  j["clean_tail"] = v.clean_tail;
  j["max_round_queries"] = v.max_round_queries;
  j["success"] = v.success;
  return j;
}

void write_atomic(const std::filesystem::path& path,
                  const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string());
    }
    out << content;
    if (!out.good()) {
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace replaygen
