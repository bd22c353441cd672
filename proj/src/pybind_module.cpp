#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "replaygen/adversary.hpp"
#include "replaygen/classes.hpp"
#include "replaygen/diagonal.hpp"
#include "replaygen/engine.hpp"
#include "replaygen/grid.hpp"
#include "replaygen/proper.hpp"
#include "replaygen/registry.hpp"
#include "replaygen/report.hpp"

namespace py = pybind11;

namespace {

using namespace replaygen;
using nlohmann::ordered_json;

py::object json_to_py(const ordered_json& j) {
  switch (j.type()) {
    case ordered_json::value_t::object: {
      py::dict d;
      for (const auto& item : j.items()) {
        d[py::str(item.key())] = json_to_py(item.value());
      }
      return d;
    }
    case ordered_json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(json_to_py(v));
      return l;
    }
    case ordered_json::value_t::string:
      return py::str(j.get<std::string>());
    case ordered_json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case ordered_json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case ordered_json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case ordered_json::value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

Notion parse_notion(const std::string& s) {
  if (s == "uniform") return Notion::kUniform;
  if (s == "nonuniform") return Notion::kNonuniform;
  if (s == "limit") return Notion::kLimit;
  throw std::invalid_argument("unknown notion: " + s);
}

py::list round_list(const Transcript& tr) {
  py::list rounds;
  for (const RoundRecord& rr : tr.rounds) {
    py::dict d;
    d["t"] = rr.t;
    d["example"] = rr.example.str();
    d["tag"] = step_tag_name(rr.tag);
    d["output"] = rr.output.str();
    d["queries"] = rr.queries;
    rounds.append(d);
  }
  return rounds;
}

py::dict class_info(const std::string& id) {
  ClassEntry ce = class_by_id(id);
  py::dict d;
  d["id"] = ce.id;
  d["name"] = ce.cls.name();
  d["d_star"] = ce.d_star;
  std::optional<int> size = ce.cls.size();
  d["finite"] = size.has_value();
  d["size"] = size ? py::object(py::int_(*size)) : py::object(py::none());
  py::list members;
  int upto = size ? *size : 6;
  for (int i = 1; i <= upto; ++i) members.append(ce.cls.at(i).name());
  d["members"] = members;
  return d;
}

// Mirrors the CLI run command: play one game, score or certify it, and hand
// back the same report objects as plain dicts.
py::dict run_duel(const std::string& class_id, const std::string& generator,
                  const std::string& adversary, int target, int horizon,
                  std::uint64_t seed, int rate, const std::string& pick,
                  int killer_d, int stall_cap, const std::string& notion,
                  int d_star, bool include_rounds) {
  ClassEntry ce = class_by_id(class_id);
  auto gen = generator_by_id(generator, ce);
  AdversaryConfig ac;
  ac.id = adversary;
  ac.target_index = target;
  ac.inject_rate = rate;
  ac.seed = seed;
  ac.pick = pick;
  ac.killer_d = killer_d;
  ac.stall_cap = stall_cap;
  auto adv = adversary_by_id(ac, ce);

  Transcript tr = run_game(*gen, *adv, horizon);

  RunManifest m;
  m.generator = tr.generator_id;
  m.adversary = tr.adversary_id;
  m.cls = ce.id;
  m.seed = seed;
  m.horizon = horizon;
  m.notion = notion;

  ordered_json vj;
  bool holds = false;
  if (adversary == "nonuniform-killer") {
    KillerCertificate cert = certify_nonuniform_killer(tr, ce.cls, killer_d);
    retag_transcript(tr, ce.cls.at(1));
    m.target = "roof|chain";
    m.extra = "d=" + std::to_string(killer_d);
    vj["kind"] = "killer_certificate";
    vj["manifest"] = manifest_json(m);
    vj["legal_for_roof"] = cert.legal_for_roof;
    vj["legal_for_chain"] = cert.legal_for_chain;
    vj["uncovered_rounds"] = cert.uncovered_rounds.size();
    vj["dichotomy"] = cert.dichotomy;
    holds = cert.dichotomy;
  } else if (adversary == "separation-killer") {
    auto* killer = dynamic_cast<SeparationKiller*>(adv.get());
    SeparationCertificate cert = certify_separation(tr, *killer);
    retag_transcript(tr, killer->resolved_target());
    m.target = cert.target_name;
    m.extra = "cap=" + std::to_string(stall_cap);
    holds = cert.stream_legal &&
            (cert.outcome == SeparationKiller::Outcome::kRunning
                 ? !cert.escape_mistake_rounds.empty()
                 : cert.total_mistakes > 0);
    vj["kind"] = "separation_certificate";
    vj["manifest"] = manifest_json(m);
    vj["target"] = cert.target_name;
    vj["stream_legal"] = cert.stream_legal;
    vj["escape_mistakes"] = cert.escape_mistake_rounds.size();
    vj["total_mistakes"] = cert.total_mistakes;
    vj["holds"] = holds;
  } else {
    Hypothesis th = ce.cls.at(target);
    m.target = th.name();
    if (adversary == "inject") {
      m.extra = "rate=" + std::to_string(rate) + "," + pick;
    }
    retag_transcript(tr, th);
    ScoreParams p;
    p.d_star = d_star >= 0 ? d_star : ce.d_star;
    Verdict v = score_transcript(tr, th, parse_notion(notion), p);
    vj = verdict_json(v, m);
    holds = v.success;
  }

  py::dict out = json_to_py(vj).cast<py::dict>();
  out["outcome"] = outcome_name(tr.outcome);
  out["holds"] = holds;
  if (include_rounds) out["rounds_log"] = round_list(tr);
  return out;
}

py::dict proper_duel(const std::string& generator, int horizon) {
  ClassEntry ce = class_by_id("proper-four");
  auto gen = proper_generator_by_id(generator, ce.cls);
  ProperReplayKiller adv;
  ProperTranscript tr = run_proper_game(*gen, adv, ce.cls, horizon);
  ProperKillerCertificate cert =
      certify_proper_killer(tr, ce.cls, adv.dual_targets());
  py::dict out;
  out["generator"] = tr.generator_id;
  out["outcome"] = outcome_name(tr.outcome);
  out["rounds"] = tr.rounds.size();
  out["legal_duals"] = cert.legal_duals;
  out["persisting_duals"] = cert.persisting_duals;
  out["holds"] = cert.holds;
  return out;
}

py::dict diagonal_duel(int horizon) {
  DiagonalBuilder table;
  CountingOracle oracle(table);
  GreedyProperGenerator gen;
  for (int t = 1; t <= horizon; ++t) {
    std::int64_t x = table.take_instance();
    oracle.begin_round(t);
    int out = gen.step(x, true, oracle);
    table.end_round(out);
    std::string why;
    if (!table.invariants_ok(&why)) {
      throw std::runtime_error("table invariant broke at round " +
                               std::to_string(t) + ": " + why);
    }
  }
  DiagonalResolution res = resolve_diagonal(table);
  DiagonalVerdict dv = score_diagonal(table, res);
  py::dict out;
  out["rounds"] = horizon;
  out["table_rows"] = table.table_rows();
  out["target_index"] = res.target_index;
  out["stabilized"] = res.stabilized;
  out["legal_for_target"] = dv.legal_for_target;
  out["enumeration_ok"] = dv.enumeration_ok;
  out["mistakes"] = dv.mistake_times.size();
  out["holds"] = dv.legal_for_target && dv.enumeration_ok;
  return out;
}

py::dict grid(bool fast) {
  GridResult r = run_grid(fast);
  py::dict out;
  py::list cells;
  for (const GridCell& c : r.cells) cells.append(json_to_py(cell_json(c)));
  out["cells"] = cells;
  out["all_ok"] = r.all_ok;
  out["csv"] = grid_csv(r);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Replay-closed generation games: hypothesis classes, generators, "
      "adversaries, and the verdicts that score them.";

  mod.def("known_class_ids", &known_class_ids,
          "Registry ids accepted wherever a class_id is expected.");
  mod.def("class_info", &class_info, py::arg("class_id"),
          "Name, membership threshold, and member names for a registry class.");

  mod.def("element_index",
          [](const std::string& s) { return parse_element(s).index(); },
          py::arg("text"),
          "Canonical 1-based position of an element given as text, e.g. '-3' "
          "or '*^4'.");
  mod.def("element_at",
          [](CanonicalIndex i) { return deindex(i).str(); },
          py::arg("index"), "Element sitting at a canonical position.");

  mod.def("run", &run_duel, py::arg("class_id"), py::arg("generator"),
          py::arg("adversary") = "fair", py::arg("target") = 1,
          py::arg("horizon") = 200, py::arg("seed") = 0,
          py::arg("rate") = 250, py::arg("pick") = "recent",
          py::arg("killer_d") = 3, py::arg("stall_cap") = 2000,
          py::arg("notion") = "limit", py::arg("d_star") = -1,
          py::arg("include_rounds") = false,
          "Play one improper game and return its verdict or certificate.");

  mod.def("proper_duel", &proper_duel, py::arg("generator") = "greedy",
          py::arg("horizon") = 200,
          "Proper-mode game on the four-member trap class; reports which dual "
          "targets stay legal and mistaken.");

  mod.def("diagonal_duel", &diagonal_duel, py::arg("horizon") = 100,
          "Adaptive table against the greedy proper player, with invariants "
          "checked every round.");

  mod.def("grid", &grid, py::arg("fast") = true,
          "Run the notion-by-family battery and return its cells.");
}
