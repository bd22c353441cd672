#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "replaygen/diagonal.hpp"
#include "replaygen/engine.hpp"
#include "replaygen/errors.hpp"
#include "replaygen/grid.hpp"
#include "replaygen/registry.hpp"
#include "replaygen/report.hpp"
#include "replaygen/wp.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace replaygen;

namespace {

// 0 claim demonstrated, 1 ran clean but the claim did not hold,
// 2 bad configuration, 3 broken game (contract breach or runaway round).
constexpr int kOk = 0;
constexpr int kClaimFailed = 1;
constexpr int kBadConfig = 2;
constexpr int kBrokenGame = 3;

struct RunOptions {
  std::string generator = "wp";
  std::string adversary = "fair";
  std::string class_id = "hard-chain";
  int target = 1;
  int horizon = 200;
  std::uint64_t seed = 0;
  int rate = 250;
  std::string pick = "recent";
  int killer_d = 3;
  int stall_cap = 2000;
  std::string notion = "limit";
  int d_star = -1;  // -1: take the class entry's threshold
  std::int64_t min_frontier = 0;
  double quiet_tail = 0.25;
  std::int64_t budget = 1'000'000;
  std::string out;
};

struct GridOptions {
  std::string out;
  bool fast = false;
};

struct TraceOptions {
  std::string class_id = "hard-chain";
  int target = 1;
  int horizon = 12;
  int rate = 0;
  std::uint64_t seed = 0;
  bool baseline = false;
};

Notion parse_notion(const std::string& s) {
  if (s == "uniform") return Notion::kUniform;
  if (s == "nonuniform") return Notion::kNonuniform;
  if (s == "limit") return Notion::kLimit;
  throw std::invalid_argument("notion must be uniform, nonuniform or limit");
}

const char* sep_outcome_name(SeparationKiller::Outcome o) {
  switch (o) {
    case SeparationKiller::Outcome::kMarkerStall:
      return "marker_stall";
    case SeparationKiller::Outcome::kPhaseStall:
      return "phase_stall";
    default:
      return "running";
  }
}

void emit(const std::string& out_dir, const std::string& transcript,
          const ordered_json& verdict) {
  std::cout << verdict.dump(2) << "\n";
  if (!out_dir.empty()) {
    fs::path dir(out_dir);
    write_atomic(dir / "transcript.jsonl", transcript);
    write_atomic(dir / "verdict.json", verdict.dump(2) + "\n");
  }
}

int finish(int rc, RunOutcome outcome) {
  if (outcome == RunOutcome::kProtocolViolation ||
      outcome == RunOutcome::kNonHaltingRound) {
    return kBrokenGame;
  }
  return rc;
}

// The table-builder game: greedy namer against the adaptive membership
// table, judged by the post-hoc column designation.
int do_diagonal(const RunOptions& o) {
  if (o.generator != "greedy") {
    throw std::invalid_argument("the diagonal table plays the greedy namer");
  }
  DiagonalBuilder b;
  CountingOracle oracle(b, o.budget);
  GreedyProperGenerator gen;
  RunOutcome outcome = RunOutcome::kCompleted;
  try {
    for (int t = 1; t <= o.horizon; ++t) {
      std::int64_t x = b.take_instance();
      oracle.begin_round(t);
      b.end_round(gen.step(x, true, oracle));
    }
  } catch (const QueryBudgetExceeded&) {
    outcome = RunOutcome::kNonHaltingRound;
  }
  DiagonalResolution res = resolve_diagonal(b, o.quiet_tail);
  DiagonalVerdict v = score_diagonal(b, res);
  std::string why;
  bool inv = b.invariants_ok(&why);

  RunManifest m{gen.name(),
                "diagonal_table",
                "diagonal-table",
                "col" + std::to_string(res.target_index),
                o.seed,
                o.horizon,
                "proper",
                ""};
  bool ok = inv && v.legal_for_target && v.enumeration_ok &&
            !v.mistake_times.empty();

  ordered_json vj;
  vj["schema"] = kSchemaTag;
  vj["kind"] = "diagonal_verdict";
  vj["manifest"] = manifest_json(m);
  vj["target_index"] = v.target_index;
  vj["stabilized"] = res.stabilized;
  vj["legal_for_target"] = v.legal_for_target;
  vj["enumeration_ok"] = v.enumeration_ok;
  vj["mistakes"] = v.mistake_times.size();
  vj["certificate_rows"] = res.certificates;
  vj["table_rows"] = b.table_rows();
  vj["invariants_ok"] = inv;
  if (!inv) vj["invariants_why"] = why;
  vj["holds"] = ok;

  std::ostringstream os;
  ordered_json h;
  h["schema"] = kSchemaTag;
  h["kind"] = "diagonal_transcript";
  h["manifest"] = manifest_json(m);
  h["outcome"] = outcome_name(outcome);
  h["rounds"] = b.history().size();
  os << h.dump() << "\n";
  for (const DiagonalBuilder::Round& r : b.history()) {
    ordered_json j;
    j["t"] = r.t;
    j["x"] = r.instance;
    j["q"] = r.queries;
    j["o"] = r.output;
    j["released"] = r.released;
    j["diag"] = r.diag_row;
    j["guard"] = r.guard_row;
    j["chain"] = r.chain_row;
    j["trap_col"] = r.trap_col;
    j["trap_row"] = r.trap_row;
    os << j.dump() << "\n";
  }
  emit(o.out, os.str(), vj);
  return finish(ok ? kOk : kClaimFailed, outcome);
}

// Index-naming generators against the dual-target trap stream.
int do_proper(const RunOptions& o) {
  if (o.adversary != "proper-killer") {
    throw std::invalid_argument(
        "index-naming generators play the proper-killer stream "
        "(or --adversary diagonal with the greedy namer)");
  }
  if (o.class_id != "proper-four") {
    throw std::invalid_argument(
        "the proper-killer stream is built for class proper-four");
  }
  ClassEntry ce = class_by_id(o.class_id);
  auto gen = proper_generator_by_id(o.generator, ce.cls);
  ProperReplayKiller adv;
  ProperTranscript tr = run_proper_game(*gen, adv, ce.cls, o.horizon, o.budget);
  ProperKillerCertificate cert =
      certify_proper_killer(tr, ce.cls, adv.dual_targets(), o.quiet_tail);

  int dual = cert.legal_duals.empty() ? o.target : cert.legal_duals.front();
  Hypothesis th = ce.cls.at(dual);
  retag_proper_transcript(tr, ce.cls, th);

  RunManifest m{tr.generator_id, tr.adversary_id, ce.id,    th.name(),
                o.seed,          o.horizon,       "proper", ""};
  ordered_json vj;
  vj["schema"] = kSchemaTag;
  vj["kind"] = "proper_killer_certificate";
  vj["manifest"] = manifest_json(m);
  vj["legal_duals"] = cert.legal_duals;
  vj["persisting_duals"] = cert.persisting_duals;
  vj["holds"] = cert.holds;

  emit(o.out, transcript_jsonl(tr, m), vj);
  return finish(cert.holds ? kOk : kClaimFailed, tr.outcome);
}

int do_run(const RunOptions& o) {
  if (o.adversary == "diagonal") return do_diagonal(o);
  if (o.generator == "greedy" || o.generator == "critical") {
    return do_proper(o);
  }

  ClassEntry ce = class_by_id(o.class_id);
  auto gen = generator_by_id(o.generator, ce);
  AdversaryConfig ac;
  ac.id = o.adversary;
  ac.target_index = o.target;
  ac.inject_rate = o.rate;
  ac.seed = o.seed;
  ac.pick = o.pick;
  ac.killer_d = o.killer_d;
  ac.stall_cap = o.stall_cap;
  auto adv = adversary_by_id(ac, ce);

  Transcript tr = run_game(*gen, *adv, o.horizon);

  RunManifest m;
  m.generator = tr.generator_id;
  m.adversary = tr.adversary_id;
  m.cls = ce.id;
  m.seed = o.seed;
  m.horizon = o.horizon;
  m.notion = o.notion;

  int rc;
  ordered_json vj;
  if (o.adversary == "nonuniform-killer") {
    KillerCertificate cert = certify_nonuniform_killer(tr, ce.cls, o.killer_d);
    retag_transcript(tr, ce.cls.at(1));  // roof view for the round tags
    m.target = "roof|chain";
    m.extra = "d=" + std::to_string(o.killer_d);
    vj["schema"] = kSchemaTag;
    vj["kind"] = "killer_certificate";
    vj["manifest"] = manifest_json(m);
    vj["legal_for_roof"] = cert.legal_for_roof;
    vj["legal_for_chain"] = cert.legal_for_chain;
    vj["uncovered_rounds"] = cert.uncovered_rounds.size();
    vj["dichotomy"] = cert.dichotomy;
    rc = cert.dichotomy ? kOk : kClaimFailed;
  } else if (o.adversary == "separation-killer") {
    auto* killer = dynamic_cast<SeparationKiller*>(adv.get());
    SeparationCertificate cert = certify_separation(tr, *killer);
    retag_transcript(tr, killer->resolved_target());
    m.target = cert.target_name;
    m.extra = "cap=" + std::to_string(o.stall_cap);
    // A capped run indicts every output of the stalled stretch; an uncapped
    // one needs at least one verified escape mistake.
    bool ok = cert.stream_legal &&
              (cert.outcome == SeparationKiller::Outcome::kRunning
                   ? !cert.escape_mistake_rounds.empty()
                   : cert.total_mistakes > 0);
    vj["schema"] = kSchemaTag;
    vj["kind"] = "separation_certificate";
    vj["manifest"] = manifest_json(m);
    vj["target"] = cert.target_name;
    vj["outcome"] = sep_outcome_name(cert.outcome);
    vj["stream_legal"] = cert.stream_legal;
    vj["escape_mistakes"] = cert.escape_mistake_rounds.size();
    vj["total_mistakes"] = cert.total_mistakes;
    vj["holds"] = ok;
    rc = ok ? kOk : kClaimFailed;
  } else {
    Hypothesis th = ce.cls.at(o.target);
    m.target = th.name();
    if (o.adversary == "inject") {
      m.extra = "rate=" + std::to_string(o.rate) + "," + o.pick;
    }
    retag_transcript(tr, th);
    ScoreParams p;
    p.d_star = o.d_star >= 0 ? o.d_star : ce.d_star;
    p.quiet_tail = o.quiet_tail;
    p.min_frontier = o.min_frontier;
    Verdict v = score_transcript(tr, th, parse_notion(o.notion), p);
    vj = verdict_json(v, m);
    rc = v.success ? kOk : kClaimFailed;
  }
  emit(o.out, transcript_jsonl(tr, m), vj);
  return finish(rc, tr.outcome);
}

int do_grid(const GridOptions& g) {
  GridResult r = run_grid(g.fast);
  std::string csv = grid_csv(r);
  std::cout << csv;
  if (!g.out.empty()) {
    fs::path dir(g.out);
    write_atomic(dir / "grid.csv", csv);
    for (const GridCell& c : r.cells) {
      write_atomic(dir / "cells" / (c.notion + "-" + c.family + ".json"),
                   cell_json(c).dump(2) + "\n");
    }
  }
  std::cerr << (r.all_ok ? "battery: all cells hold\n"
                         : "battery: some cell failed\n");
  return r.all_ok ? kOk : kClaimFailed;
}

int do_trace(const TraceOptions& o) {
  ClassEntry ce = class_by_id(o.class_id);
  std::unique_ptr<WpGenerator> gen =
      o.baseline ? make_baseline_generator(ce.cls) : make_wp_generator(ce.cls);
  AdversaryConfig ac;
  ac.id = o.rate > 0 ? "inject" : "fair";
  ac.target_index = o.target;
  ac.inject_rate = o.rate;
  ac.seed = o.seed;
  auto adv = adversary_by_id(ac, ce);
  Hypothesis th = ce.cls.at(o.target);

  std::cout << gen->name() << " vs " << adv->name() << "\n";
  std::cout << std::setw(4) << "t" << std::setw(8) << "x" << std::setw(9)
            << "tag" << std::setw(6) << "sure" << std::setw(6) << "m"
            << std::setw(6) << "crit" << std::setw(8) << "o" << std::setw(8)
            << "q" << "  live\n";
  std::vector<Element> outs;
  std::int64_t total_q = 0;
  for (int t = 1; t <= o.horizon; ++t) {
    std::optional<Element> x = adv->produce(outs);
    if (!x) break;
    StepTag tag = validate_step(th, outs, *x);
    Element out = gen->step(*x);
    outs.push_back(out);
    const WpRoundTrace& rt = gen->last_trace();
    total_q += rt.queries;
    std::ostringstream live;
    for (std::size_t i = 0; i < rt.live.size() && i < 6; ++i) {
      live << (i ? " " : "") << rt.live[i];
    }
    if (rt.live.size() > 6) live << " ..";
    std::cout << std::setw(4) << t << std::setw(8) << x->str() << std::setw(9)
              << step_tag_name(tag) << std::setw(6) << (rt.sure ? "*" : "")
              << std::setw(6) << rt.m << std::setw(6)
              << (rt.fallback ? std::string("-")
                              : std::to_string(rt.critical_index))
              << std::setw(8) << out.str() << std::setw(8) << rt.queries
              << "  {" << live.str() << "}\n";
  }
  std::cout << "total questions: " << total_q << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"replay-adversary generation games"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");
  app.set_version_flag("--version", "replaygen 0.1.0");

  RunOptions ro;
  auto* run = app.add_subcommand("run", "play one game, judge it, report");
  run->add_option("--generator,-g", ro.generator,
                  "wp | baseline | composite | wrapper | greedy | critical")
      ->capture_default_str();
  run->add_option("--adversary,-a", ro.adversary,
                  "fair | inject | nonuniform-killer | separation-killer | "
                  "proper-killer | diagonal")
      ->capture_default_str();
  run->add_option("--class,-c", ro.class_id,
                  "split3 | horns | meet0 | chain | hard-chain | proper-four "
                  "| generic-<seed>")
      ->capture_default_str();
  run->add_option("--target,-t", ro.target, "target index within the class")
      ->capture_default_str();
  run->add_option("--horizon,-T", ro.horizon, "rounds to play")
      ->capture_default_str();
  run->add_option("--seed,-s", ro.seed, "stream seed")->capture_default_str();
  run->add_option("--rate", ro.rate, "echo rate in permille (inject)")
      ->capture_default_str();
  run->add_option("--pick", ro.pick, "which output to echo: recent | random")
      ->capture_default_str();
  run->add_option("--killer-d", ro.killer_d, "nonuniform-killer prefix length")
      ->capture_default_str();
  run->add_option("--stall-cap", ro.stall_cap,
                  "separation-killer per-phase round cap")
      ->capture_default_str();
  run->add_option("--notion", ro.notion, "uniform | nonuniform | limit")
      ->capture_default_str();
  run->add_option("--d-star", ro.d_star,
                  "distinct-example threshold override (uniform scoring)");
  run->add_option("--min-frontier", ro.min_frontier,
                  "enumeration demand for limit scoring")
      ->capture_default_str();
  run->add_option("--quiet-tail", ro.quiet_tail,
                  "final fraction that must be mistake-free")
      ->capture_default_str();
  run->add_option("--budget", ro.budget,
                  "membership-question budget per round (index-naming games)")
      ->capture_default_str();
  run->add_option("--out,-o", ro.out,
                  "directory for transcript.jsonl and verdict.json");

  GridOptions go;
  auto* grid = app.add_subcommand("grid", "run the notion-by-family battery");
  grid->add_flag("--fast", go.fast, "trimmed horizons for smoke use");
  grid->add_option("--out,-o", go.out, "directory for grid.csv and cells/");

  TraceOptions to;
  auto* trace =
      app.add_subcommand("trace", "print per-round generator internals");
  trace->add_option("--class,-c", to.class_id, "class id")
      ->capture_default_str();
  trace->add_option("--target,-t", to.target, "target index")
      ->capture_default_str();
  trace->add_option("--horizon,-T", to.horizon, "rounds to play")
      ->capture_default_str();
  trace->add_option("--rate", to.rate, "echo rate in permille, 0 = fair")
      ->capture_default_str();
  trace->add_option("--seed,-s", to.seed, "stream seed")
      ->capture_default_str();
  trace->add_flag("--baseline", to.baseline,
                  "trace the trust-everything contrast instead");

  int rc = kOk;
  run->callback([&] { rc = do_run(ro); });
  grid->callback([&] { rc = do_grid(go); });
  trace->callback([&] { rc = do_trace(to); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  } catch (const QueryBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBrokenGame;
  } catch (const ProtocolViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBrokenGame;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  }
  return rc;
}
