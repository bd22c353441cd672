#ifndef REPLAYGEN_DIAGONAL_HPP
#define REPLAYGEN_DIAGONAL_HPP

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "replaygen/proper.hpp"

namespace replaygen {

// Assigned table rows come in three shapes: everyone holds the instance,
// exactly one column does, or exactly one column does not.
enum class RowKind { kAllOnes, kOneHot, kOneCold };

struct TableRow {
  RowKind kind;
  int who = 0;  // the distinguished column for one-hot / one-cold rows
};

// Adversarial membership table built one round at a time against a proper
// generator. Presents the least pending instance, answers the generator's
// membership questions (extending the table with fresh all-ones rows when a
// question or the question count outruns it), then reacts to the output:
// naming anything but column 1 releases the current trap instance, lays
// down a fresh diagonal row that only the named column holds, and arms a
// new trap one column higher. A chain row everyone holds is appended every
// round so the queue never dries up.
class DiagonalBuilder : public MembershipOracle {
 public:
  struct Round {
    int t = 0;
    std::int64_t instance = 0;
    std::int64_t queries = 0;     // fresh questions routed here this round
    int output = 0;
    std::int64_t released = 0;    // trap instance freed into the queue
    std::int64_t diag_row = 0;    // row only the named column holds
    std::int64_t guard_row = 0;   // row the next trap column lacks
    std::int64_t chain_row = 0;
    int trap_col = 0;             // trap after the round
    std::int64_t trap_row = 0;
  };

  DiagonalBuilder();

  std::int64_t take_instance();
  bool member(int hyp_index, CanonicalIndex instance) override;
  void end_round(int output_index);

  std::int64_t table_rows() const { return static_cast<std::int64_t>(rows_.size()); }
  int column_high() const { return i_high_; }
  std::pair<int, std::int64_t> trap() const { return {trap_col_, trap_row_}; }
  const std::set<std::int64_t>& pending() const { return pending_; }
  const std::vector<std::int64_t>& presented() const { return presented_; }
  const std::vector<Round>& history() const { return history_; }

  bool value(int i, std::int64_t j) const;  // j must be assigned
  RowKind row_kind(std::int64_t j) const;
  int row_special(std::int64_t j) const;

  // Structural checks: rows form an initial segment, queue members are
  // all-ones rows or released traps, diagonal rows never reach the queue,
  // the armed trap is a one-cold row keyed to its own column.
  bool invariants_ok(std::string* why = nullptr) const;

 private:
  std::int64_t append_row(RowKind k, int who);

  std::vector<TableRow> rows_;
  std::set<std::int64_t> pending_;
  std::vector<std::int64_t> presented_;
  std::set<std::int64_t> presented_set_;
  std::set<std::int64_t> released_;
  std::set<std::int64_t> diag_rows_;
  int i_high_ = 2;
  int trap_col_ = 2;
  std::int64_t trap_row_ = 2;
  bool in_round_ = false;
  Round current_{};
  std::vector<Round> history_;
};

struct DiagonalResolution {
  int target_index = 0;
  bool stabilized = false;      // outputs settled on column 1
  int last_active_round = 0;    // last round naming something else
  std::vector<std::int64_t> certificates;
};

// Target designation: if the outputs keep naming non-1 columns, column 1 is
// the target and each diagonal row certifies its round; once they settle on
// column 1, the armed trap column is the target and its row certifies every
// remaining round.
DiagonalResolution resolve_diagonal(const DiagonalBuilder& b,
                                    double quiet_tail = 0.25);

struct DiagonalVerdict {
  int target_index = 0;
  bool legal_for_target = false;
  bool enumeration_ok = false;
  std::vector<int> mistake_times;  // rounds whose named column provably
                                   // sticks out of the target column
};

DiagonalVerdict score_diagonal(const DiagonalBuilder& b,
                               const DiagonalResolution& r);

}  // namespace replaygen

#endif
