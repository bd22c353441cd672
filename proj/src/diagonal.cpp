#include "replaygen/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace replaygen {

DiagonalBuilder::DiagonalBuilder() {
  rows_.push_back({RowKind::kAllOnes, 0});
  rows_.push_back({RowKind::kOneCold, 2});
  pending_.insert(1);
}

std::int64_t DiagonalBuilder::append_row(RowKind k, int who) {
  rows_.push_back({k, who});
  return static_cast<std::int64_t>(rows_.size());
}

std::int64_t DiagonalBuilder::take_instance() {
  if (in_round_) throw std::logic_error("round already open");
  if (pending_.empty()) throw std::logic_error("instance queue is empty");
  std::int64_t x = *pending_.begin();
  pending_.erase(pending_.begin());
  presented_.push_back(x);
  presented_set_.insert(x);
  current_ = Round{};
  current_.t = static_cast<int>(history_.size()) + 1;
  current_.instance = x;
  in_round_ = true;
  return x;
}

bool DiagonalBuilder::member(int i, CanonicalIndex j) {
  if (i < 1 || j < 1) throw std::invalid_argument("table is 1-based");
  if (!in_round_) throw std::logic_error("membership question outside a round");
  ++current_.queries;
  std::int64_t m = std::max<std::int64_t>(j, current_.queries);
  while (table_rows() < m) {
    pending_.insert(append_row(RowKind::kAllOnes, 0));
  }
  i_high_ = std::max(i_high_, i);
  return value(i, j);
}

void DiagonalBuilder::end_round(int output_index) {
  if (!in_round_) throw std::logic_error("no round open");
  if (output_index < 1) throw std::invalid_argument("columns are 1-based");
  current_.output = output_index;
  i_high_ = std::max(i_high_, output_index);
  if (output_index != 1) {
    pending_.insert(trap_row_);
    released_.insert(trap_row_);
    current_.released = trap_row_;
    current_.diag_row = append_row(RowKind::kOneHot, output_index);
    diag_rows_.insert(current_.diag_row);
    trap_col_ = i_high_ + 1;
    current_.guard_row = append_row(RowKind::kOneCold, trap_col_);
    trap_row_ = current_.guard_row;
    i_high_ = trap_col_;
  }
  current_.chain_row = append_row(RowKind::kAllOnes, 0);
  pending_.insert(current_.chain_row);
  current_.trap_col = trap_col_;
  current_.trap_row = trap_row_;
  history_.push_back(current_);
  in_round_ = false;
}

bool DiagonalBuilder::value(int i, std::int64_t j) const {
  if (j < 1 || j > table_rows()) throw std::out_of_range("unassigned row");
  const TableRow& r = rows_[static_cast<std::size_t>(j - 1)];
  switch (r.kind) {
    case RowKind::kAllOnes:
      return true;
    case RowKind::kOneHot:
      return i == r.who;
    case RowKind::kOneCold:
      return i != r.who;
  }
  return false;
}

RowKind DiagonalBuilder::row_kind(std::int64_t j) const {
  if (j < 1 || j > table_rows()) throw std::out_of_range("unassigned row");
  return rows_[static_cast<std::size_t>(j - 1)].kind;
}

int DiagonalBuilder::row_special(std::int64_t j) const {
  if (j < 1 || j > table_rows()) throw std::out_of_range("unassigned row");
  return rows_[static_cast<std::size_t>(j - 1)].who;
}

bool DiagonalBuilder::invariants_ok(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (trap_row_ < 1 || trap_row_ > table_rows()) {
    return fail("trap row unassigned");
  }
  if (row_kind(trap_row_) != RowKind::kOneCold ||
      row_special(trap_row_) != trap_col_) {
    return fail("trap row does not exclude exactly the trap column");
  }
  auto queue_worthy = [&](std::int64_t j) {
    return row_kind(j) == RowKind::kAllOnes || released_.count(j) > 0;
  };
  for (std::int64_t j : pending_) {
    if (!queue_worthy(j)) return fail("queued row " + std::to_string(j));
    if (diag_rows_.count(j)) return fail("diagonal row queued");
  }
  for (std::int64_t j : presented_) {
    if (!queue_worthy(j)) return fail("presented row " + std::to_string(j));
    if (diag_rows_.count(j)) return fail("diagonal row presented");
  }
  for (std::int64_t j : diag_rows_) {
    if (row_kind(j) != RowKind::kOneHot) return fail("diagonal row shape");
  }
  std::int64_t prev = 0;
  for (const Round& r : history_) {
    if (r.chain_row <= prev) return fail("table rows not monotone");
    prev = r.chain_row;
  }
  return true;
}

DiagonalResolution resolve_diagonal(const DiagonalBuilder& b,
                                    double quiet_tail) {
  const auto& h = b.history();
  DiagonalResolution r;
  int total = static_cast<int>(h.size());
  for (const auto& round : h) {
    if (round.output != 1) r.last_active_round = round.t;
  }
  int window = std::max(1, static_cast<int>(std::ceil(quiet_tail * total)));
  r.stabilized = r.last_active_round <= total - window;
  if (r.stabilized) {
    r.target_index = b.trap().first;
    r.certificates.push_back(b.trap().second);
  } else {
    r.target_index = 1;
    for (const auto& round : h) {
      if (round.output != 1) r.certificates.push_back(round.diag_row);
    }
  }
  return r;
}

DiagonalVerdict score_diagonal(const DiagonalBuilder& b,
                               const DiagonalResolution& r) {
  DiagonalVerdict v;
  v.target_index = r.target_index;
  v.legal_for_target = true;
  for (std::int64_t j : b.presented()) {
    if (!b.value(r.target_index, j)) {
      v.legal_for_target = false;
      break;
    }
  }
  v.enumeration_ok = true;
  std::set<std::int64_t> covered(b.presented().begin(), b.presented().end());
  covered.insert(b.pending().begin(), b.pending().end());
  covered.insert(b.trap().second);  // the armed trap frees only later
  for (std::int64_t j = 1; j <= b.table_rows(); ++j) {
    if (b.value(r.target_index, j) && covered.count(j) == 0) {
      v.enumeration_ok = false;
      break;
    }
  }
  for (const auto& round : b.history()) {
    for (std::int64_t j = 1; j <= b.table_rows(); ++j) {
      if (b.value(round.output, j) && !b.value(r.target_index, j)) {
        v.mistake_times.push_back(round.t);
        break;
      }
    }
  }
  return v;
}

}  // namespace replaygen
