// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/dp.h"

#include <algorithm>
#include <array>
#include <limits>

namespace pbc {

std::int64_t UpdateState(std::int64_t cur_state, CellType type, Symbol new_char,
                         std::uint64_t size_x, std::uint64_t size_y) {
  const auto sx = static_cast<std::int64_t>(size_x);
  const auto sy = static_cast<std::int64_t>(size_y);
  if (type == CellType::kPattern) cur_state += sx + sy;
  if (new_char != kWildcard) {
    cur_state += sx;
  } else {
    cur_state -= sx;
  }
  return cur_state;
}

namespace {

void RequireNonEmpty(const PatternString& cs_x, const PatternString& cs_y) {
  if (cs_x.empty() || cs_y.empty()) {
    throw Error(ErrorCode::kEmptyPattern, "cannot merge an empty pattern string");
  }
}

bool Matches(Symbol a, Symbol b) { return a == b && a != kWildcard; }

}  // namespace

DpTable FillDpTable(const PatternString& cs_x, const PatternString& cs_y,
                    std::uint64_t size_x, std::uint64_t size_y) {
  RequireNonEmpty(cs_x, cs_y);
  const std::size_t n = cs_x.size();
  const std::size_t m = cs_y.size();
  DpTable t(n + 1, m + 1);
  t.state(0, 0) = 0;
  t.type(0, 0) = CellType::kPattern;
  for (std::size_t i = 1; i <= n; ++i) {
    t.state(i, 0) = UpdateState(t.state(i - 1, 0), t.type(i - 1, 0), cs_x[i - 1], size_x, size_y);
    t.type(i, 0) = CellType::kResidual;
    t.step(i, 0) = Step::kUp;
  }
  for (std::size_t j = 1; j <= m; ++j) {
    t.state(0, j) = UpdateState(t.state(0, j - 1), t.type(0, j - 1), cs_y[j - 1], size_y, size_x);
    t.type(0, j) = CellType::kResidual;
    t.step(0, j) = Step::kLeft;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t up =
          UpdateState(t.state(i - 1, j), t.type(i - 1, j), cs_x[i - 1], size_x, size_y);
      const std::int64_t left =
          UpdateState(t.state(i, j - 1), t.type(i, j - 1), cs_y[j - 1], size_y, size_x);
      const std::int64_t best_rs = std::min(up, left);
      // An open residual run is worth at least as much as a closed pattern
      // state of equal value, so the diagonal must win strictly.
      if (Matches(cs_x[i - 1], cs_y[j - 1]) && t.state(i - 1, j - 1) < best_rs) {
        t.state(i, j) = t.state(i - 1, j - 1);
        t.type(i, j) = CellType::kPattern;
        t.step(i, j) = Step::kDiagonal;
      } else {
        t.state(i, j) = best_rs;
        t.type(i, j) = CellType::kResidual;
        t.step(i, j) = up <= left ? Step::kUp : Step::kLeft;
      }
    }
  }
  return t;
}

MergeOutcome MinElIncrementFast(const PatternString& cs_x, const PatternString& cs_y,
                                std::uint64_t size_x, std::uint64_t size_y) {
  const DpTable t = FillDpTable(cs_x, cs_y, size_x, size_y);
  MergeOutcome out;
  std::size_t i = cs_x.size();
  std::size_t j = cs_y.size();
  out.increment = t.state(i, j);

  PatternString reversed;
  while (i > 0 || j > 0) {
    switch (t.step(i, j)) {
      case Step::kDiagonal:
        reversed.push_back(cs_x[i - 1]);
        --i;
        --j;
        continue;
      case Step::kUp:
        if (cs_x[i - 1] != kWildcard) out.dropped_x.push_back(static_cast<std::uint8_t>(cs_x[i - 1]));
        --i;
        break;
      case Step::kLeft:
        if (cs_y[j - 1] != kWildcard) out.dropped_y.push_back(static_cast<std::uint8_t>(cs_y[j - 1]));
        --j;
        break;
      case Step::kStart:
        i = j = 0;
        continue;
    }
    if (reversed.empty() || reversed.back() != kWildcard) reversed.push_back(kWildcard);
  }
  out.merged.assign(reversed.rbegin(), reversed.rend());
  std::reverse(out.dropped_x.begin(), out.dropped_x.end());
  std::reverse(out.dropped_y.begin(), out.dropped_y.end());
  return out;
}

IncrementBound MinElIncrementBounded(const PatternString& cs_x, const PatternString& cs_y,
                                     std::uint64_t size_x, std::uint64_t size_y,
                                     std::optional<std::int64_t> abandon_above) {
  RequireNonEmpty(cs_x, cs_y);
  const std::size_t n = cs_x.size();
  const std::size_t m = cs_y.size();
  const auto sx = static_cast<std::int64_t>(size_x);
  const auto sy = static_cast<std::int64_t>(size_y);
  const std::int64_t penalty = sx + sy;

  // val: cell state. pen: state plus the penalty a pattern-typed cell adds
  // to its successors, i.e. what up/left moves start from.
  std::vector<std::int64_t> prev_val(m + 1), prev_pen(m + 1), cur_val(m + 1), cur_pen(m + 1);
  std::vector<std::int64_t> step_y(m);
  std::vector<std::int32_t> sym_y(m);
  for (std::size_t j = 0; j < m; ++j) {
    const bool wild = cs_y[j] == kWildcard;
    step_y[j] = wild ? -sy : sy;
    sym_y[j] = wild ? -1 : cs_y[j];
  }
  prev_val[0] = 0;
  prev_pen[0] = penalty;
  for (std::size_t j = 1; j <= m; ++j) {
    prev_val[j] = prev_pen[j - 1] + step_y[j - 1];
    prev_pen[j] = prev_val[j];
  }

  // Past cell (i, j) every remaining literal costs its size unless matched
  // diagonally, every remaining wildcard refunds its size, and at most
  // overlap(x[i:], y[j:]) literal pairs can match.
  std::array<std::int32_t, 256> hx{};
  std::array<std::int32_t, 256> hy_full{};
  std::int64_t lit_x = 0, wild_x = 0, lit_y_full = 0, wild_y_full = 0;
  for (Symbol c : cs_x) {
    if (c == kWildcard) {
      ++wild_x;
    } else {
      ++hx[c];
      ++lit_x;
    }
  }
  for (Symbol c : cs_y) {
    if (c == kWildcard) {
      ++wild_y_full;
    } else {
      ++hy_full[c];
      ++lit_y_full;
    }
  }
  std::int64_t overlap_full = 0;
  for (std::size_t c = 0; c < 256; ++c) overlap_full += std::min(hx[c], hy_full[c]);

  auto row_bound = [&](const std::vector<std::int64_t>& row) {
    std::array<std::int32_t, 256> hy = hy_full;
    std::int64_t lit_y = lit_y_full;
    std::int64_t wild_y = wild_y_full;
    std::int64_t overlap = overlap_full;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0;; ++j) {
      const std::int64_t rest =
          sx * (lit_x - overlap - wild_x) + sy * (lit_y - overlap - wild_y);
      lo = std::min(lo, row[j] + rest);
      if (j == m) break;
      const Symbol c = cs_y[j];
      if (c == kWildcard) {
        --wild_y;
      } else {
        if (hy[c] <= hx[c]) --overlap;
        --hy[c];
        --lit_y;
      }
    }
    return lo;
  };

  if (abandon_above) {
    const std::int64_t lo = row_bound(prev_val);
    if (lo > *abandon_above) return {lo, false};
  }

  for (std::size_t i = 1; i <= n; ++i) {
    const Symbol xs = cs_x[i - 1];
    const bool x_wild = xs == kWildcard;
    const std::int64_t step_x = x_wild ? -sx : sx;
    const std::int32_t sym_x = x_wild ? -2 : xs;
    if (x_wild) {
      --wild_x;
    } else {
      if (hx[xs] <= hy_full[xs]) --overlap_full;
      --hx[xs];
      --lit_x;
    }

    const std::int64_t* pv = prev_val.data();
    const std::int64_t* pp = prev_pen.data();
    std::int64_t* cv = cur_val.data();
    std::int64_t* cp = cur_pen.data();
    cv[0] = pp[0] + step_x;
    cp[0] = cv[0];
    std::int64_t left_pen = cp[0];
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t up = pp[j] + step_x;
      const std::int64_t left = left_pen + step_y[j - 1];
      const std::int64_t best_rs = std::min(up, left);
      const std::int64_t diag = pv[j - 1];
      const bool take_diag = sym_x == sym_y[j - 1] && diag < best_rs;
      cv[j] = take_diag ? diag : best_rs;
      left_pen = take_diag ? diag + penalty : best_rs;
      cp[j] = left_pen;
    }
    if (abandon_above && i < n) {
      const std::int64_t lo = row_bound(cur_val);
      if (lo > *abandon_above) return {lo, false};
    }
    std::swap(prev_val, cur_val);
    std::swap(prev_pen, cur_pen);
  }
  return {prev_val[m], true};
}

namespace {

// EL increment of collapsing cs_x[a, b) and cs_y[c, d) into one field.
std::int64_t BlockCost(const PatternString& cs_x, std::size_t a, std::size_t b,
                       const PatternString& cs_y, std::size_t c, std::size_t d,
                       std::int64_t sx, std::int64_t sy) {
  std::int64_t cost = sx + sy;
  for (std::size_t k = a; k < b; ++k) cost += cs_x[k] == kWildcard ? -sx : sx;
  for (std::size_t k = c; k < d; ++k) cost += cs_y[k] == kWildcard ? -sy : sy;
  return cost;
}

bool SameLiteralRun(const PatternString& cs_x, std::size_t a, std::size_t b,
                    const PatternString& cs_y, std::size_t c, std::size_t d) {
  if (b - a != d - c || a == b) return false;
  for (std::size_t k = 0; k < b - a; ++k) {
    if (!Matches(cs_x[a + k], cs_y[c + k])) return false;
  }
  return true;
}

}  // namespace

std::int64_t MinElIncrementOracle(const PatternString& cs_x, const PatternString& cs_y,
                                  std::uint64_t size_x, std::uint64_t size_y) {
  RequireNonEmpty(cs_x, cs_y);
  if (cs_x.size() > kOracleMaxTokens || cs_y.size() > kOracleMaxTokens) {
    throw Error(ErrorCode::kTooLarge, "oracle is limited to 12 tokens per side");
  }
  const std::size_t n = cs_x.size();
  const std::size_t m = cs_y.size();
  const auto sx = static_cast<std::int64_t>(size_x);
  const auto sy = static_cast<std::int64_t>(size_y);
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  std::vector<std::vector<std::int64_t>> state(n + 1, std::vector<std::int64_t>(m + 1, kInf));
  state[0][0] = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      std::int64_t best = kInf;
      for (std::size_t k = 0; k <= i; ++k) {
        for (std::size_t l = 0; l <= j; ++l) {
          if (k + l == 0) continue;
          // The block's own optimum: an identical literal run costs nothing,
          // anything else becomes one field.
          std::int64_t block = BlockCost(cs_x, i - k, i, cs_y, j - l, j, sx, sy);
          if (SameLiteralRun(cs_x, i - k, i, cs_y, j - l, j)) block = 0;
          best = std::min(best, state[i - k][j - l] + block);
        }
      }
      state[i][j] = best;
    }
  }
  return state[n][m];
}

std::int64_t EditDistance(const PatternString& a, const PatternString& b) {
  std::vector<std::int64_t> prev(b.size() + 1);
  std::vector<std::int64_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::int64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace pbc
