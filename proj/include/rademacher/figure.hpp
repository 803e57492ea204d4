#pragma once

#include "rademacher/blocks.hpp"

#include <ostream>
#include <vector>

namespace rademacher {

struct FigureRow {
  std::int64_t n;
  std::int64_t ell;
  Probability prob;   // P(|S_n| <= ell)
  bool is_xi_point;   // ell == kappa(n) for the configured xi
};

struct BlockBoundary {
  std::int64_t k;
  std::int64_t n_start;  // n_k
};

// All exact points (n, ell) with n + ell even underlying the probability
// staircase plot, with the xi-trajectory marked. Capped at n_max <= 200: the
// row count is quadratic and the plot is unreadable far beyond that anyway.
inline std::vector<FigureRow> figure_rows(std::int64_t n_max, const Xi& xi) {
  if (n_max < 0 || n_max > 200) throw std::domain_error("figure_rows: n_max must be in [0,200]");
  std::vector<FigureRow> rows;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const std::int64_t kap = kappa(n, xi);
    for (std::int64_t ell = n % 2; ell <= n; ell += 2) {
      rows.push_back(FigureRow{n, ell, interval_prob(n, ell), ell == kap});
    }
  }
  return rows;
}

/// Block starts n_k <= n_max, the vertical guide lines of the plot.
inline std::vector<BlockBoundary> figure_boundaries(std::int64_t n_max, const Xi& xi) {
  std::vector<BlockBoundary> out;
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t start = n_k(k, xi);
    if (start > n_max) break;
    out.push_back(BlockBoundary{k, start});
  }
  return out;
}

// CSV emitters. Both write LF line endings and fixed column sets so repeated
// runs are byte-identical.
inline void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows) {
  os << "n,ell,prob_exact,prob_decimal,is_xi_point\n";
  for (const FigureRow& r : rows) {
    os << r.n << ',' << r.ell << ',' << to_fraction_string(r.prob.value) << ','
       << to_decimal_string(r.prob.value) << ',' << (r.is_xi_point ? "true" : "false") << '\n';
  }
}

inline void write_boundaries_csv(std::ostream& os, const std::vector<BlockBoundary>& bs) {
  os << "k,n_k\n";
  for (const BlockBoundary& b : bs) os << b.k << ',' << b.n_start << '\n';
}

}  // namespace rademacher
