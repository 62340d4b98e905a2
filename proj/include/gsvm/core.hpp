#pragma once

// Sparse linear algebra, the grouped-constraint data model, and exact
// primal/dual objective evaluation for the shared-slack SVM problem
//
//   min_w 0.5*||w||^2 + sum_i max_{j in N_i} max(0, l_ij - w.x_ij)
//
// where every constraint (i,j) carries its own margin l_ij and all
// constraints of group i share one slack variable.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gsvm {

/// One nonzero coordinate of a sparse feature vector.
struct SparseEntry {
  std::int32_t index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse feature vector. Entries are sorted by strictly increasing index,
/// finite, and never exactly zero.
class SparseVec {
 public:
  SparseVec() = default;
  explicit SparseVec(std::vector<SparseEntry> entries) : entries_(std::move(entries)) { validate(); }

  /// Builds a vector from unordered (index, value) pairs: sorts by index,
  /// sums duplicates, drops entries that cancel to exactly zero.
  static SparseVec accumulate(std::vector<SparseEntry> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    std::vector<SparseEntry> out;
    out.reserve(raw.size());
    for (const SparseEntry& e : raw) {
      if (!out.empty() && out.back().index == e.index)
        out.back().value += e.value;
      else
        out.push_back(e);
    }
    std::erase_if(out, [](const SparseEntry& e) { return e.value == 0.0; });
    return SparseVec(std::move(out));
  }

  const std::vector<SparseEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  /// Largest stored index, or -1 for the empty vector.
  std::int32_t max_index() const { return entries_.empty() ? -1 : entries_.back().index; }

  SparseVec scaled(double s) const {
    if (!std::isfinite(s)) throw std::invalid_argument("SparseVec::scaled: non-finite factor");
    if (s == 0.0) return {};
    std::vector<SparseEntry> out;
    out.reserve(entries_.size());
    for (const SparseEntry& e : entries_) {
      const double v = e.value * s;
      if (v != 0.0) out.push_back({e.index, v});
    }
    return SparseVec(std::move(out));
  }

  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  void validate() const {
    std::int32_t prev = -1;
    for (const SparseEntry& e : entries_) {
      if (e.index < 0) throw std::invalid_argument("SparseVec: negative index");
      if (e.index <= prev) throw std::invalid_argument("SparseVec: indices not strictly increasing");
      if (!std::isfinite(e.value)) throw std::invalid_argument("SparseVec: non-finite value");
      if (e.value == 0.0) throw std::invalid_argument("SparseVec: stored zero value");
      prev = e.index;
    }
  }

  std::vector<SparseEntry> entries_;
};

/// x . w for a dense w. Every index of x must be < w.size().
inline double dot(const SparseVec& x, std::span<const double> w) {
  if (x.max_index() >= static_cast<std::int32_t>(w.size()))
    throw std::out_of_range("dot: sparse index " + std::to_string(x.max_index()) +
                            " out of range for dimension " + std::to_string(w.size()));
  double acc = 0.0;
  for (const SparseEntry& e : x.entries()) acc += e.value * w[e.index];
  return acc;
}

/// w += a * x. Rejects non-finite step sizes.
inline void axpy(std::span<double> w, double a, const SparseVec& x) {
  if (!std::isfinite(a)) throw std::invalid_argument("axpy: non-finite coefficient");
  if (x.max_index() >= static_cast<std::int32_t>(w.size()))
    throw std::out_of_range("axpy: sparse index " + std::to_string(x.max_index()) +
                            " out of range for dimension " + std::to_string(w.size()));
  if (a == 0.0) return;
  for (const SparseEntry& e : x.entries()) w[e.index] += a * e.value;
}

inline double squared_norm(const SparseVec& x) {
  double acc = 0.0;
  for (const SparseEntry& e : x.entries()) acc += e.value * e.value;
  return acc;
}

/// a . b for two sparse vectors (merge walk).
inline double dot_sparse(const SparseVec& a, const SparseVec& b) {
  double acc = 0.0;
  auto ia = a.entries().begin(), ea = a.entries().end();
  auto ib = b.entries().begin(), eb = b.entries().end();
  while (ia != ea && ib != eb) {
    if (ia->index < ib->index) ++ia;
    else if (ib->index < ia->index) ++ib;
    else acc += (ia++)->value * (ib++)->value;
  }
  return acc;
}

/// a - b, dropping coordinates that cancel exactly.
inline SparseVec sparse_diff(const SparseVec& a, const SparseVec& b) {
  std::vector<SparseEntry> out;
  out.reserve(a.nnz() + b.nnz());
  auto ia = a.entries().begin(), ea = a.entries().end();
  auto ib = b.entries().begin(), eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->index < ib->index)) {
      out.push_back(*ia++);
    } else if (ia == ea || ib->index < ia->index) {
      out.push_back({ib->index, -ib->value});
      ++ib;
    } else {
      const double v = ia->value - ib->value;
      if (v != 0.0) out.push_back({ia->index, v});
      ++ia;
      ++ib;
    }
  }
  return SparseVec(std::move(out));
}

inline double norm2(std::span<const double> w) {
  double acc = 0.0;
  for (double v : w) acc += v * v;
  return acc;
}

/// One linear constraint w.x >= l - xi_i. `group` identifies the slack
/// group, `local` distinguishes constraints within it, and `sqnorm`
/// caches x.x (the curvature of a coordinate step on this constraint).
struct Constraint {
  int group = 0;
  int local = 0;
  SparseVec x;
  double l = 0.0;
  double sqnorm = 0.0;
};

inline Constraint make_constraint(int group, int local, SparseVec x, double l) {
  if (!std::isfinite(l)) throw std::invalid_argument("Constraint: non-finite margin");
  const double q = squared_norm(x);
  return Constraint{group, local, std::move(x), l, q};
}

/// Slack group summary: the group id and alpha_i = sum_j alpha_ij.
struct Group {
  int id = 0;
  double alpha_sum = 0.0;
};

/// Full solver state over an externally owned constraint list. `alpha` is
/// aligned with that list. `w` holds the weights used for every dot
/// product; when non-negativity constraints are active it is the clamped
/// image of `w_raw` = sum alpha_k x_k, otherwise `w_raw` stays empty and
/// `w` itself is sum alpha_k x_k. `l_alpha` tracks sum l_k alpha_k.
struct DualState {
  std::size_t dim = 0;
  std::vector<double> w;
  std::vector<double> w_raw;
  std::vector<double> alpha;
  double l_alpha = 0.0;
  std::vector<Group> groups;  // first-seen order
};

/// Dual objective -0.5*||w||^2 + sum l_k alpha_k of the current state.
inline double eval_dual(const DualState& s) { return -0.5 * norm2(s.w) + s.l_alpha; }

/// sum alpha_k x_k rebuilt from scratch.
inline std::vector<double> reconstruct_w(std::size_t dim, std::span<const Constraint> cons,
                                         std::span<const double> alpha) {
  if (cons.size() != alpha.size())
    throw std::invalid_argument("reconstruct_w: alpha size mismatch");
  std::vector<double> w(dim, 0.0);
  for (std::size_t k = 0; k < cons.size(); ++k) axpy(w, alpha[k], cons[k].x);
  return w;
}

/// Primal objective plus the per-group slacks xi_i = max_j max(0, l - w.x).
struct PrimalEvaluation {
  double objective = 0.0;
  std::vector<std::pair<int, double>> per_group_slack;  // first-seen order

  double slack_of(int group_id) const {
    for (const auto& [g, xi] : per_group_slack)
      if (g == group_id) return xi;
    return 0.0;
  }
};

inline PrimalEvaluation eval_primal(std::span<const double> w, std::span<const Constraint> cons) {
  PrimalEvaluation pe;
  std::unordered_map<int, std::size_t> pos;
  pos.reserve(cons.size());
  for (const Constraint& c : cons) {
    const double viol = c.l - dot(c.x, w);
    auto [it, fresh] = pos.try_emplace(c.group, pe.per_group_slack.size());
    if (fresh) pe.per_group_slack.emplace_back(c.group, 0.0);
    double& xi = pe.per_group_slack[it->second].second;
    xi = std::max(xi, viol);
  }
  double loss = 0.0;
  for (const auto& [g, xi] : pe.per_group_slack) loss += xi;
  pe.objective = 0.5 * norm2(w) + loss;
  return pe;
}

/// Relative duality-gap test: ub - lb <= tol * max(1, |ub|).
inline bool gap_within(double lb, double ub, double tol) {
  return ub - lb <= tol * std::max(1.0, std::abs(ub));
}

}  // namespace gsvm
