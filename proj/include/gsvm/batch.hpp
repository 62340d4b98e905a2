#pragma once

// Dual coordinate descent over a fixed in-memory constraint set, with
// duality-gap stopping and a cheap per-sweep upper-bound approximation.
//
// The dual being maximized is
//
//   F(alpha) = -0.5 * sum_{jk} alpha_j (x_j . x_k) alpha_k + sum_j l_j alpha_j
//   s.t. alpha >= 0 and, per slack group i, sum_{j in i} alpha_j <= 1,
//
// tracked through w = sum alpha_j x_j so gradients cost one sparse dot.
// When the group cap is active, no single coordinate can move and the
// solver steps along a pair direction (alpha_j up, alpha_k down) inside
// the same group, which leaves the group sum unchanged.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "gsvm/core.hpp"
#include "gsvm/extensions.hpp"

namespace gsvm::batch {

/// Outcome of inspecting one dual variable, given its gradient g and the
/// group sum: g = 0 is optimal; g < 0 wants a decrease; g > 0 wants an
/// increase, which is free while the group sum is below 1 and blocked at 1.
enum class Scenario { Optimal, Decrease, IncreaseFree, IncreaseBlocked };

inline Scenario classify(double g, double alpha_sum, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("classify: eps must be positive");
  if (std::abs(g) <= eps) return Scenario::Optimal;
  if (g < 0.0) return Scenario::Decrease;
  return alpha_sum < 1.0 - 1e-12 ? Scenario::IncreaseFree : Scenario::IncreaseBlocked;
}

/// Gradient of F in coordinate (i,j): g = l - w.x.
inline double gradient(std::span<const double> w, const Constraint& c) {
  return c.l - dot(c.x, w);
}

/// The stopping certificate: dual lower bound, true primal upper bound,
/// and the per-sweep approximation UB' = 0.5*||w||^2 + accumulated loss.
struct Bounds {
  double lb = 0.0;
  double ub = std::numeric_limits<double>::infinity();
  double ub_approx = std::numeric_limits<double>::infinity();
  double tol = 1e-3;
  bool ub_stale = true;

  double gap() const { return ub - lb; }
};

/// Bookkeeping for one sweep: applied updates, the largest gradient seen,
/// and sum_i max_j max(0, g_ij) collected for the approximate upper bound.
struct SweepStats {
  long updates = 0;
  double max_violation = -std::numeric_limits<double>::infinity();
  double loss_accum = 0.0;
};

/// One applied dual update, reported to an optional observer.
struct StepRecord {
  int constraint = -1;
  int partner = -1;  // -1 for single-coordinate updates
  double step = 0.0;
  double f_before = 0.0;
  double f_after = 0.0;
};

struct Options {
  double tol = 1e-3;
  int max_sweeps = 1000;
  bool ub_gate = true;     // check the true UB only when UB' already passes
  bool allow_pair = true;  // diagnostics can disable pair directions
  NonNegSpec nonneg;
  std::function<void(const StepRecord&)> observer;
};

struct Result {
  DualState state;
  Bounds bounds;
  int sweeps = 0;
  int data_passes = 0;  // coordinate sweeps plus full primal evaluations
  bool converged = false;
  bool fixed_point = false;  // no single or pair direction can move
};

class Solver {
 public:
  Solver(std::size_t dim, std::span<const Constraint> cons, Options opts = {})
      : dim_(dim), cons_(cons), opts_(std::move(opts)) {
    st_.dim = dim;
    st_.w.assign(dim, 0.0);
    st_.alpha.assign(cons_.size(), 0.0);
    if (opts_.nonneg.active()) {
      nn_mask_ = opts_.nonneg.mask(dim);
      st_.w_raw.assign(dim, 0.0);
    }
    slot_of_.resize(cons_.size());
    for (std::size_t k = 0; k < cons_.size(); ++k) {
      const Constraint& c = cons_[k];
      if (c.x.max_index() >= static_cast<std::int32_t>(dim))
        throw std::out_of_range("Solver: constraint feature index out of range");
      auto [it, fresh] = group_slot_.try_emplace(c.group, static_cast<int>(st_.groups.size()));
      if (fresh) {
        st_.groups.push_back({c.group, 0.0});
        members_.emplace_back();
      }
      slot_of_[k] = it->second;
      members_[it->second].push_back(static_cast<int>(k));
    }
    gmax_.assign(st_.groups.size(), 0.0);
  }

  /// Installs a feasible dual start: alpha >= 0, group sums <= 1. Rebuilds
  /// w and the margin sum from scratch.
  void warm_start(std::span<const double> alpha) {
    if (alpha.size() != cons_.size())
      throw std::invalid_argument("warm_start: alpha size mismatch");
    for (auto& g : st_.groups) g.alpha_sum = 0.0;
    double l_alpha = 0.0;
    for (std::size_t k = 0; k < cons_.size(); ++k) {
      const double a = alpha[k];
      if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("warm_start: infeasible alpha");
      st_.alpha[k] = a;
      st_.groups[slot_of_[k]].alpha_sum += a;
      l_alpha += a * cons_[k].l;
    }
    for (const auto& g : st_.groups)
      if (g.alpha_sum > 1.0 + 1e-9) throw std::invalid_argument("warm_start: group sum exceeds 1");
    st_.l_alpha = l_alpha;
    rebuild_w();
  }

  const DualState& state() const { return st_; }
  std::span<const Constraint> constraints() const { return cons_; }
  double lower_bound() const { return eval_dual(st_); }

  double gradient(int k) const { return batch::gradient(st_.w, cons_[k]); }

  double update_eps(const Constraint& c) const { return 1e-12 * (1.0 + std::abs(c.l)); }

  /// Closed-form step on one dual variable: a* = clamp(g/(x.x), -alpha_j,
  /// 1 - alpha_i). Returns the applied step (0 for a no-op). Zero-norm
  /// features carry no curvature and are left untouched.
  double single_update(int k) { return single_update_at(k, gradient(k)); }

  /// Pair step within one group: direction (+1 on j, -1 on k). With
  /// d = x_j - x_k, kappa = ||d||^2 and g' = g_j - g_k, the step is
  /// a* = clamp(g'/kappa, max(-alpha_j, alpha_k - 1), min(alpha_k, 1 - alpha_j)).
  /// For kappa = 0 the 1-D objective is linear: move to the upper bound if
  /// g' > 0, otherwise do nothing. Leaves the group sum unchanged.
  double pair_update(int j, int k) { return pair_update_at(j, k, gradient(j)); }

  /// Visits every constraint in a fresh uniform random permutation,
  /// applying single or pair updates as the scenario dictates, and
  /// accumulates the loss estimate for UB'.
  SweepStats sweep(std::mt19937_64& rng) {
    SweepStats stats;
    const std::size_t n = cons_.size();
    if (perm_.size() != n) {
      perm_.resize(n);
      for (std::size_t i = 0; i < n; ++i) perm_[i] = static_cast<int>(i);
    }
    std::shuffle(perm_.begin(), perm_.end(), rng);
    std::fill(gmax_.begin(), gmax_.end(), -std::numeric_limits<double>::infinity());

    for (int k : perm_) {
      const Constraint& c = cons_[k];
      const int slot = slot_of_[k];
      const double g = batch::gradient(st_.w, c);
      gmax_[slot] = std::max(gmax_[slot], g);
      stats.max_violation = std::max(stats.max_violation, g);

      double a = 0.0;
      switch (classify(g, st_.groups[slot].alpha_sum, update_eps(c))) {
        case Scenario::Optimal:
          break;
        case Scenario::Decrease:
        case Scenario::IncreaseFree:
          a = single_update_at(k, g);
          break;
        case Scenario::IncreaseBlocked:
          if (opts_.allow_pair) {
            const int partner = pick_partner(k, slot, rng);
            if (partner >= 0) a = pair_update_at(k, partner, g);
          }
          break;
      }
      if (a != 0.0) ++stats.updates;
    }

    for (double gm : gmax_)
      if (gm > 0.0) stats.loss_accum += gm;
    return stats;
  }

  /// True when some single or pair direction can still produce a nonzero
  /// step. A sweep that applied no update is a certified fixed point of
  /// the update rules exactly when this returns false.
  bool any_feasible_update() const {
    for (std::size_t k = 0; k < cons_.size(); ++k) {
      const Constraint& c = cons_[k];
      const int slot = slot_of_[k];
      const double g = batch::gradient(st_.w, c);
      switch (classify(g, st_.groups[slot].alpha_sum, update_eps(c))) {
        case Scenario::Optimal:
          break;
        case Scenario::Decrease:
        case Scenario::IncreaseFree: {
          if (c.sqnorm > 0.0 && single_step(static_cast<int>(k), g) != 0.0) return true;
          break;
        }
        case Scenario::IncreaseBlocked: {
          if (!opts_.allow_pair) break;
          for (int m : members_[slot])
            if (m != static_cast<int>(k) && st_.alpha[m] > 0.0 &&
                pair_step(static_cast<int>(k), m, g) != 0.0)
              return true;
          break;
        }
      }
    }
    return false;
  }

  /// Repeats sweeps until the duality gap passes tol * max(1, |ub|).
  /// UB' gates the expensive true-UB evaluation: the primal is only
  /// recomputed once the approximate gap already passes.
  Result optimize(std::mt19937_64& rng) {
    Result r;
    r.bounds.tol = opts_.tol;
    if (cons_.empty()) {
      r.bounds.lb = r.bounds.ub = r.bounds.ub_approx = 0.0;
      r.bounds.ub_stale = false;
      r.converged = true;
      r.state = st_;
      return r;
    }

    for (int s = 1; s <= opts_.max_sweeps; ++s) {
      const SweepStats stats = sweep(rng);
      ++r.sweeps;
      ++r.data_passes;
      r.bounds.lb = eval_dual(st_);
      r.bounds.ub_approx = 0.5 * norm2(st_.w) + stats.loss_accum;
      r.bounds.ub_stale = true;

      if (stats.updates == 0 && !any_feasible_update()) {
        refresh_true_ub(r);
        r.converged = gap_within(r.bounds.lb, r.bounds.ub, opts_.tol);
        r.fixed_point = true;
        break;
      }
      if (!opts_.ub_gate || gap_within(r.bounds.lb, r.bounds.ub_approx, opts_.tol)) {
        refresh_true_ub(r);
        if (gap_within(r.bounds.lb, r.bounds.ub, opts_.tol)) {
          r.converged = true;
          break;
        }
      }
    }
    if (r.bounds.ub_stale) refresh_true_ub(r);
    r.state = st_;
    return r;
  }

 private:
  void refresh_true_ub(Result& r) {
    r.bounds.ub = eval_primal(st_.w, cons_).objective;
    r.bounds.ub_stale = false;
    ++r.data_passes;
  }

  void rebuild_w() {
    if (nn_mask_.empty()) {
      std::fill(st_.w.begin(), st_.w.end(), 0.0);
      for (std::size_t k = 0; k < cons_.size(); ++k) axpy(st_.w, st_.alpha[k], cons_[k].x);
    } else {
      std::fill(st_.w_raw.begin(), st_.w_raw.end(), 0.0);
      for (std::size_t k = 0; k < cons_.size(); ++k) axpy(st_.w_raw, st_.alpha[k], cons_[k].x);
      for (std::size_t i = 0; i < dim_; ++i)
        st_.w[i] = (nn_mask_[i] && st_.w_raw[i] < 0.0) ? 0.0 : st_.w_raw[i];
    }
  }

  void apply_axpy(double a, const SparseVec& x) {
    if (nn_mask_.empty()) {
      axpy(st_.w, a, x);
      return;
    }
    for (const SparseEntry& e : x.entries()) {
      st_.w_raw[e.index] += a * e.value;
      st_.w[e.index] =
          (nn_mask_[e.index] && st_.w_raw[e.index] < 0.0) ? 0.0 : st_.w_raw[e.index];
    }
  }

  double single_step(int k, double g) const {
    const Constraint& c = cons_[k];
    if (c.sqnorm <= 0.0) return 0.0;
    const double lower = -st_.alpha[k];
    const double upper = std::max(0.0, 1.0 - st_.groups[slot_of_[k]].alpha_sum);
    return std::min(std::max(g / c.sqnorm, lower), upper);
  }

  double single_update_at(int k, double g) {
    const double a = single_step(k, g);
    if (a == 0.0) return 0.0;
    const bool observed = static_cast<bool>(opts_.observer);
    const double f0 = observed ? eval_dual(st_) : 0.0;

    st_.alpha[k] += a;
    st_.groups[slot_of_[k]].alpha_sum += a;
    st_.l_alpha += a * cons_[k].l;
    apply_axpy(a, cons_[k].x);

    if (observed) opts_.observer(StepRecord{k, -1, a, f0, eval_dual(st_)});
    return a;
  }

  double pair_step(int j, int k, double g_j) const {
    const Constraint& cj = cons_[j];
    const Constraint& ck = cons_[k];
    const double g_k = batch::gradient(st_.w, ck);
    const double gp = g_j - g_k;
    const double kappa = std::max(0.0, cj.sqnorm + ck.sqnorm - 2.0 * dot_sparse(cj.x, ck.x));
    const double a0 = std::max(-st_.alpha[j], st_.alpha[k] - 1.0);
    const double a1 = std::min(st_.alpha[k], 1.0 - st_.alpha[j]);
    if (kappa > 0.0) return std::min(std::max(gp / kappa, a0), a1);
    return gp > 0.0 ? a1 : 0.0;
  }

  double pair_update_at(int j, int k, double g_j) {
    if (slot_of_[j] != slot_of_[k] || j == k)
      throw std::invalid_argument("pair_update: variables must be distinct and share a group");
    const double a = pair_step(j, k, g_j);
    if (a == 0.0) return 0.0;
    const bool observed = static_cast<bool>(opts_.observer);
    const double f0 = observed ? eval_dual(st_) : 0.0;

    st_.alpha[j] += a;
    st_.alpha[k] -= a;
    st_.l_alpha += a * (cons_[j].l - cons_[k].l);
    apply_axpy(a, cons_[j].x);
    apply_axpy(-a, cons_[k].x);

    if (observed) opts_.observer(StepRecord{j, k, a, f0, eval_dual(st_)});
    return a;
  }

  int pick_partner(int j, int slot, std::mt19937_64& rng) {
    partner_buf_.clear();
    for (int m : members_[slot])
      if (m != j && st_.alpha[m] > 0.0) partner_buf_.push_back(m);
    if (partner_buf_.empty()) return -1;
    if (partner_buf_.size() == 1) return partner_buf_[0];
    std::uniform_int_distribution<std::size_t> pick(0, partner_buf_.size() - 1);
    return partner_buf_[pick(rng)];
  }

  std::size_t dim_;
  std::span<const Constraint> cons_;
  Options opts_;
  DualState st_;
  std::vector<int> slot_of_;
  std::unordered_map<int, int> group_slot_;
  std::vector<std::vector<int>> members_;
  std::vector<std::uint8_t> nn_mask_;
  std::vector<int> perm_;
  std::vector<double> gmax_;
  std::vector<int> partner_buf_;
};

/// Batch solve, optionally hot-started from a feasible alpha.
inline Result optimize(std::size_t dim, std::span<const Constraint> cons,
                       std::span<const double> warm_alpha, Options opts, std::mt19937_64& rng) {
  Solver solver(dim, cons, std::move(opts));
  if (!warm_alpha.empty()) solver.warm_start(warm_alpha);
  return solver.optimize(rng);
}

inline Result optimize(std::size_t dim, std::span<const Constraint> cons,
                       std::span<const double> warm_alpha, Options opts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return optimize(dim, cons, warm_alpha, std::move(opts), rng);
}

}  // namespace gsvm::batch
