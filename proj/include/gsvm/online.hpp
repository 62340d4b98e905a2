#pragma once

// One-pass / cyclic out-of-core learning: stream examples, query each
// one's worst-offending constraint, cache violators, and re-optimize the
// cached QP whenever the tracked duality gap exceeds tolerance. The cached
// dual value is a lower bound on the full-dataset optimum at all times;
// the running upper bound is only exact for the cached QP.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "gsvm/batch.hpp"
#include "gsvm/core.hpp"

namespace gsvm::online {

/// A constraint together with its gradient l - w.x under the weights it
/// was selected against.
struct Offender {
  Constraint constraint;
  double gradient = 0.0;
};

/// A stream of examples (slack groups). Each example answers a
/// worst-offender query against the current weights; finite candidate
/// sets can additionally be enumerated. Sources are re-iterable so the
/// same file or dataset can be cycled over multiple times.
class ExampleSource {
 public:
  virtual ~ExampleSource() = default;

  virtual void reset() = 0;
  virtual bool advance() = 0;
  virtual int group() const = 0;

  /// The constraint maximizing g = l - w.x over the current example's
  /// candidate set, with that gradient. Empty candidate sets yield
  /// nullopt. Ties break toward the smallest local index.
  virtual std::optional<Offender> worst_offender(std::span<const double> w) const = 0;

  /// Appends every constraint of the current example when the candidate
  /// set is finite; returns false when enumeration is unsupported.
  virtual bool enumerate(std::vector<Constraint>& out) const {
    (void)out;
    return false;
  }

  virtual std::size_t dim() const = 0;
};

/// Materializes a finite source into a flat constraint list (batch input).
inline std::vector<Constraint> collect_constraints(ExampleSource& src) {
  std::vector<Constraint> out;
  src.reset();
  while (src.advance()) {
    if (!src.enumerate(out))
      throw std::runtime_error("collect_constraints: source cannot enumerate candidates");
  }
  return out;
}

/// One full scan of the stream: 0.5*||w||^2 + sum_i max(0, worst gradient).
/// This is the exact primal objective of w on the streamed dataset.
inline double streaming_upper_bound(ExampleSource& src, std::span<const double> w) {
  src.reset();
  double loss = 0.0;
  while (src.advance()) {
    if (auto off = src.worst_offender(w)) loss += std::max(0.0, off->gradient);
  }
  return 0.5 * norm2(w) + loss;
}

/// In-memory source over a pre-built grouped constraint list. Groups are
/// the distinct group ids in first-appearance order.
class ConstraintListSource final : public ExampleSource {
 public:
  ConstraintListSource(std::size_t dim, std::vector<Constraint> cons)
      : dim_(dim), cons_(std::move(cons)) {
    std::unordered_map<int, std::size_t> pos;
    for (std::size_t k = 0; k < cons_.size(); ++k) {
      auto [it, fresh] = pos.try_emplace(cons_[k].group, groups_.size());
      if (fresh) groups_.emplace_back();
      groups_[it->second].push_back(k);
    }
  }

  void reset() override { cursor_ = -1; }
  bool advance() override { return static_cast<std::size_t>(++cursor_) < groups_.size(); }
  int group() const override { return cons_[groups_[cursor_].front()].group; }

  std::optional<Offender> worst_offender(std::span<const double> w) const override {
    const Constraint* best = nullptr;
    double best_g = 0.0;
    for (std::size_t k : groups_[cursor_]) {
      const double g = cons_[k].l - dot(cons_[k].x, w);
      if (!best || g > best_g) {
        best = &cons_[k];
        best_g = g;
      }
    }
    if (!best) return std::nullopt;
    return Offender{*best, best_g};
  }

  bool enumerate(std::vector<Constraint>& out) const override {
    for (std::size_t k : groups_[cursor_]) out.push_back(cons_[k]);
    return true;
  }

  std::size_t dim() const override { return dim_; }

 private:
  std::size_t dim_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<std::size_t>> groups_;
  long cursor_ = -1;
};

enum class PrunePolicy { None, Aggressive, Lazy };

/// The cache A of admitted constraints with their dual values. Entries are
/// unique by (group, local); removal compacts in place preserving order.
class WorkingSet {
 public:
  std::size_t size() const { return cons_.size(); }
  bool contains(int group, int local) const { return index_.count(key(group, local)) > 0; }

  bool insert(Constraint c) {
    const auto k = key(c.group, c.local);
    if (index_.count(k)) return false;
    index_.emplace(k, cons_.size());
    cons_.push_back(std::move(c));
    alpha_.push_back(0.0);
    zero_streak_.push_back(0);
    return true;
  }

  std::span<const Constraint> constraints() const { return cons_; }
  std::span<const double> alpha() const { return alpha_; }
  std::span<double> alpha() { return alpha_; }

  void set_alpha(std::span<const double> a) {
    if (a.size() != alpha_.size()) throw std::invalid_argument("WorkingSet: alpha size mismatch");
    std::copy(a.begin(), a.end(), alpha_.begin());
  }

  std::size_t support_vectors() const {
    std::size_t n = 0;
    for (double a : alpha_)
      if (a > 0.0) ++n;
    return n;
  }

  /// Removes entries for which `drop` returns true; rebuilds the key index.
  std::size_t compact(const std::function<bool(const Constraint&, double, int)>& drop) {
    std::size_t kept = 0;
    for (std::size_t k = 0; k < cons_.size(); ++k) {
      if (drop(cons_[k], alpha_[k], zero_streak_[k])) continue;
      if (kept != k) {
        cons_[kept] = std::move(cons_[k]);
        alpha_[kept] = alpha_[k];
        zero_streak_[kept] = zero_streak_[k];
      }
      ++kept;
    }
    const std::size_t removed = cons_.size() - kept;
    cons_.resize(kept);
    alpha_.resize(kept);
    zero_streak_.resize(kept);
    index_.clear();
    for (std::size_t k = 0; k < cons_.size(); ++k)
      index_.emplace(key(cons_[k].group, cons_[k].local), k);
    return removed;
  }

  void bump_zero_streaks() {
    for (std::size_t k = 0; k < cons_.size(); ++k)
      zero_streak_[k] = alpha_[k] == 0.0 ? zero_streak_[k] + 1 : 0;
  }

 private:
  static std::uint64_t key(int group, int local) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(group)) << 32) |
           static_cast<std::uint32_t>(local);
  }

  std::vector<Constraint> cons_;
  std::vector<double> alpha_;
  std::vector<int> zero_streak_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// lb is a valid lower bound on the full-dataset optimum at all times.
/// ub_running is the last optimize's cached-QP upper bound plus the
/// gradients of violators admitted since; it is not a full-dataset bound.
struct Bounds {
  double lb = 0.0;
  double ub_running = 0.0;
  double tol = 1e-3;
  bool stale = false;  // last batch call hit its sweep cap
};

struct Config {
  double tol = 1e-3;
  std::uint64_t seed = 0;
  PrunePolicy prune = PrunePolicy::Aggressive;
  std::size_t cache_cap = 0;  // 0 = unlimited
  int lazy_patience = 50;
  int batch_max_sweeps = 1000;
  bool batch_ub_gate = true;
  NonNegSpec nonneg;
  std::ostream* progress = nullptr;
  long progress_every = 0;  // examples between progress records; 0 = per pass
};

struct Stats {
  long examples_seen = 0;
  long admissions = 0;
  long optimize_calls = 0;
  long pruned_total = 0;
  long cap_events = 0;
  long cap_refusals = 0;
  long prune_dual_mismatches = 0;
  long batch_data_passes = 0;
  std::size_t peak_cache = 0;
};

struct PassStats {
  long admissions = 0;
  long optimize_calls = 0;
  double pass_loss = 0.0;  // sum_i max(0, worst gradient) over the pass
  bool loss_valid = false;  // true when no optimize ran, so w was constant
};

struct Result {
  std::vector<double> w;
  Bounds bounds;
  double full_ub = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  int passes = 0;
  Stats stats;
  std::size_t cache_size = 0;
  std::size_t support_vectors = 0;
};

class Solver {
 public:
  Solver(std::size_t dim, Config cfg) : dim_(dim), cfg_(std::move(cfg)), rng_(cfg_.seed) {
    w_.assign(dim, 0.0);
    bounds_.tol = cfg_.tol;
    if (cfg_.nonneg.active()) cfg_.nonneg.mask(dim);  // validate indices early
  }

  /// Queries the current example's worst offender and admits it (alpha=0,
  /// ub_running += g) when it violates the margin and is not yet cached.
  bool process_example(ExampleSource& src) {
    ++stats_.examples_seen;
    return consider_admission(src.worst_offender(w_), src);
  }

  /// Re-optimizes the cache when ub_running - lb exceeds the tolerance
  /// gap, then prunes. Returns whether an optimize ran.
  bool maybe_optimize() {
    if (!gap_within(bounds_.lb, bounds_.ub_running, cfg_.tol)) {
      optimize_cache();
      prune();
      return true;
    }
    return false;
  }

  /// Drops cache entries per the configured policy. Aggressive removes
  /// every zero-alpha entry immediately; Lazy waits until an entry has
  /// been zero across `lazy_patience` consecutive optimize calls. The
  /// dual value is unaffected: removed terms have alpha = 0.
  std::size_t prune() { return prune_with(cfg_.prune); }

  /// One pass over the stream: process every example once, optimizing
  /// whenever the gap trips. pass_loss equals the full-dataset loss of w
  /// whenever loss_valid (w never changed during the pass).
  PassStats run_pass(ExampleSource& src) {
    src.reset();
    refuse_admissions_ = false;
    ++pass_;
    PassStats ps;
    const long opt_before = stats_.optimize_calls;
    while (src.advance()) {
      ++stats_.examples_seen;
      auto off = src.worst_offender(w_);
      if (off) ps.pass_loss += std::max(0.0, off->gradient);
      if (consider_admission(std::move(off), src)) ++ps.admissions;
      maybe_optimize();
      if (cfg_.progress && cfg_.progress_every > 0 &&
          stats_.examples_seen % cfg_.progress_every == 0)
        emit_progress();
    }
    ps.optimize_calls = stats_.optimize_calls - opt_before;
    ps.loss_valid = ps.optimize_calls == 0;
    if (cfg_.progress) emit_progress();
    return ps;
  }

  /// Cycles run_pass until a pass admits nothing and never re-optimizes,
  /// at which point pass_loss is an exact full-dataset upper bound; stop
  /// once it certifies the gap. A certifying pass that fails the gap test
  /// forces one optimize so the next cycle can make progress.
  Result run_cyclic(ExampleSource& src, int max_passes) {
    if (max_passes < 1) throw std::invalid_argument("run_cyclic: max_passes must be >= 1");
    Result r;
    for (int p = 1; p <= max_passes; ++p) {
      const PassStats ps = run_pass(src);
      r.passes = p;
      if (ps.admissions == 0 && ps.loss_valid) {
        const double full_ub = 0.5 * norm2(w_) + ps.pass_loss;
        if (gap_within(bounds_.lb, full_ub, cfg_.tol)) {
          r.full_ub = full_ub;
          r.converged = true;
          break;
        }
        optimize_cache();
        prune();
      }
    }
    fill(r);
    return r;
  }

  Result snapshot() const {
    Result r;
    r.passes = pass_;
    fill(r);
    return r;
  }

  std::span<const double> weights() const { return w_; }
  const Bounds& bounds() const { return bounds_; }
  const Stats& stats() const { return stats_; }
  const WorkingSet& working_set() const { return ws_; }
  double dual_value() const { return -0.5 * norm2(w_) + l_alpha_; }

 private:
  bool consider_admission(std::optional<Offender> off, ExampleSource& src) {
    if (!off || off->gradient <= 0.0) return false;
    if (ws_.contains(off->constraint.group, off->constraint.local)) return false;
    if (refuse_admissions_) {
      ++stats_.cap_refusals;
      return false;
    }
    if (cfg_.cache_cap > 0 && ws_.size() >= cfg_.cache_cap) {
      ++stats_.cap_events;
      optimize_cache();
      prune_with(PrunePolicy::Aggressive);
      if (ws_.size() >= cfg_.cache_cap) {
        refuse_admissions_ = true;
        ++stats_.cap_refusals;
        return false;
      }
      off = src.worst_offender(w_);  // the model changed; re-select
      if (!off || off->gradient <= 0.0) return false;
      if (ws_.contains(off->constraint.group, off->constraint.local)) return false;
    }
    const double g = off->gradient;
    ws_.insert(std::move(off->constraint));
    bounds_.ub_running += g;
    ++stats_.admissions;
    stats_.peak_cache = std::max(stats_.peak_cache, ws_.size());
    return true;
  }

  void optimize_cache() {
    batch::Options bo;
    bo.tol = cfg_.tol;
    bo.max_sweeps = cfg_.batch_max_sweeps;
    bo.ub_gate = cfg_.batch_ub_gate;
    bo.nonneg = cfg_.nonneg;
    auto res = batch::optimize(dim_, ws_.constraints(), ws_.alpha(), std::move(bo), rng_);
    ws_.set_alpha(res.state.alpha);
    w_ = std::move(res.state.w);
    l_alpha_ = res.state.l_alpha;
    bounds_.lb = res.bounds.lb;
    bounds_.ub_running = res.bounds.ub;
    bounds_.stale = !res.converged;
    ++stats_.optimize_calls;
    stats_.batch_data_passes += res.data_passes;
  }

  std::size_t prune_with(PrunePolicy policy) {
    if (policy == PrunePolicy::None) return 0;
    const double before = dual_value();
    std::size_t removed = 0;
    if (policy == PrunePolicy::Aggressive) {
      removed = ws_.compact([](const Constraint&, double a, int) { return a == 0.0; });
    } else {
      ws_.bump_zero_streaks();
      const int patience = cfg_.lazy_patience;
      removed = ws_.compact(
          [patience](const Constraint&, double, int streak) { return streak >= patience; });
    }
    if (dual_value() != before) ++stats_.prune_dual_mismatches;
    stats_.pruned_total += static_cast<long>(removed);
    return removed;
  }

  void fill(Result& r) const {
    r.w = w_;
    r.bounds = bounds_;
    r.stats = stats_;
    r.cache_size = ws_.size();
    r.support_vectors = ws_.support_vectors();
  }

  void emit_progress() {
    *cfg_.progress << "pass=" << pass_ << " seen=" << stats_.examples_seen
                   << " lb=" << bounds_.lb << " ub=" << bounds_.ub_running
                   << " cache=" << ws_.size() << '\n';
  }

  std::size_t dim_;
  Config cfg_;
  WorkingSet ws_;
  std::vector<double> w_;
  double l_alpha_ = 0.0;
  Bounds bounds_;
  Stats stats_;
  std::mt19937_64 rng_;
  bool refuse_admissions_ = false;
  int pass_ = 0;
};

}  // namespace gsvm::online
