#pragma once

// Builders that map binary, multiclass, structural, latent, latent
// structural, and regression problems onto the shared-slack constraint
// form, plus exact worst-offender selection for the finite families.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsvm/core.hpp"
#include "gsvm/online.hpp"

namespace gsvm::reductions {

/// One training example. `label` is family-dependent: +-1 (binary), class
/// in 1..K (multiclass), a real target (regression), or a candidate-space
/// id (structural families). Positives of latent families carry a latent
/// assignment; `cost` and `margin` enable slack and margin rescaling.
struct LabeledExample {
  SparseVec features;
  double label = 0.0;
  std::optional<int> latent;
  std::optional<double> cost;
  std::optional<double> margin;

  int label_int() const { return static_cast<int>(label); }
};

using LossFn = std::function<double(int, int)>;

inline double zero_one_loss(int y, int j) { return y == j ? 0.0 : 1.0; }

// ---------------------------------------------------------------------------
// Binary classification: one constraint per example. The bias is modeled by
// appending the constant v at index raw_dim, so weights have raw_dim + 1
// coordinates. Cost-sensitive examples scale features and margin by C_i;
// a per-example margin replaces the default margin of 1.

inline Constraint reduce_binary(const LabeledExample& ex, int group, double C, double v,
                                std::size_t raw_dim) {
  const double y = ex.label;
  if (y != 1.0 && y != -1.0) throw std::invalid_argument("reduce_binary: label must be +-1");
  if (!(C > 0.0)) throw std::invalid_argument("reduce_binary: C must be positive");
  if (!(v > 0.0)) throw std::invalid_argument("reduce_binary: v must be positive");
  if (ex.features.max_index() >= static_cast<std::int32_t>(raw_dim))
    throw std::out_of_range("reduce_binary: feature index exceeds dimension");
  const double c_eff = ex.cost ? *ex.cost : C;
  if (!(c_eff > 0.0)) throw std::invalid_argument("reduce_binary: cost must be positive");
  const double m = ex.margin ? *ex.margin : 1.0;

  std::vector<SparseEntry> entries;
  entries.reserve(ex.features.nnz() + 1);
  for (const SparseEntry& e : ex.features.entries()) {
    const double val = c_eff * y * e.value;
    if (val != 0.0) entries.push_back({e.index, val});
  }
  entries.push_back({static_cast<std::int32_t>(raw_dim), c_eff * y * v});
  return make_constraint(group, 0, SparseVec(std::move(entries)), c_eff * m);
}

inline double predict_binary_score(std::span<const double> w, const SparseVec& x, double v) {
  if (w.empty()) throw std::invalid_argument("predict_binary_score: empty weights");
  const std::size_t raw_dim = w.size() - 1;
  if (x.max_index() >= static_cast<std::int32_t>(raw_dim))
    throw std::out_of_range("predict_binary_score: feature index " +
                            std::to_string(x.max_index() + 1) + " exceeds model dimension " +
                            std::to_string(raw_dim));
  double s = w[raw_dim] * v;
  for (const SparseEntry& e : x.entries()) s += w[e.index] * e.value;
  return s;
}

/// Strict sign rule: a score of exactly zero predicts -1.
inline int predict_binary(std::span<const double> w, const SparseVec& x, double v) {
  return predict_binary_score(w, x, v) > 0.0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Multiclass (single machine): stacked weights w = (w_1..w_K), one block of
// raw_dim coordinates per class. Constraint j != y has +x in block y and
// -x in block j with margin loss(y, j).

inline std::int32_t block_index(int cls, std::int32_t i, std::size_t raw_dim) {
  return static_cast<std::int32_t>((cls - 1) * raw_dim) + i;
}

inline SparseVec multiclass_diff(const SparseVec& x, int y, int j, std::size_t raw_dim) {
  std::vector<SparseEntry> entries;
  entries.reserve(2 * x.nnz());
  const int first = std::min(y, j), second = std::max(y, j);
  const double first_sign = first == y ? 1.0 : -1.0;
  for (const SparseEntry& e : x.entries()) entries.push_back({block_index(first, e.index, raw_dim), first_sign * e.value});
  for (const SparseEntry& e : x.entries()) entries.push_back({block_index(second, e.index, raw_dim), -first_sign * e.value});
  return SparseVec(std::move(entries));
}

inline void check_multiclass(const LabeledExample& ex, int K, std::size_t raw_dim) {
  if (K < 2) throw std::invalid_argument("reduce_multiclass: K must be >= 2");
  const int y = ex.label_int();
  if (ex.label != y || y < 1 || y > K)
    throw std::invalid_argument("reduce_multiclass: label out of 1..K");
  if (ex.features.max_index() >= static_cast<std::int32_t>(raw_dim))
    throw std::out_of_range("reduce_multiclass: feature index exceeds dimension");
}

inline std::vector<Constraint> reduce_multiclass(const LabeledExample& ex, int group, int K,
                                                 const LossFn& loss, std::size_t raw_dim) {
  check_multiclass(ex, K, raw_dim);
  const int y = ex.label_int();
  std::vector<Constraint> out;
  out.reserve(K - 1);
  for (int j = 1; j <= K; ++j) {
    if (j == y) continue;
    out.push_back(make_constraint(group, j, multiclass_diff(ex.features, y, j, raw_dim), loss(y, j)));
  }
  return out;
}

/// Exact worst offender over the K-1 candidates, built without
/// materializing the losing constraints. Ties go to the smallest class.
inline std::optional<online::Offender> multiclass_worst_offender(
    const LabeledExample& ex, int group, int K, const LossFn& loss, std::size_t raw_dim,
    std::span<const double> w) {
  check_multiclass(ex, K, raw_dim);
  if (w.size() < raw_dim * static_cast<std::size_t>(K))
    throw std::out_of_range("multiclass_worst_offender: weight vector too small");
  const int y = ex.label_int();
  std::vector<double> score(K + 1, 0.0);
  for (int c = 1; c <= K; ++c)
    for (const SparseEntry& e : ex.features.entries())
      score[c] += w[block_index(c, e.index, raw_dim)] * e.value;
  int best = -1;
  double best_g = 0.0;
  for (int j = 1; j <= K; ++j) {
    if (j == y) continue;
    const double g = loss(y, j) + score[j] - score[y];
    if (best < 0 || g > best_g) {
      best = j;
      best_g = g;
    }
  }
  if (best < 0) return std::nullopt;  // K == 1 is rejected above; defensive
  return online::Offender{
      make_constraint(group, best, multiclass_diff(ex.features, y, best, raw_dim), loss(y, best)),
      best_g};
}

/// argmax_j w_j.x; ties go to the smallest class index.
inline int predict_multiclass(std::span<const double> w, const SparseVec& x, int K,
                              std::size_t raw_dim) {
  if (x.max_index() >= static_cast<std::int32_t>(raw_dim))
    throw std::out_of_range("predict_multiclass: feature index " +
                            std::to_string(x.max_index() + 1) + " exceeds model dimension " +
                            std::to_string(raw_dim));
  if (w.size() < raw_dim * static_cast<std::size_t>(K))
    throw std::out_of_range("predict_multiclass: weight vector too small");
  int best = 1;
  double best_s = -std::numeric_limits<double>::infinity();
  for (int c = 1; c <= K; ++c) {
    double s = 0.0;
    for (const SparseEntry& e : x.entries()) s += w[block_index(c, e.index, raw_dim)] * e.value;
    if (s > best_s) {
      best_s = s;
      best = c;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Regression: each example becomes two singleton groups, (x, y - eps) and
// (-x, -y - eps), whose summed hinge is the eps-insensitive loss.

inline std::pair<Constraint, Constraint> reduce_regression(const LabeledExample& ex,
                                                           int example_index, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("reduce_regression: epsilon must be >= 0");
  Constraint lo = make_constraint(2 * example_index, 0, ex.features, ex.label - epsilon);
  Constraint hi = make_constraint(2 * example_index + 1, 0, ex.features.scaled(-1.0),
                                  -ex.label - epsilon);
  return {std::move(lo), std::move(hi)};
}

inline double predict_regression(std::span<const double> w, const SparseVec& x) {
  return dot(x, w);
}

// ---------------------------------------------------------------------------
// Structured output spaces. A FeatureMap supplies the joint feature map
// phi(x, y), the task loss, and the candidate space; an optional
// loss-augmented argmax replaces exhaustive enumeration.

class FeatureMap {
 public:
  virtual ~FeatureMap() = default;

  virtual std::size_t dim() const = 0;

  /// Candidate ids in ascending order, including the ground-truth id.
  virtual std::vector<int> candidates(const LabeledExample& ex) const = 0;
  virtual SparseVec phi(const LabeledExample& ex, int cand) const = 0;
  virtual SparseVec phi_truth(const LabeledExample& ex) const = 0;
  virtual double loss(const LabeledExample& ex, int cand) const = 0;
  virtual bool is_truth(const LabeledExample& ex, int cand) const {
    return cand == ex.label_int();
  }

  /// Best non-truth candidate under score + loss, or nullopt to request
  /// enumeration. nullopt is also legal when no non-truth candidate exists.
  virtual std::optional<int> loss_augmented_argmax(const LabeledExample& ex,
                                                   std::span<const double> w) const {
    (void)ex;
    (void)w;
    return std::nullopt;
  }

  /// Plain inference argmax_y w.phi(x,y) (no loss), used for prediction.
  virtual int predict(const LabeledExample& ex, std::span<const double> w) const {
    int best = 0;
    double best_s = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (int cand : candidates(ex)) {
      const double s = dot(phi(ex, cand), w);
      if (!any || s > best_s) {
        best = cand;
        best_s = s;
        any = true;
      }
    }
    if (!any) throw std::runtime_error("FeatureMap::predict: empty candidate space");
    return best;
  }
};

inline Constraint structural_constraint(const LabeledExample& ex, int group,
                                        const FeatureMap& fm, int cand) {
  return make_constraint(group, cand, sparse_diff(fm.phi_truth(ex), fm.phi(ex, cand)),
                         fm.loss(ex, cand));
}

/// All constraints of the example's group: one per non-truth candidate,
/// x = phi(truth) - phi(cand), l = loss(truth, cand).
inline std::vector<Constraint> reduce_structural(const LabeledExample& ex, int group,
                                                 const FeatureMap& fm) {
  std::vector<Constraint> out;
  for (int cand : fm.candidates(ex)) {
    if (fm.is_truth(ex, cand)) continue;
    out.push_back(structural_constraint(ex, group, fm, cand));
  }
  return out;
}

/// Loss-augmented inference: the candidate maximizing loss + w.phi(cand)
/// relative to the truth score, i.e. the constraint with largest gradient.
inline std::optional<online::Offender> structural_worst_offender(const LabeledExample& ex,
                                                                 int group, const FeatureMap& fm,
                                                                 std::span<const double> w) {
  if (auto cand = fm.loss_augmented_argmax(ex, w)) {
    if (fm.is_truth(ex, *cand)) return std::nullopt;
    Constraint c = structural_constraint(ex, group, fm, *cand);
    const double g = c.l - dot(c.x, w);
    return online::Offender{std::move(c), g};
  }
  const double truth_score = dot(fm.phi_truth(ex), w);
  int best = 0;
  double best_g = 0.0;
  bool any = false;
  for (int cand : fm.candidates(ex)) {
    if (fm.is_truth(ex, cand)) continue;
    const double g = fm.loss(ex, cand) + dot(fm.phi(ex, cand), w) - truth_score;
    if (!any || g > best_g) {
      best = cand;
      best_g = g;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return online::Offender{structural_constraint(ex, group, fm, best), best_g};
}

/// The latent-structural case is the structural case over the product
/// candidate space Y x Z, with the truth id encoding (y_i, z_i).
inline std::vector<Constraint> reduce_latent_structural(const LabeledExample& ex, int group,
                                                        const FeatureMap& product_map) {
  return reduce_structural(ex, group, product_map);
}

// ---------------------------------------------------------------------------
// Latent binary: positives contribute the single constraint
// (phi(x, z_i), 1); negatives one constraint (-phi(x, z), -1) per latent
// assignment, so their worst offender maximizes w.phi(x, z) over Z.

inline bool latent_positive(const LabeledExample& ex) {
  if (ex.label != 1.0 && ex.label != -1.0)
    throw std::invalid_argument("reduce_latent: label must be +-1");
  return ex.label == 1.0;
}

inline std::vector<Constraint> reduce_latent(const LabeledExample& ex, int group,
                                             const FeatureMap& zmap) {
  std::vector<Constraint> out;
  if (latent_positive(ex)) {
    if (!ex.latent) throw std::invalid_argument("reduce_latent: positive lacks a latent value");
    out.push_back(make_constraint(group, *ex.latent, zmap.phi(ex, *ex.latent), 1.0));
  } else {
    for (int z : zmap.candidates(ex))
      out.push_back(make_constraint(group, z, zmap.phi(ex, z).scaled(-1.0), -1.0));
  }
  return out;
}

inline std::optional<online::Offender> latent_worst_offender(const LabeledExample& ex, int group,
                                                             const FeatureMap& zmap,
                                                             std::span<const double> w) {
  if (latent_positive(ex)) {
    if (!ex.latent) throw std::invalid_argument("reduce_latent: positive lacks a latent value");
    Constraint c = make_constraint(group, *ex.latent, zmap.phi(ex, *ex.latent), 1.0);
    const double g = c.l - dot(c.x, w);
    return online::Offender{std::move(c), g};
  }
  int best = 0;
  double best_s = 0.0;
  bool any = false;
  for (int z : zmap.candidates(ex)) {
    const double s = dot(zmap.phi(ex, z), w);
    if (!any || s > best_s) {
      best = z;
      best_s = s;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  Constraint c = make_constraint(group, best, zmap.phi(ex, best).scaled(-1.0), -1.0);
  return online::Offender{std::move(c), -1.0 + best_s};
}

// ---------------------------------------------------------------------------
// Built-in feature maps.

/// Multiclass expressed as a structural problem, for cross-checking the
/// direct reduction and for the oracle registry.
class MulticlassFeatureMap final : public FeatureMap {
 public:
  MulticlassFeatureMap(int K, std::size_t raw_dim, LossFn loss = zero_one_loss)
      : k_(K), raw_dim_(raw_dim), loss_(std::move(loss)) {
    if (K < 2) throw std::invalid_argument("MulticlassFeatureMap: K must be >= 2");
  }

  std::size_t dim() const override { return raw_dim_ * k_; }

  std::vector<int> candidates(const LabeledExample&) const override {
    std::vector<int> ids(k_);
    for (int c = 1; c <= k_; ++c) ids[c - 1] = c;
    return ids;
  }

  SparseVec phi(const LabeledExample& ex, int cand) const override {
    std::vector<SparseEntry> entries;
    entries.reserve(ex.features.nnz());
    for (const SparseEntry& e : ex.features.entries())
      entries.push_back({block_index(cand, e.index, raw_dim_), e.value});
    return SparseVec(std::move(entries));
  }

  SparseVec phi_truth(const LabeledExample& ex) const override { return phi(ex, ex.label_int()); }

  double loss(const LabeledExample& ex, int cand) const override {
    return loss_(ex.label_int(), cand);
  }

 private:
  int k_;
  std::size_t raw_dim_;
  LossFn loss_;
};

/// Toy linear-chain labeling model used for testing structured inference.
/// `positions` observations (entry p of the example's features), `states`
/// states per position. Candidate ids encode state sequences in base
/// `states` with position 0 most significant. Features: per-state unary
/// sums of observations (indices 0..S-1) and transition counts (indices
/// S + a*S + b). Loss is Hamming distance. The loss-augmented argmax runs
/// a Viterbi pass over an augmented state that tracks whether the prefix
/// still equals the truth, which excludes the truth sequence exactly.
class ChainFeatureMap final : public FeatureMap {
 public:
  ChainFeatureMap(int positions, int states) : p_(positions), s_(states) {
    if (positions < 1 || states < 1)
      throw std::invalid_argument("ChainFeatureMap: positions and states must be >= 1");
    long total = 1;
    for (int i = 0; i < positions; ++i) {
      total *= states;
      if (total > (1L << 30)) throw std::invalid_argument("ChainFeatureMap: space too large");
    }
    total_ = total;
  }

  std::size_t dim() const override { return s_ + s_ * s_; }

  std::vector<int> candidates(const LabeledExample&) const override {
    std::vector<int> ids(total_);
    for (long i = 0; i < total_; ++i) ids[i] = static_cast<int>(i);
    return ids;
  }

  SparseVec phi(const LabeledExample& ex, int cand) const override {
    const std::vector<int> seq = decode(cand);
    std::vector<SparseEntry> entries;
    for (int p = 0; p < p_; ++p) {
      const double obs = observation(ex, p);
      if (obs != 0.0) entries.push_back({seq[p], obs});
      if (p + 1 < p_)
        entries.push_back({static_cast<std::int32_t>(s_ + seq[p] * s_ + seq[p + 1]), 1.0});
    }
    return SparseVec::accumulate(std::move(entries));
  }

  SparseVec phi_truth(const LabeledExample& ex) const override { return phi(ex, ex.label_int()); }

  double loss(const LabeledExample& ex, int cand) const override {
    const std::vector<int> t = decode(ex.label_int());
    const std::vector<int> c = decode(cand);
    double h = 0.0;
    for (int p = 0; p < p_; ++p) h += t[p] != c[p] ? 1.0 : 0.0;
    return h;
  }

  std::optional<int> loss_augmented_argmax(const LabeledExample& ex,
                                           std::span<const double> w) const override {
    if (total_ <= 1) return std::nullopt;
    const std::vector<int> truth = decode(ex.label_int());
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    // val[s][on_truth_prefix], back-pointers per position
    std::vector<std::array<double, 2>> val(s_, {kNegInf, kNegInf});
    std::vector<std::vector<std::array<std::pair<int, int>, 2>>> back(
        p_, std::vector<std::array<std::pair<int, int>, 2>>(s_));
    for (int s = 0; s < s_; ++s) {
      const int b = s == truth[0] ? 1 : 0;
      val[s][b] = unary(ex, w, 0, s, truth);
    }
    for (int p = 1; p < p_; ++p) {
      std::vector<std::array<double, 2>> next(s_, {kNegInf, kNegInf});
      for (int s2 = 0; s2 < s_; ++s2) {
        const double add = unary(ex, w, p, s2, truth);
        for (int s1 = 0; s1 < s_; ++s1) {
          const double trans = w[s_ + s1 * s_ + s2];
          for (int b = 0; b < 2; ++b) {
            if (val[s1][b] == kNegInf) continue;
            const int b2 = (b == 1 && s2 == truth[p]) ? 1 : 0;
            const double cand = val[s1][b] + trans + add;
            if (cand > next[s2][b2]) {
              next[s2][b2] = cand;
              back[p][s2][b2] = {s1, b};
            }
          }
        }
      }
      val = std::move(next);
    }
    int best_s = -1;
    double best = kNegInf;
    for (int s = 0; s < s_; ++s)
      if (val[s][0] > best) {
        best = val[s][0];
        best_s = s;
      }
    if (best_s < 0) return std::nullopt;
    std::vector<int> seq(p_);
    int s = best_s, b = 0;
    for (int p = p_ - 1; p > 0; --p) {
      seq[p] = s;
      auto [ps, pb] = back[p][s][b];
      s = ps;
      b = pb;
    }
    seq[0] = s;
    return encode(seq);
  }

  int predict(const LabeledExample& ex, std::span<const double> w) const override {
    // plain Viterbi, no loss augmentation
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    std::vector<double> val(s_);
    std::vector<std::vector<int>> back(p_, std::vector<int>(s_, 0));
    for (int s = 0; s < s_; ++s) val[s] = w[s] * observation(ex, 0);
    for (int p = 1; p < p_; ++p) {
      std::vector<double> next(s_, kNegInf);
      for (int s2 = 0; s2 < s_; ++s2) {
        const double add = w[s2] * observation(ex, p);
        for (int s1 = 0; s1 < s_; ++s1) {
          const double cand = val[s1] + w[s_ + s1 * s_ + s2] + add;
          if (cand > next[s2]) {
            next[s2] = cand;
            back[p][s2] = s1;
          }
        }
      }
      val = std::move(next);
    }
    int s = 0;
    for (int c = 1; c < s_; ++c)
      if (val[c] > val[s]) s = c;
    std::vector<int> seq(p_);
    for (int p = p_ - 1; p > 0; --p) {
      seq[p] = s;
      s = back[p][s];
    }
    seq[0] = s;
    return encode(seq);
  }

  int encode(const std::vector<int>& seq) const {
    long id = 0;
    for (int p = 0; p < p_; ++p) id = id * s_ + seq[p];
    return static_cast<int>(id);
  }

  std::vector<int> decode(int id) const {
    if (id < 0 || id >= total_) throw std::out_of_range("ChainFeatureMap: bad candidate id");
    std::vector<int> seq(p_);
    long v = id;
    for (int p = p_ - 1; p >= 0; --p) {
      seq[p] = static_cast<int>(v % s_);
      v /= s_;
    }
    return seq;
  }

 private:
  static double observation(const LabeledExample& ex, int p) {
    for (const SparseEntry& e : ex.features.entries())
      if (e.index == p) return e.value;
    return 0.0;
  }

  double unary(const LabeledExample& ex, std::span<const double> w, int p, int s,
               const std::vector<int>& truth) const {
    return w[s] * observation(ex, p) + (s != truth[p] ? 1.0 : 0.0);
  }

  int p_;
  int s_;
  long total_;
};

// ---------------------------------------------------------------------------
// Oracle registry: feature maps registered against a problem id so models
// can name the inference procedure they were trained with. Ids look like
// "chain:positions=3,states=2" or "multiclass:k=5,dim=10".

using FeatureMapFactory = std::function<std::unique_ptr<FeatureMap>(const std::string& args)>;

inline std::unordered_map<std::string, long> parse_kv_args(const std::string& args) {
  std::unordered_map<std::string, long> kv;
  std::size_t pos = 0;
  while (pos < args.size()) {
    const std::size_t comma = args.find(',', pos);
    const std::string item = args.substr(pos, comma == std::string::npos ? comma : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("oracle args: expected key=value");
    kv[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return kv;
}

inline std::unordered_map<std::string, FeatureMapFactory>& feature_map_registry() {
  static std::unordered_map<std::string, FeatureMapFactory> reg = [] {
    std::unordered_map<std::string, FeatureMapFactory> r;
    r["chain"] = [](const std::string& args) -> std::unique_ptr<FeatureMap> {
      auto kv = parse_kv_args(args);
      return std::make_unique<ChainFeatureMap>(static_cast<int>(kv.at("positions")),
                                               static_cast<int>(kv.at("states")));
    };
    r["multiclass"] = [](const std::string& args) -> std::unique_ptr<FeatureMap> {
      auto kv = parse_kv_args(args);
      return std::make_unique<MulticlassFeatureMap>(static_cast<int>(kv.at("k")),
                                                    static_cast<std::size_t>(kv.at("dim")));
    };
    return r;
  }();
  return reg;
}

inline void register_feature_map(const std::string& id, FeatureMapFactory factory) {
  feature_map_registry()[id] = std::move(factory);
}

/// Instantiates "name:key=value,..." through the registry.
inline std::unique_ptr<FeatureMap> make_feature_map(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  auto it = feature_map_registry().find(name);
  if (it == feature_map_registry().end())
    throw std::invalid_argument("unknown oracle id: " + name);
  return it->second(args);
}

// ---------------------------------------------------------------------------
// In-memory example sources for the online solver.

enum class Family { Binary, Multiclass, Regression };

struct FamilyParams {
  Family family = Family::Binary;
  double c = 1.0;
  double v = 1.0;
  double epsilon = 0.0;
  int k = 0;  // multiclass class count; 0 lets file sources infer it
  LossFn loss = zero_one_loss;
};

/// Streams a vector of labeled examples through the configured reduction.
/// Groups are the example ordinal (regression: 2i and 2i+1).
class VectorSource final : public online::ExampleSource {
 public:
  VectorSource(std::size_t raw_dim, std::vector<LabeledExample> examples, FamilyParams params)
      : raw_dim_(raw_dim), examples_(std::move(examples)), params_(std::move(params)) {}

  void reset() override { cursor_ = -1; }

  bool advance() override {
    const long units = params_.family == Family::Regression
                           ? 2 * static_cast<long>(examples_.size())
                           : static_cast<long>(examples_.size());
    return ++cursor_ < units;
  }

  int group() const override { return static_cast<int>(cursor_); }

  std::optional<online::Offender> worst_offender(std::span<const double> w) const override {
    switch (params_.family) {
      case Family::Binary: {
        Constraint c = reduce_binary(examples_[cursor_], group(), params_.c, params_.v, raw_dim_);
        const double g = c.l - dot(c.x, w);
        return online::Offender{std::move(c), g};
      }
      case Family::Multiclass:
        return multiclass_worst_offender(examples_[cursor_], group(), params_.k, params_.loss,
                                         raw_dim_, w);
      case Family::Regression: {
        const LabeledExample& ex = examples_[cursor_ / 2];
        auto [lo, hi] = reduce_regression(ex, static_cast<int>(cursor_ / 2), params_.epsilon);
        Constraint c = cursor_ % 2 == 0 ? std::move(lo) : std::move(hi);
        const double g = c.l - dot(c.x, w);
        return online::Offender{std::move(c), g};
      }
    }
    return std::nullopt;
  }

  bool enumerate(std::vector<Constraint>& out) const override {
    switch (params_.family) {
      case Family::Binary:
        out.push_back(reduce_binary(examples_[cursor_], group(), params_.c, params_.v, raw_dim_));
        return true;
      case Family::Multiclass: {
        auto cons = reduce_multiclass(examples_[cursor_], group(), params_.k, params_.loss, raw_dim_);
        out.insert(out.end(), std::make_move_iterator(cons.begin()),
                   std::make_move_iterator(cons.end()));
        return true;
      }
      case Family::Regression: {
        const LabeledExample& ex = examples_[cursor_ / 2];
        auto [lo, hi] = reduce_regression(ex, static_cast<int>(cursor_ / 2), params_.epsilon);
        out.push_back(cursor_ % 2 == 0 ? std::move(lo) : std::move(hi));
        return true;
      }
    }
    return false;
  }

  std::size_t dim() const override {
    switch (params_.family) {
      case Family::Binary:
        return raw_dim_ + 1;
      case Family::Multiclass:
        return raw_dim_ * params_.k;
      case Family::Regression:
        return raw_dim_;
    }
    return 0;
  }

 private:
  std::size_t raw_dim_;
  std::vector<LabeledExample> examples_;
  FamilyParams params_;
  long cursor_ = -1;
};

/// Oracle-backed source over a structured problem: one group per example,
/// worst offenders from the feature map's loss-augmented inference.
class StructuralSource final : public online::ExampleSource {
 public:
  StructuralSource(std::vector<LabeledExample> examples, const FeatureMap& fm)
      : examples_(std::move(examples)), fm_(fm) {}

  void reset() override { cursor_ = -1; }
  bool advance() override { return ++cursor_ < static_cast<long>(examples_.size()); }
  int group() const override { return static_cast<int>(cursor_); }

  std::optional<online::Offender> worst_offender(std::span<const double> w) const override {
    return structural_worst_offender(examples_[cursor_], group(), fm_, w);
  }

  bool enumerate(std::vector<Constraint>& out) const override {
    auto cons = reduce_structural(examples_[cursor_], group(), fm_);
    out.insert(out.end(), std::make_move_iterator(cons.begin()),
               std::make_move_iterator(cons.end()));
    return true;
  }

  std::size_t dim() const override { return fm_.dim(); }

 private:
  std::vector<LabeledExample> examples_;
  const FeatureMap& fm_;
  long cursor_ = -1;
};

/// Latent binary source: positives are singleton groups, negatives search
/// the latent space for the highest-scoring assignment.
class LatentSource final : public online::ExampleSource {
 public:
  LatentSource(std::vector<LabeledExample> examples, const FeatureMap& zmap)
      : examples_(std::move(examples)), zmap_(zmap) {}

  void reset() override { cursor_ = -1; }
  bool advance() override { return ++cursor_ < static_cast<long>(examples_.size()); }
  int group() const override { return static_cast<int>(cursor_); }

  std::optional<online::Offender> worst_offender(std::span<const double> w) const override {
    return latent_worst_offender(examples_[cursor_], group(), zmap_, w);
  }

  bool enumerate(std::vector<Constraint>& out) const override {
    auto cons = reduce_latent(examples_[cursor_], group(), zmap_);
    out.insert(out.end(), std::make_move_iterator(cons.begin()),
               std::make_move_iterator(cons.end()));
    return true;
  }

  std::size_t dim() const override { return zmap_.dim(); }

 private:
  std::vector<LabeledExample> examples_;
  const FeatureMap& zmap_;
  long cursor_ = -1;
};

/// Presents any enumerable source in the whitened coordinates of a prior:
/// candidates are transformed before selection so the worst offender is
/// exact for the transformed problem.
class TransformedSource final : public online::ExampleSource {
 public:
  TransformedSource(online::ExampleSource& base, const RegularizerSpec& spec) : base_(base), spec_(spec) {}

  void reset() override { base_.reset(); }
  bool advance() override { return base_.advance(); }
  int group() const override { return base_.group(); }

  std::optional<online::Offender> worst_offender(std::span<const double> w) const override {
    buf_.clear();
    if (!base_.enumerate(buf_))
      throw std::runtime_error("TransformedSource: base source cannot enumerate");
    std::optional<online::Offender> best;
    for (const Constraint& raw : buf_) {
      Constraint c = reparameterize(raw, spec_);
      const double g = c.l - dot(c.x, w);
      if (!best || g > best->gradient) best = online::Offender{std::move(c), g};
    }
    return best;
  }

  bool enumerate(std::vector<Constraint>& out) const override {
    buf_.clear();
    if (!base_.enumerate(buf_)) return false;
    for (const Constraint& raw : buf_) out.push_back(reparameterize(raw, spec_));
    return true;
  }

  std::size_t dim() const override { return base_.dim(); }

 private:
  online::ExampleSource& base_;
  const RegularizerSpec& spec_;
  mutable std::vector<Constraint> buf_;
};

}  // namespace gsvm::reductions
