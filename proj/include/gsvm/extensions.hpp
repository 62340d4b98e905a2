#pragma once

// Non-negativity constraints on a subset of weight coordinates and
// Gaussian-prior regularization via problem reparameterization.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsvm/core.hpp"

namespace gsvm {

/// Coordinate indices k constrained to w_k >= 0.
struct NonNegSpec {
  std::vector<std::int32_t> indices;

  bool active() const { return !indices.empty(); }

  /// Per-coordinate flag vector; rejects indices outside [0, dim).
  std::vector<std::uint8_t> mask(std::size_t dim) const {
    std::vector<std::uint8_t> m(dim, 0);
    for (std::int32_t k : indices) {
      if (k < 0 || static_cast<std::size_t>(k) >= dim)
        throw std::invalid_argument("NonNegSpec: index out of range");
      m[k] = 1;
    }
    return m;
  }
};

/// The multiplier vector implied by w_raw: beta_k = max(0, -w_raw_k) on the
/// constrained set, zero elsewhere, so that w_raw + beta clamps the
/// constrained coordinates at zero.
struct NonNegState {
  std::vector<double> w_raw;
  std::vector<double> beta;

  std::vector<double> effective() const {
    std::vector<double> w(w_raw.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = w_raw[i] + beta[i];
    return w;
  }
};

inline NonNegState make_nonneg_state(std::span<const double> w_raw, const NonNegSpec& spec) {
  NonNegState s;
  s.w_raw.assign(w_raw.begin(), w_raw.end());
  s.beta.assign(w_raw.size(), 0.0);
  for (std::int32_t k : spec.indices) {
    if (k < 0 || static_cast<std::size_t>(k) >= w_raw.size())
      throw std::invalid_argument("make_nonneg_state: index out of range");
    s.beta[k] = std::max(0.0, -w_raw[k]);
  }
  return s;
}

/// Refreshes the effective weights on the given coordinates:
/// w_eff_k = max(w_raw_k, 0) where constrained, w_raw_k otherwise.
inline void nonneg_project(std::span<const std::uint8_t> mask, std::span<const double> w_raw,
                           std::span<double> w_eff, std::span<const std::int32_t> touched) {
  for (std::int32_t k : touched)
    w_eff[k] = (mask[k] && w_raw[k] < 0.0) ? 0.0 : w_raw[k];
}

/// Diagonal Gaussian prior (w0, Sigma) expressed through w0 = mu and
/// r_diag = diag(Sigma^{-1/2}). All r_diag entries must be positive.
struct RegularizerSpec {
  std::vector<double> w0;
  std::vector<double> r_diag;

  RegularizerSpec() = default;
  RegularizerSpec(std::vector<double> mean, std::vector<double> r) : w0(std::move(mean)), r_diag(std::move(r)) {
    if (w0.size() != r_diag.size())
      throw std::invalid_argument("RegularizerSpec: w0 and r_diag size mismatch");
    for (double v : w0)
      if (!std::isfinite(v)) throw std::invalid_argument("RegularizerSpec: non-finite w0 entry");
    for (double v : r_diag)
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("RegularizerSpec: r_diag entries must be positive and finite");
  }

  static RegularizerSpec identity(std::size_t dim) {
    return RegularizerSpec(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
  }

  std::size_t dim() const { return w0.size(); }

  bool is_identity() const {
    for (double v : w0)
      if (v != 0.0) return false;
    for (double v : r_diag)
      if (v != 1.0) return false;
    return true;
  }
};

/// Maps a constraint into the whitened problem: features scaled by 1/r_k
/// per coordinate, margin shifted by -w0.x. The transformed problem is
/// solved by the ordinary solver.
inline Constraint reparameterize(const Constraint& c, const RegularizerSpec& spec) {
  if (static_cast<std::size_t>(c.x.max_index() + 1) > spec.dim())
    throw std::out_of_range("reparameterize: constraint exceeds prior dimension");
  std::vector<SparseEntry> entries;
  entries.reserve(c.x.nnz());
  double shift = 0.0;
  for (const SparseEntry& e : c.x.entries()) {
    shift += spec.w0[e.index] * e.value;
    const double v = e.value / spec.r_diag[e.index];
    if (v != 0.0) entries.push_back({e.index, v});
  }
  return make_constraint(c.group, c.local, SparseVec(std::move(entries)), c.l - shift);
}

inline std::vector<Constraint> reparameterize(std::span<const Constraint> cons,
                                              const RegularizerSpec& spec) {
  std::vector<Constraint> out;
  out.reserve(cons.size());
  for (const Constraint& c : cons) out.push_back(reparameterize(c, spec));
  return out;
}

/// Original-space weights w = hat_w / r_diag + w0 (diagonal R).
inline std::vector<double> recover_weights(std::span<const double> hat_w,
                                           const RegularizerSpec& spec) {
  if (hat_w.size() != spec.dim())
    throw std::invalid_argument("recover_weights: dimension mismatch");
  std::vector<double> w(hat_w.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = hat_w[k] / spec.r_diag[k] + spec.w0[k];
  return w;
}

/// Original-space score w.x evaluated from the whitened solution:
/// (hat_w + w0 R) . hat_x.
inline double recover_score(std::span<const double> hat_w, const RegularizerSpec& spec,
                            const SparseVec& hat_x) {
  if (hat_x.max_index() >= static_cast<std::int32_t>(spec.dim()))
    throw std::out_of_range("recover_score: feature index exceeds prior dimension");
  double acc = 0.0;
  for (const SparseEntry& e : hat_x.entries())
    acc += (hat_w[e.index] + spec.w0[e.index] * spec.r_diag[e.index]) * e.value;
  return acc;
}

}  // namespace gsvm
