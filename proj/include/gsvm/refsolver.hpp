#pragma once

// Slow, independent reference solvers used as oracles by the test suite
// and by `verify --oracle` on small inputs. Never on the training path;
// none of this shares code with the coordinate-descent solver.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsvm/core.hpp"
#include "gsvm/extensions.hpp"

namespace gsvm::refsolver {

/// The dual QP in explicit dense form: Q[(j),(k)] = x_j . x_k, the margin
/// vector, and the slack-group id of every row.
struct DenseQP {
  std::size_t n = 0;
  std::vector<double> gram;     // n x n, row-major
  std::vector<double> margins;  // n
  std::vector<int> group;       // n

  static DenseQP from_constraints(std::span<const Constraint> cons) {
    DenseQP qp;
    qp.n = cons.size();
    qp.gram.assign(qp.n * qp.n, 0.0);
    qp.margins.resize(qp.n);
    qp.group.resize(qp.n);
    for (std::size_t j = 0; j < qp.n; ++j) {
      qp.margins[j] = cons[j].l;
      qp.group[j] = cons[j].group;
      for (std::size_t k = j; k < qp.n; ++k) {
        const double q = dot_sparse(cons[j].x, cons[k].x);
        qp.gram[j * qp.n + k] = q;
        qp.gram[k * qp.n + j] = q;
      }
    }
    return qp;
  }

  void check_symmetric(double tol = 1e-10) const {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(gram[j * n + k] - gram[k * n + j]) > tol)
          throw std::invalid_argument("DenseQP: gram matrix not symmetric");
  }

  /// F(alpha) = -0.5 alpha'Q alpha + l'alpha.
  double objective(std::span<const double> alpha) const {
    double quad = 0.0, lin = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double row = 0.0;
      for (std::size_t k = 0; k < n; ++k) row += gram[j * n + k] * alpha[k];
      quad += alpha[j] * row;
      lin += margins[j] * alpha[j];
    }
    return -0.5 * quad + lin;
  }

  /// grad F = l - Q alpha.
  std::vector<double> gradient(std::span<const double> alpha) const {
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
      double row = 0.0;
      for (std::size_t k = 0; k < n; ++k) row += gram[j * n + k] * alpha[k];
      g[j] = margins[j] - row;
    }
    return g;
  }
};

/// Euclidean projection onto the capped simplex {a >= 0, sum a <= 1},
/// in place. If clipping at zero already satisfies the cap that is the
/// projection; otherwise the cap is active and the answer is the
/// projection onto the full simplex {a >= 0, sum a = 1}.
inline void project_group_cap(std::span<double> v) {
  double clipped_sum = 0.0;
  for (double x : v) clipped_sum += std::max(0.0, x);
  if (clipped_sum <= 1.0) {
    for (double& x : v) x = std::max(0.0, x);
    return;
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0, theta = 0.0;
  std::size_t active = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    running += sorted[k];
    const double t = (running - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) {
      theta = t;
      active = k + 1;
    }
  }
  (void)active;
  for (double& x : v) x = std::max(0.0, x - theta);
}

struct RefResult {
  std::vector<double> alpha;
  double objective = 0.0;
  bool converged = false;
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
};

/// Projected gradient ascent on the dense dual. Step length starts at
/// 1 / trace(Q) and is halved whenever a step would decrease the
/// objective; stops once the step-normalized fixed-point residual
/// ||project(a + s g) - a||_inf / s drops to 1e-9.
inline RefResult solve_reference(const DenseQP& qp, int max_iters = 200000, double step = 0.0) {
  qp.check_symmetric();
  RefResult r;
  r.alpha.assign(qp.n, 0.0);
  if (qp.n == 0) {
    r.converged = true;
    r.residual = 0.0;
    return r;
  }
  if (qp.n > 64) throw std::invalid_argument("solve_reference: problem too large (> 64 variables)");

  // group id -> member rows, in first-seen order
  std::vector<std::vector<std::size_t>> blocks;
  {
    std::vector<int> seen_ids;
    for (std::size_t j = 0; j < qp.n; ++j) {
      std::size_t b = 0;
      for (; b < seen_ids.size(); ++b)
        if (seen_ids[b] == qp.group[j]) break;
      if (b == seen_ids.size()) {
        seen_ids.push_back(qp.group[j]);
        blocks.emplace_back();
      }
      blocks[b].push_back(j);
    }
  }
  const auto project_all = [&](std::vector<double>& a) {
    std::vector<double> block;
    for (const auto& rows : blocks) {
      block.resize(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) block[i] = a[rows[i]];
      project_group_cap(block);
      for (std::size_t i = 0; i < rows.size(); ++i) a[rows[i]] = block[i];
    }
  };

  double trace = 0.0;
  for (std::size_t j = 0; j < qp.n; ++j) trace += qp.gram[j * qp.n + j];
  double s = step > 0.0 ? step : 1.0 / std::max(trace, 1e-12);

  double f = qp.objective(r.alpha);
  std::vector<double> cand(qp.n);
  for (int it = 1; it <= max_iters; ++it) {
    r.iterations = it;
    const std::vector<double> g = qp.gradient(r.alpha);
    cand = r.alpha;
    for (std::size_t j = 0; j < qp.n; ++j) cand[j] += s * g[j];
    project_all(cand);

    double dmax = 0.0;
    for (std::size_t j = 0; j < qp.n; ++j) dmax = std::max(dmax, std::abs(cand[j] - r.alpha[j]));
    r.residual = dmax / s;
    if (r.residual <= 1e-9) {
      r.converged = true;
      break;
    }

    const double fc = qp.objective(cand);
    if (fc >= f - 1e-15 * (1.0 + std::abs(f))) {
      r.alpha.swap(cand);
      f = fc;
    } else {
      s *= 0.5;
      if (s < 1e-18) break;  // step underflow; leave unconverged
    }
  }
  r.objective = qp.objective(r.alpha);
  return r;
}

struct PrimalRefResult {
  std::vector<double> w;
  double objective = 0.0;
  long iterations = 0;
};

/// Projected subgradient descent on the primal
///   0.5*||w||^2 + sum_i max_j max(0, l_ij - w.x_ij),  w_k >= 0 for k in N,
/// with the 2/(t+1) step of a 1-strongly-convex objective. Tracks the best
/// objective seen, which is what tests compare against. Deliberately slow
/// and simple; small inputs only.
inline PrimalRefResult solve_primal_reference(std::size_t dim, std::span<const Constraint> cons,
                                              std::span<const std::int32_t> nonneg,
                                              long iters = 300000) {
  std::vector<std::uint8_t> mask(dim, 0);
  for (std::int32_t k : nonneg) {
    if (k < 0 || static_cast<std::size_t>(k) >= dim)
      throw std::invalid_argument("solve_primal_reference: index out of range");
    mask[k] = 1;
  }
  const auto project = [&](std::vector<double>& w) {
    for (std::size_t i = 0; i < dim; ++i)
      if (mask[i] && w[i] < 0.0) w[i] = 0.0;
  };

  // per-group constraint rows, first-seen order
  std::vector<std::vector<std::size_t>> blocks;
  {
    std::vector<int> ids;
    for (std::size_t j = 0; j < cons.size(); ++j) {
      std::size_t b = 0;
      for (; b < ids.size(); ++b)
        if (ids[b] == cons[j].group) break;
      if (b == ids.size()) {
        ids.push_back(cons[j].group);
        blocks.emplace_back();
      }
      blocks[b].push_back(j);
    }
  }

  PrimalRefResult best;
  std::vector<double> w(dim, 0.0);
  best.w = w;
  best.objective = eval_primal(w, cons).objective;

  std::vector<double> sub(dim);
  for (long t = 1; t <= iters; ++t) {
    // subgradient: w plus, per group with positive slack, -x of the
    // violation argmax
    sub.assign(w.begin(), w.end());
    for (const auto& rows : blocks) {
      double worst = 0.0;
      std::size_t worst_j = 0;
      bool found = false;
      for (std::size_t j : rows) {
        const double viol = cons[j].l - dot(cons[j].x, w);
        if (viol > worst) {
          worst = viol;
          worst_j = j;
          found = true;
        }
      }
      if (found)
        for (const SparseEntry& e : cons[worst_j].x.entries()) sub[e.index] -= e.value;
    }
    const double eta = 2.0 / static_cast<double>(t + 1);
    for (std::size_t i = 0; i < dim; ++i) w[i] -= eta * sub[i];
    project(w);

    const double f = eval_primal(w, cons).objective;
    if (f < best.objective) {
      best.objective = f;
      best.w = w;
    }
    best.iterations = t;
  }
  return best;
}

}  // namespace gsvm::refsolver
