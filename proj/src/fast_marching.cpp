#include "woe/fast_marching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace woe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Godunov update: smallest d with sum_a ((d - m_a)/h_a)_+^2 = 1 over the
/// provided upwind neighbor values, dropping the largest contributors until
/// the root is causal (d >= every participating m).
double godunov_solve(std::vector<std::pair<double, double>>& mh) {
  std::sort(mh.begin(), mh.end());
  for (std::size_t k = mh.size(); k >= 1; --k) {
    double a = 0.0, b = 0.0, c = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double inv2 = 1.0 / (mh[i].second * mh[i].second);
      a += inv2;
      b += mh[i].first * inv2;
      c += mh[i].first * mh[i].first * inv2;
    }
    const double disc = b * b - a * c;
    if (disc < 0.0) continue;
    const double d = (b + std::sqrt(disc)) / a;
    if (d >= mh[k - 1].first) return d;
  }
  return mh.front().first + mh.front().second;
}

}  // namespace

GridField fmm_distance(const GridField& interior_mask) {
  interior_mask.check();
  const Eigen::Index dim = interior_mask.dim();
  const Eigen::Index n = interior_mask.node_count();

  std::vector<Eigen::Index> strides(dim);
  strides[dim - 1] = 1;
  for (Eigen::Index a = dim - 2; a >= 0; --a)
    strides[a] = strides[a + 1] * interior_mask.shape[a + 1];

  std::vector<std::uint8_t> inside(n);
  Eigen::Index inside_count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    inside[i] = interior_mask.values[i] > 0.5;
    inside_count += inside[i];
  }
  if (inside_count == 0 || inside_count == n)
    throw std::invalid_argument("fmm_distance: mask must have interior and exterior nodes");

  std::vector<double> dist(n, kInf);
  std::vector<std::uint8_t> accepted(n, 0);
  using HeapEntry = std::pair<double, Eigen::Index>;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;

  // Seed the band: nodes facing the interface, frozen at half a spacing.
  {
    std::vector<Eigen::Index> idx(dim, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index a = 0; a < dim; ++a) {
        const double h = interior_mask.spacing[a];
        if (idx[a] > 0 && inside[i - strides[a]] != inside[i])
          dist[i] = std::min(dist[i], 0.5 * h);
        if (idx[a] + 1 < interior_mask.shape[a] && inside[i + strides[a]] != inside[i])
          dist[i] = std::min(dist[i], 0.5 * h);
      }
      if (dist[i] < kInf) heap.emplace(dist[i], i);
      for (Eigen::Index a = dim - 1; a >= 0; --a) {
        if (++idx[a] < interior_mask.shape[a]) break;
        idx[a] = 0;
      }
    }
  }

  std::vector<Eigen::Index> idx(dim);
  std::vector<std::pair<double, double>> mh;
  mh.reserve(dim);
  while (!heap.empty()) {
    const auto [value, node] = heap.top();
    heap.pop();
    if (accepted[node] || value > dist[node]) continue;
    accepted[node] = 1;

    Eigen::Index rem = node;
    for (Eigen::Index a = 0; a < dim; ++a) {
      idx[a] = rem / strides[a];
      rem %= strides[a];
    }
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (int sgn : {-1, +1}) {
        if (sgn < 0 ? idx[a] == 0 : idx[a] + 1 == interior_mask.shape[a]) continue;
        const Eigen::Index nb = node + sgn * strides[a];
        if (accepted[nb]) continue;
        mh.clear();
        for (Eigen::Index b = 0; b < dim; ++b) {
          const Eigen::Index coord = b == a ? idx[b] + sgn : idx[b];
          double best = kInf;
          if (coord > 0 && accepted[nb - strides[b]]) best = dist[nb - strides[b]];
          if (coord + 1 < interior_mask.shape[b] && accepted[nb + strides[b]])
            best = std::min(best, dist[nb + strides[b]]);
          if (best < kInf) mh.emplace_back(best, interior_mask.spacing[b]);
        }
        if (mh.empty()) continue;
        const double cand = godunov_solve(mh);
        if (cand < dist[nb]) {
          dist[nb] = cand;
          heap.emplace(cand, nb);
        }
      }
    }
  }

  GridField out{interior_mask.origin, interior_mask.spacing, interior_mask.shape, {}};
  out.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.values[i] = inside[i] ? -dist[i] : dist[i];
  return out;
}

}  // namespace woe
