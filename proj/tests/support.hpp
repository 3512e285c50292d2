#pragma once

// Independent oracles for the unit tests. These deliberately avoid the
// library's own hull, determinant and counting code.

#include "latnum/exact.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using P2 = std::pair<long, long>;

inline long cross(const P2& o, const P2& a, const P2& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Andrew's monotone chain; strictly convex vertices in counterclockwise order.
inline std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

// Twice the shoelace area of a counterclockwise polygon.
inline long twice_area(const std::vector<P2>& poly) {
  long s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    s += a.first * b.second - a.second * b.first;
  }
  return s;
}

// 1 inside, 0 on the boundary, -1 outside (counterclockwise polygon with >= 3 vertices).
inline int locate(const std::vector<P2>& poly, const P2& q) {
  bool boundary = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const long c = cross(poly[i], poly[(i + 1) % poly.size()], q);
    if (c < 0) return -1;
    if (c == 0) boundary = true;
  }
  return boundary ? 0 : 1;
}

// Laplace expansion along the first row.
inline latnum::Integer cofactor_det(const std::vector<std::vector<long>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  latnum::Integer sum = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    const latnum::Integer term = m[0][c] * cofactor_det(minor);
    sum += c % 2 ? latnum::Integer(-term) : term;
  }
  return sum;
}

// Random matrix with entries in [-range, range] and determinant +-1.
inline latnum::IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, long range) {
  std::uniform_int_distribution<long> entry(-range, range);
  while (true) {
    std::vector<std::vector<long>> m(n, std::vector<long>(n));
    for (auto& r : m)
      for (auto& x : r) x = entry(rng);
    const latnum::Integer d = cofactor_det(m);
    if (d == 1 || d == -1) {
      std::vector<latnum::IntVector> rows;
      for (auto& r : m) rows.emplace_back(r.begin(), r.end());
      return latnum::IntMatrix::from_rows(rows);
    }
  }
}

}  // namespace oracle
