#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library's enumeration or series code.

#include "thetacert/lattice.hpp"
#include "thetacert/real.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using thetacert::Real;

// Ambient-coordinate brute force. Every point of Z^n, D_n and E8 with squared
// norm <= M has coordinates bounded by sqrt(M) in absolute value, so a cube
// scan finds them all. half = true scans the (Z + 1/2)^n coset instead.
inline std::vector<std::int64_t> cube_counts(std::size_t n, std::int64_t max_norm, bool half,
                                             const std::function<bool(const std::vector<int>&)>& keep) {
  // Coordinates are stored doubled so the half-integer coset stays integral.
  std::vector<std::int64_t> counts(static_cast<std::size_t>(max_norm) + 1, 0);
  const int r = static_cast<int>(std::sqrt(static_cast<double>(max_norm))) + 1;
  std::vector<int> doubled;
  for (int v = -2 * r - 1; v <= 2 * r + 1; ++v)
    if ((v % 2 != 0) == half && static_cast<std::int64_t>(v) * v <= 4 * max_norm) doubled.push_back(v);
  std::vector<int> x(n, 0);
  std::vector<std::size_t> idx(n, 0);
  const std::int64_t limit4 = 4 * max_norm;
  while (true) {
    std::int64_t s4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = doubled[idx[i]];
      s4 += static_cast<std::int64_t>(x[i]) * x[i];
    }
    if (s4 <= limit4 && s4 % 4 == 0 && keep(x)) ++counts[static_cast<std::size_t>(s4 / 4)];
    std::size_t k = 0;
    while (k < n && ++idx[k] == doubled.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return counts;
}

inline std::vector<std::int64_t> zn_counts(std::size_t n, std::int64_t max_norm) {
  return cube_counts(n, max_norm, false, [](const std::vector<int>&) { return true; });
}

inline std::vector<std::int64_t> dn_counts(std::size_t n, std::int64_t max_norm) {
  return cube_counts(n, max_norm, false, [](const std::vector<int>& x) {
    long s = 0;
    for (int v : x) s += v / 2;
    return s % 2 == 0;
  });
}

// E8 = D8 u (D8 + (1/2,...,1/2)); in doubled coordinates the sum of the
// coordinates is a multiple of 4 on both cosets.
inline std::vector<std::int64_t> e8_counts(std::int64_t max_norm) {
  auto even_sum = [](const std::vector<int>& x) {
    long s = 0;
    for (int v : x) s += v;
    return s % 4 == 0;
  };
  auto a = cube_counts(8, max_norm, false, even_sum);
  auto b = cube_counts(8, max_norm, true, even_sum);
  for (std::size_t m = 0; m < a.size(); ++m) a[m] += b[m];
  return a;
}

// Coefficient-box brute force over the Gram matrix: |c_i| <= sqrt(M * (G^-1)_ii)
// for any coefficient vector of norm <= M. Only the exact quadratic form is
// used to bin points, no partial-norm pruning.
inline std::vector<std::int64_t> coefficient_box_counts(const thetacert::Lattice& lattice, std::int64_t max_norm) {
  const auto& g = lattice.gram();
  const std::size_t n = g.rows();
  if (!g.all_integers()) throw std::invalid_argument("coefficient box oracle needs an integral Gram matrix");
  auto inv = g.inverse();
  if (!inv) throw std::invalid_argument("singular Gram matrix");
  std::vector<std::int64_t> gi(n * n);
  std::vector<int> bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gi[i * n + j] = g(i, j).get_num().get_si();
    const double d = (*inv)(i, i).get_d();
    bound[i] = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_norm) * d) + 1e-9));
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(max_norm) + 1, 0);
  std::vector<int> c(n);
  // cross[i][j] = sum_{k < i} G_jk c_k, kept per level so each step is O(n).
  std::vector<std::vector<std::int64_t>> cross(n + 1, std::vector<std::int64_t>(n, 0));
  std::vector<std::int64_t> partial(n + 1, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (partial[n] <= max_norm) ++counts[static_cast<std::size_t>(partial[n])];
      return;
    }
    for (int v = -bound[i]; v <= bound[i]; ++v) {
      c[i] = v;
      partial[i + 1] = partial[i] + gi[i * n + i] * v * v + 2 * v * cross[i][i];
      for (std::size_t j = i + 1; j < n; ++j) cross[i + 1][j] = cross[i][j] + gi[j * n + i] * v;
      rec(i + 1);
    }
  };
  rec(0);
  return counts;
}

inline std::int64_t sigma3(std::int64_t m) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= m; ++d)
    if (m % d == 0) s += d * d * d;
  return s;
}

// Two-sided q-sums, summed until the terms underflow the working precision.
inline Real theta3(const Real& t) {
  Real s = 1;
  for (int m = 1; m < 100000; ++m) {
    const Real term = 2 * exp(-t * Real(m) * m);
    s += term;
    if (term < s * Real(1e-40)) break;
  }
  return s;
}

inline Real theta4(const Real& t) {
  Real s = 1;
  for (int m = 1; m < 100000; ++m) {
    const Real term = 2 * exp(-t * Real(m) * m);
    s += (m % 2 ? -term : term);
    if (term < Real(1e-40)) break;
  }
  return s;
}

inline Real theta2(const Real& t) {
  Real s = 0;
  for (int m = 0; m < 100000; ++m) {
    const Real k = Real(m) + Real(0.5);
    const Real term = 2 * exp(-t * k * k);
    s += term;
    if (term < s * Real(1e-40)) break;
  }
  return s;
}

// Product formula for theta4 at q = e^{-t}.
inline Real theta4_product(const Real& t) {
  const Real q = exp(-t);
  Real p = 1;
  Real q2m = 1;
  for (int m = 1; m < 100000; ++m) {
    q2m *= q * q;
    const Real odd = q2m / q;
    p *= (1 - q2m) * (1 - odd) * (1 - odd);
    if (odd < Real(1e-40)) break;
  }
  return p;
}

// Smallest a, then b, then c among a >= b >= c >= d >= 0.
inline std::array<std::int64_t, 4> four_squares_lex(std::int64_t m) {
  for (std::int64_t a = 0; a * a <= m; ++a)
    for (std::int64_t b = 0; b <= a && a * a + b * b <= m; ++b)
      for (std::int64_t c = 0; c <= b && a * a + b * b + c * c <= m; ++c) {
        const std::int64_t rest = m - a * a - b * b - c * c;
        std::int64_t d = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest)));
        while (d * d > rest) --d;
        while ((d + 1) * (d + 1) <= rest) ++d;
        if (d * d == rest && d <= c) return {a, b, c, d};
      }
  throw std::logic_error("no four-square representation");
}

}  // namespace oracle
