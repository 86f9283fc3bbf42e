#include "thetacert/shells.hpp"

#include "thetacert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace thetacert {

std::int64_t ShellSeries::count(std::int64_t m) const {
  if (m < 0 || m > max_norm) throw std::out_of_range("shell index beyond max_norm");
  return counts[static_cast<std::size_t>(m)];
}

std::int64_t ShellSeries::cumulative(std::int64_t m) const {
  if (m < 0 || m > max_norm) throw std::out_of_range("shell index beyond max_norm");
  return std::accumulate(counts.begin(), counts.begin() + m + 1, std::int64_t{0});
}

ShellSeries ShellSeries::truncated(std::int64_t m) const {
  if (m < 0 || m > max_norm) throw std::out_of_range("shell index beyond max_norm");
  ShellSeries out = *this;
  out.max_norm = m;
  out.counts.resize(static_cast<std::size_t>(m) + 1);
  return out;
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw BudgetExceeded("shell count overflows int64");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw BudgetExceeded("shell count overflows int64");
  return r;
}

std::vector<std::int64_t> integer_gram(const Lattice& lattice) {
  if (!is_integral(lattice))
    throw ConfigError("shell enumeration requires an integral lattice");
  const std::size_t n = lattice.dim();
  std::vector<std::int64_t> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Integer& v = lattice.gram()(i, j).get_num();
      if (!v.fits_slong_p()) throw ConfigError("Gram entry does not fit in 64 bits");
      g[i * n + j] = v.get_si();
    }
  return g;
}

// Fincke-Pohst quadratic form: Q(z) = sum_i q_ii (z_i + sum_{j>i} q_ij z_j)^2,
// computed exactly and then rounded.
std::vector<double> fincke_pohst_form(const RationalMatrix& gram) {
  const std::size_t n = gram.rows();
  RationalMatrix q = gram;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out[i * n + j] = q(i, j).get_d();
  return out;
}

// Visits every coefficient vector with exact norm <= max_norm. Pruning runs
// in double with bounds widened outward; membership uses the exact integer
// norm, so widening can only add candidates, never lose points.
template <class Visitor>
void fincke_pohst(const Lattice& lattice, std::int64_t max_norm, std::uint64_t budget,
                  Visitor&& visit) {
  const std::size_t n = lattice.dim();
  const auto g = integer_gram(lattice);
  const auto q = fincke_pohst_form(lattice.gram());
  std::vector<std::int64_t> z(n, 0);
  std::uint64_t nodes = 0;
  const double bound = static_cast<double>(max_norm);

  // exact_tail: norm of (0, ..., 0, z_{i+1}, ..., z_{n-1}).
  std::function<void(std::size_t, double, std::int64_t)> descend =
      [&](std::size_t i, double remaining, std::int64_t exact_tail) {
        double center = 0.0;
        std::int64_t lin = 0;
        for (std::size_t j = i + 1; j < n; ++j) {
          center -= q[i * n + j] * static_cast<double>(z[j]);
          lin += g[i * n + j] * z[j];
        }
        const double radius = std::sqrt(std::max(remaining, 0.0) / q[i * n + i]);
        const double slack = 1e-7 * (1.0 + std::abs(center) + radius);
        const auto lo = static_cast<std::int64_t>(std::ceil(center - radius - slack));
        const auto hi = static_cast<std::int64_t>(std::floor(center + radius + slack));
        for (std::int64_t v = lo; v <= hi; ++v) {
          if (++nodes > budget)
            throw BudgetExceeded("enumeration exceeded the node budget of " +
                                 std::to_string(budget));
          z[i] = v;
          const std::int64_t exact = exact_tail + g[i * n + i] * v * v + 2 * v * lin;
          if (i == 0) {
            if (exact <= max_norm) visit(z, exact);
            continue;
          }
          const double d = static_cast<double>(v) - center;
          descend(i - 1, remaining - q[i * n + i] * d * d, exact);
        }
        z[i] = 0;
      };
  descend(n - 1, bound, 0);
}

ShellSeries shells_fincke_pohst(const Lattice& lattice, std::int64_t max_norm,
                                std::uint64_t budget) {
  ShellSeries s;
  s.dim = lattice.dim();
  s.max_norm = max_norm;
  s.counts.assign(static_cast<std::size_t>(max_norm) + 1, 0);
  s.lattice_label = lattice.name();
  fincke_pohst(lattice, max_norm, budget,
               [&](const std::vector<std::int64_t>&, std::int64_t norm) { ++s.counts[norm]; });
  return s;
}

// ---------------------------------------------------------------------------
// Coset route. K = (+)_i k_i Z e_i is the largest coordinate-cubic sublattice
// of L. Each coset of K is a product of 1-D progressions c_i + k_i Z, so its
// shell series is a convolution of 1-D series.

struct CosetPlan {
  std::vector<Rational> steps;          // k_i
  RationalMatrix reduced;               // lower-triangular basis of K in L-coordinates
  std::uint64_t index = 0;
};

Integer lcm_den(const Rational& a, const Rational& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  return out;
}

// Integer column reduction to lower-triangular form with positive diagonal.
void lower_triangularize(std::vector<std::vector<Integer>>& cols, std::size_t n) {
  // cols[c][r] = entry (r, c)
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      while (sgn(cols[c][r]) != 0) {
        if (sgn(cols[r][r]) == 0 || abs(cols[c][r]) < abs(cols[r][r])) std::swap(cols[r], cols[c]);
        Integer f = cols[c][r] / cols[r][r];
        for (std::size_t k = 0; k < n; ++k) cols[c][k] -= f * cols[r][k];
      }
    }
    if (sgn(cols[r][r]) < 0)
      for (auto& e : cols[r]) e = -e;
  }
}

std::optional<CosetPlan> plan_cosets(const Lattice& lattice, std::uint64_t max_index) {
  if (!lattice.basis()) return std::nullopt;
  const RationalMatrix& basis = *lattice.basis();
  const std::size_t n = lattice.dim();
  auto inv = basis.inverse();
  if (!inv) return std::nullopt;

  CosetPlan plan;
  std::vector<std::vector<Integer>> cols(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    // Coordinates of e_i in the lattice basis: column i of basis^{-1}.
    Integer den = 1, g = 0;
    for (std::size_t r = 0; r < n; ++r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), (*inv)(r, i).get_den_mpz_t());
    for (std::size_t r = 0; r < n; ++r) {
      Rational scaled = (*inv)(r, i) * den;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_num_mpz_t());
    }
    Rational step(den, g);
    step.canonicalize();
    plan.steps.push_back(step);
    for (std::size_t r = 0; r < n; ++r) {
      Rational entry = (*inv)(r, i) * step;
      cols[i][r] = entry.get_num();
    }
  }
  lower_triangularize(cols, n);
  Integer index = 1;
  for (std::size_t r = 0; r < n; ++r) index *= cols[r][r];
  if (index > Integer(static_cast<unsigned long>(max_index))) return std::nullopt;
  plan.index = index.get_ui();
  plan.reduced = RationalMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) plan.reduced(r, c) = cols[c][r];
  return plan;
}

using SparseSeries = std::vector<std::pair<std::int64_t, std::int64_t>>;  // (scaled norm, count)

SparseSeries progression_series(const Rational& offset, const Rational& step, std::int64_t max_norm,
                                const Integer& scale) {
  std::map<std::int64_t, std::int64_t> acc;
  const double reach = std::sqrt(static_cast<double>(max_norm));
  const double s = step.get_d(), c = offset.get_d();
  const auto jlo = static_cast<std::int64_t>(std::floor((-reach - c) / s)) - 1;
  const auto jhi = static_cast<std::int64_t>(std::ceil((reach - c) / s)) + 1;
  const Rational limit = Rational(max_norm);
  for (std::int64_t j = jlo; j <= jhi; ++j) {
    Rational x = offset + step * Rational(static_cast<long>(j));
    Rational sq = x * x;
    if (sq > limit) continue;
    Rational scaled = sq * scale;
    if (scaled.get_den() != 1) throw std::logic_error("scaled 1-D norm is not an integer");
    acc[scaled.get_num().get_si()] += 1;
  }
  return {acc.begin(), acc.end()};
}

ShellSeries shells_coset(const Lattice& lattice, const CosetPlan& plan, std::int64_t max_norm,
                         std::uint64_t budget) {
  integer_gram(lattice);  // integrality check
  const std::size_t n = lattice.dim();
  const RationalMatrix& basis = *lattice.basis();

  // Canonical 1-D progression per coordinate, grouped across cosets.
  using Key = std::vector<std::pair<Rational, Rational>>;
  std::map<Key, std::int64_t> multiplicity;
  std::vector<std::int64_t> digit(n, 0);
  for (std::uint64_t rep = 0; rep < plan.index; ++rep) {
    Key key;
    key.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational v = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (digit[j] != 0) v += basis(i, j) * Rational(static_cast<long>(digit[j]));
      const Rational& k = plan.steps[i];
      Rational q = v / k;
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      Rational c = v - k * Rational(fl);
      Rational mirrored = k - c;
      if (sgn(c) != 0 && mirrored < c) c = mirrored;
      key.emplace_back(c, k);
    }
    std::sort(key.begin(), key.end());
    ++multiplicity[key];
    for (std::size_t j = 0; j < n; ++j) {  // mixed-radix increment over the box
      if (++digit[j] < plan.reduced(j, j).get_num().get_si()) break;
      digit[j] = 0;
    }
  }

  Integer scale = 1;
  for (const auto& [key, mult] : multiplicity)
    for (const auto& [c, k] : key) {
      Integer l = lcm_den(c, k);
      Integer l2 = l * l;
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), l2.get_mpz_t());
    }
  if (!scale.fits_slong_p()) throw BudgetExceeded("coset norm denominator too large");
  const std::int64_t scale_i = scale.get_si();
  const std::int64_t top = checked_mul(max_norm, scale_i);

  std::map<std::pair<Rational, Rational>, SparseSeries> series_cache;
  std::vector<std::int64_t> total(static_cast<std::size_t>(top) + 1, 0);
  std::uint64_t work = 0;
  for (const auto& [key, mult] : multiplicity) {
    std::vector<std::int64_t> poly(static_cast<std::size_t>(top) + 1, 0);
    poly[0] = 1;
    std::int64_t reach = 0;  // highest nonzero index so far
    for (const auto& ck : key) {
      auto it = series_cache.find(ck);
      if (it == series_cache.end())
        it = series_cache.emplace(ck, progression_series(ck.first, ck.second, max_norm, scale)).first;
      const SparseSeries& s = it->second;
      work += static_cast<std::uint64_t>(reach + 1) * s.size();
      if (work > budget)
        throw BudgetExceeded("coset convolution exceeded the node budget of " + std::to_string(budget));
      std::vector<std::int64_t> next(poly.size(), 0);
      std::int64_t next_reach = 0;
      for (std::int64_t a = 0; a <= reach; ++a) {
        if (poly[a] == 0) continue;
        for (const auto& [idx, cnt] : s) {
          if (a + idx > top) break;
          next[a + idx] = checked_add(next[a + idx], checked_mul(poly[a], cnt));
          next_reach = std::max(next_reach, a + idx);
        }
      }
      poly.swap(next);
      reach = next_reach;
    }
    for (std::int64_t a = 0; a <= reach; ++a)
      if (poly[a] != 0) total[a] = checked_add(total[a], checked_mul(poly[a], mult));
  }

  ShellSeries out;
  out.dim = n;
  out.max_norm = max_norm;
  out.lattice_label = lattice.name();
  out.counts.assign(static_cast<std::size_t>(max_norm) + 1, 0);
  for (std::int64_t a = 0; a <= top; ++a) {
    if (total[a] == 0) continue;
    if (a % scale_i != 0) throw std::logic_error("non-integral norm in an integral lattice");
    out.counts[a / scale_i] = total[a];
  }
  return out;
}

}  // namespace

ShellSeries enumerate_shells(const Lattice& lattice, std::int64_t max_norm,
                             const EnumerationOptions& options) {
  if (max_norm < 0) throw ConfigError("max_norm must be nonnegative");
  integer_gram(lattice);
  switch (options.method) {
    case EnumerationMethod::FinckePohst:
      return shells_fincke_pohst(lattice, max_norm, options.node_budget);
    case EnumerationMethod::CosetConvolution: {
      auto plan = plan_cosets(lattice, std::numeric_limits<std::uint64_t>::max());
      if (!plan) throw ConfigError("coset enumeration needs a rational basis");
      return shells_coset(lattice, *plan, max_norm, options.node_budget);
    }
    case EnumerationMethod::Auto:
      break;
  }
  if (auto plan = plan_cosets(lattice, options.max_coset_index))
    return shells_coset(lattice, *plan, max_norm, options.node_budget);
  return shells_fincke_pohst(lattice, max_norm, options.node_budget);
}

LatticeVectors enumerate_vectors(const Lattice& lattice, std::int64_t max_norm,
                                 std::uint64_t node_budget) {
  if (max_norm < 0) throw ConfigError("max_norm must be nonnegative");
  LatticeVectors out;
  fincke_pohst(lattice, max_norm, node_budget,
               [&](const std::vector<std::int64_t>& z, std::int64_t norm) {
                 out.coefficients.push_back(z);
                 out.norms.push_back(norm);
               });
  return out;
}

std::vector<std::vector<double>> embed(const Lattice& lattice, const LatticeVectors& vectors) {
  const std::size_t n = lattice.dim();
  std::vector<double> b(n * n, 0.0);
  if (lattice.basis()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b[i * n + j] = (*lattice.basis())(i, j).get_d();
  } else {
    // Upper Cholesky factor R with gram = R^T R; its columns realize the Gram.
    std::vector<double> g(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i * n + j] = lattice.gram()(i, j).get_d();
    for (std::size_t i = 0; i < n; ++i) {
      double d = g[i * n + i];
      for (std::size_t k = 0; k < i; ++k) d -= b[k * n + i] * b[k * n + i];
      b[i * n + i] = std::sqrt(d);
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = g[i * n + j];
        for (std::size_t k = 0; k < i; ++k) s -= b[k * n + i] * b[k * n + j];
        b[i * n + j] = s / b[i * n + i];
      }
    }
  }
  std::vector<std::vector<double>> out;
  out.reserve(vectors.coefficients.size());
  for (const auto& z : vectors.coefficients) {
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x[i] += b[i * n + j] * static_cast<double>(z[j]);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace thetacert
