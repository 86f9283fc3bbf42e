#include "thetacert/rotation.hpp"

#include "thetacert/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace thetacert {

namespace {

Eigen::MatrixXd as_eigen(const RotationMatrix& u) {
  Eigen::MatrixXd m(u.dim, u.dim);
  for (std::size_t i = 0; i < u.dim; ++i)
    for (std::size_t j = 0; j < u.dim; ++j) m(i, j) = u(i, j);
  return m;
}

RotationMatrix from_eigen(const Eigen::MatrixXd& m, std::uint64_t seed) {
  RotationMatrix u;
  u.dim = static_cast<std::size_t>(m.rows());
  u.seed = seed;
  u.entries.resize(u.dim * u.dim);
  for (std::size_t i = 0; i < u.dim; ++i)
    for (std::size_t j = 0; j < u.dim; ++j) u.entries[i * u.dim + j] = m(i, j);
  return u;
}

}  // namespace

std::vector<double> RotationMatrix::apply(std::span<const double> x) const {
  if (x.size() != dim) throw std::invalid_argument("rotation dimension mismatch");
  std::vector<double> y(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) y[i] += entries[i * dim + j] * x[j];
  return y;
}

double RotationMatrix::orthogonality_error() const {
  const Eigen::MatrixXd u = as_eigen(*this);
  const Eigen::MatrixXd e = u.transpose() * u - Eigen::MatrixXd::Identity(dim, dim);
  return e.cwiseAbs().maxCoeff();
}

RotationMatrix random_rotation(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("rotation dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return from_eigen(q, seed);
}

RotationMatrix transport_rotation(std::span<const double> from, std::span<const double> to) {
  if (from.size() != to.size() || from.empty()) throw DomainError("transport: dimension mismatch");
  const std::size_t n = from.size();
  Eigen::Map<const Eigen::VectorXd> a(from.data(), n), b(to.data(), n);
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DomainError("transport: zero vector");
  if (std::abs(na - nb) > 1e-9 * std::max(na, nb)) throw DomainError("transport: norms differ");
  const Eigen::VectorXd v = a / na - b / nb;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  const double vv = v.squaredNorm();
  if (vv > 1e-30) h -= 2.0 * v * v.transpose() / vv;
  return from_eigen(h, 0);
}

std::array<std::int64_t, 4> four_squares(std::int64_t m) {
  if (m < 0) throw DomainError("four_squares requires m >= 0");
  auto isqrt = [](std::int64_t x) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
  };
  // Smallest a first; for that a the smallest b, then c. Lower bounds come
  // from the remaining sum being split over at most the remaining terms.
  for (std::int64_t a = 0; a <= isqrt(m); ++a) {
    const std::int64_t ra = m - a * a;
    if (ra > 3 * a * a) continue;
    for (std::int64_t b = 0; b <= a && b * b <= ra; ++b) {
      const std::int64_t rb = ra - b * b;
      if (rb > 2 * b * b) continue;
      for (std::int64_t c = 0; c <= b && c * c <= rb; ++c) {
        const std::int64_t d2 = rb - c * c;
        if (d2 > c * c) continue;
        const std::int64_t d = isqrt(d2);
        if (d * d == d2) return {a, b, c, d};
      }
    }
  }
  throw std::logic_error("four_squares: no representation found");
}

ShellTransport transport_to_integer_point(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 4) throw DomainError("shell transport needs n >= 4");
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  const double m = std::round(norm2);
  if (m < 1.0 || std::abs(norm2 - m) > 1e-9 * std::max(1.0, m))
    throw DomainError("shell transport needs a positive integer squared norm");
  const auto rep = four_squares(static_cast<std::int64_t>(m));
  ShellTransport out;
  out.lattice_point.assign(n, 0);
  std::vector<double> z(n, 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    out.lattice_point[i] = rep[i];
    z[i] = static_cast<double>(rep[i]);
  }
  out.rotation = transport_rotation(z, x);
  return out;
}

RotatedLattice::RotatedLattice(Lattice parent, RotationMatrix rotation)
    : parent_(std::move(parent)), rotation_(std::move(rotation)) {
  if (rotation_.dim != parent_.dim()) throw ConfigError("rotation dimension mismatch");
}

std::vector<double> RotatedLattice::basis() const {
  const std::size_t n = parent_.dim();
  LatticeVectors unit;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int64_t> e(n, 0);
    e[j] = 1;
    unit.coefficients.push_back(std::move(e));
  }
  const auto cols = embed(parent_, unit);
  std::vector<double> out(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto rotated = rotation_.apply(cols[j]);
    for (std::size_t i = 0; i < n; ++i) out[i * n + j] = rotated[i];
  }
  return out;
}

std::vector<double> RotatedLattice::gram() const {
  const std::size_t n = parent_.dim();
  const auto b = basis();
  std::vector<double> g(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g[i * n + j] += b[k * n + i] * b[k * n + j];
  return g;
}

std::vector<std::vector<double>> RotatedLattice::points(std::int64_t max_norm,
                                                        std::uint64_t node_budget) const {
  const auto vectors = enumerate_vectors(parent_, max_norm, node_budget);
  auto pts = embed(parent_, vectors);
  for (auto& p : pts) p = rotation_.apply(p);
  return pts;
}

ShellSeries RotatedLattice::shells(std::int64_t max_norm, std::uint64_t node_budget) const {
  ShellSeries s;
  s.dim = parent_.dim();
  s.max_norm = max_norm;
  s.counts.assign(static_cast<std::size_t>(max_norm) + 1, 0);
  s.lattice_label = "U(" + parent_.name() + ")";
  for (const auto& p : points(max_norm, node_budget)) {
    double r2 = 0.0;
    for (double v : p) r2 += v * v;
    const double m = std::round(r2);
    if (std::abs(r2 - m) > 1e-9 * std::max(1.0, m))
      throw std::logic_error("rotated norm drifted from an integer");
    ++s.counts[static_cast<std::size_t>(m)];
  }
  return s;
}

}  // namespace thetacert
