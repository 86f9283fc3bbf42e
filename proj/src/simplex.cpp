#include "thetacert/simplex.hpp"

#include "thetacert/errors.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace thetacert {

std::string_view to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
    case LPStatus::IterLimit: return "IterLimit";
  }
  return "Unknown";
}

namespace {

enum class ColumnKind { Positive, Negative, Slack, Artificial };

struct Column {
  ColumnKind kind;
  std::size_t var = 0;  // original variable, or row for slacks / artificials
};

// Dense LU with partial pivoting of a small square matrix.
template <class T>
class LU {
 public:
  explicit LU(std::vector<std::vector<T>> a) : a_(std::move(a)), n_(a_.size()), perm_(n_) {
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n_; ++i)
        if (abs(a_[i][k]) > abs(a_[p][k])) p = i;
      if (a_[p][k] == 0) throw std::logic_error("singular simplex basis");
      std::swap(a_[p], a_[k]);
      std::swap(perm_[p], perm_[k]);
      for (std::size_t i = k + 1; i < n_; ++i) {
        const T f = a_[i][k] / a_[k][k];
        a_[i][k] = f;
        if (f == 0) continue;
        for (std::size_t j = k + 1; j < n_; ++j) a_[i][j] -= f * a_[k][j];
      }
    }
  }

  // B x = rhs.
  std::vector<T> solve(const std::vector<T>& rhs) const {
    std::vector<T> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      T s = rhs[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= a_[i][j] * y[j];
      y[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
      T s = y[i];
      for (std::size_t j = i + 1; j < n_; ++j) s -= a_[i][j] * y[j];
      y[i] = s / a_[i][i];
    }
    return y;
  }

  // B^T x = rhs.
  std::vector<T> solve_transposed(const std::vector<T>& rhs) const {
    std::vector<T> z(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      T s = rhs[i];
      for (std::size_t j = 0; j < i; ++j) s -= a_[j][i] * z[j];
      z[i] = s / a_[i][i];
    }
    for (std::size_t i = n_; i-- > 0;) {
      T s = z[i];
      for (std::size_t j = i + 1; j < n_; ++j) s -= a_[j][i] * z[j];
      z[i] = s;
    }
    std::vector<T> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = z[i];
    return x;
  }

 private:
  std::vector<std::vector<T>> a_;
  std::size_t n_;
  std::vector<std::size_t> perm_;
};

template <class T>
class Revised {
 public:
  Revised(const BasicDenseLP<T>& lp, const SimplexOptions& options)
      : lp_(lp), opt_(options), tol_(options.tolerance), feas_tol_(options.feasibility_tolerance) {
    build();
  }

  BasicSimplexResult<T> run();

 private:
  enum class Step { Optimal, Pivoted, Unbounded, Limit };

  void build();
  void factor();
  T dot_column(const std::vector<T>& y, std::size_t col) const;
  std::vector<T> column(std::size_t col) const;
  Step iterate(const std::vector<T>& cost, bool phase1);
  std::vector<T> row_duals(const std::vector<T>& cost) const;
  T objective_value(const std::vector<T>& cost) const;

  const BasicDenseLP<T>& lp_;
  SimplexOptions opt_;
  T tol_, feas_tol_;
  std::size_t m_ = 0;
  std::vector<Column> cols_;
  std::vector<std::vector<T>> a_;  // column-major over cols_
  std::vector<T> b_;
  std::vector<int> row_sign_;
  std::vector<std::size_t> identity_col_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::optional<LU<T>> lu_;
  std::vector<T> xb_;
  std::size_t pivots_ = 0;
  std::size_t streak_ = 0;
  std::size_t unbounded_col_ = 0;
  std::vector<T> unbounded_dir_;
};

template <class T>
void Revised<T>::build() {
  const std::size_t n = lp_.num_vars;
  m_ = lp_.rows.size();
  if (lp_.objective.size() != n || lp_.senses.size() != m_ || lp_.rhs.size() != m_ ||
      (!lp_.free_vars.empty() && lp_.free_vars.size() != n))
    throw ConfigError("DenseLP: inconsistent dimensions");
  for (const auto& row : lp_.rows)
    if (row.size() != n) throw ConfigError("DenseLP: row length mismatch");

  row_sign_.assign(m_, 1);
  for (std::size_t i = 0; i < m_; ++i)
    if (lp_.rhs[i] < 0) row_sign_[i] = -1;
  b_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) b_[i] = lp_.rhs[i] * row_sign_[i];

  auto push = [&](Column c, std::vector<T> entries) {
    cols_.push_back(c);
    a_.push_back(std::move(entries));
  };
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<T> e(m_);
    for (std::size_t i = 0; i < m_; ++i) e[i] = lp_.rows[i][j] * row_sign_[i];
    if (!lp_.free_vars.empty() && lp_.free_vars[j]) {
      std::vector<T> neg(m_);
      for (std::size_t i = 0; i < m_; ++i) neg[i] = -e[i];
      push({ColumnKind::Positive, j}, std::move(e));
      push({ColumnKind::Negative, j}, std::move(neg));
    } else {
      push({ColumnKind::Positive, j}, std::move(e));
    }
  }
  identity_col_.assign(m_, 0);
  std::vector<bool> has_identity(m_, false);
  for (std::size_t i = 0; i < m_; ++i) {
    if (lp_.senses[i] == RowSense::Equal) continue;
    const int s = (lp_.senses[i] == RowSense::LessEqual ? 1 : -1) * row_sign_[i];
    std::vector<T> e(m_, T(0));
    e[i] = s;
    if (s == 1) {
      identity_col_[i] = cols_.size();
      has_identity[i] = true;
    }
    push({ColumnKind::Slack, i}, std::move(e));
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (has_identity[i]) continue;
    std::vector<T> e(m_, T(0));
    e[i] = 1;
    identity_col_[i] = cols_.size();
    push({ColumnKind::Artificial, i}, std::move(e));
  }
  basis_ = identity_col_;
  is_basic_.assign(cols_.size(), false);
  for (auto c : basis_) is_basic_[c] = true;
}

template <class T>
void Revised<T>::factor() {
  std::vector<std::vector<T>> bm(m_, std::vector<T>(m_));
  for (std::size_t k = 0; k < m_; ++k)
    for (std::size_t i = 0; i < m_; ++i) bm[i][k] = a_[basis_[k]][i];
  lu_.emplace(std::move(bm));
  xb_ = lu_->solve(b_);
}

template <class T>
T Revised<T>::dot_column(const std::vector<T>& y, std::size_t col) const {
  const auto& c = a_[col];
  T s = 0;
  for (std::size_t i = 0; i < m_; ++i)
    if (c[i] != 0) s += y[i] * c[i];
  return s;
}

template <class T>
typename Revised<T>::Step Revised<T>::iterate(const std::vector<T>& cost, bool phase1) {
  if (pivots_ >= opt_.max_pivots) return Step::Limit;
  std::vector<T> cb(m_);
  for (std::size_t k = 0; k < m_; ++k) cb[k] = cost[basis_[k]];
  const std::vector<T> y = lu_->solve_transposed(cb);

  // Candidates in pricing order.
  std::vector<std::pair<T, std::size_t>> cand;
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (is_basic_[j]) continue;
    if (!phase1 && cols_[j].kind == ColumnKind::Artificial) continue;
    const T d = cost[j] - dot_column(y, j);
    if (d < -tol_) cand.emplace_back(d, j);
  }
  if (cand.empty()) return Step::Optimal;
  if (streak_ < opt_.degenerate_streak)
    std::stable_sort(cand.begin(), cand.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  for (const auto& [d, q] : cand) {
    const std::vector<T> u = lu_->solve(a_[q]);
    std::optional<std::size_t> leave;
    T best = 0;
    for (std::size_t k = 0; k < m_; ++k) {
      if (!(u[k] > tol_)) continue;
      const T ratio = (xb_[k] > 0 ? xb_[k] : T(0)) / u[k];
      if (!leave || ratio < best || (ratio == best && basis_[k] < basis_[*leave])) {
        leave = k;
        best = ratio;
      }
    }
    if (!leave) {
      // Phase I is bounded below by zero; a column without a pivot there
      // only reflects roundoff in its reduced cost.
      if (phase1) continue;
      unbounded_col_ = q;
      unbounded_dir_ = u;
      return Step::Unbounded;
    }
    streak_ = best > tol_ ? 0 : streak_ + 1;
    is_basic_[basis_[*leave]] = false;
    basis_[*leave] = q;
    is_basic_[q] = true;
    ++pivots_;
    factor();
    return Step::Pivoted;
  }
  return Step::Optimal;
}

template <class T>
std::vector<T> Revised<T>::row_duals(const std::vector<T>& cost) const {
  std::vector<T> cb(m_);
  for (std::size_t k = 0; k < m_; ++k) cb[k] = cost[basis_[k]];
  std::vector<T> y = lu_->solve_transposed(cb);
  for (std::size_t i = 0; i < m_; ++i) y[i] *= row_sign_[i];
  return y;
}

template <class T>
T Revised<T>::objective_value(const std::vector<T>& cost) const {
  T s = 0;
  for (std::size_t k = 0; k < m_; ++k) s += cost[basis_[k]] * xb_[k];
  return s;
}

template <class T>
BasicSimplexResult<T> Revised<T>::run() {
  BasicSimplexResult<T> result;
  const std::size_t n = lp_.num_vars;
  factor();

  std::vector<T> phase1(cols_.size(), T(0));
  bool any_art = false;
  for (std::size_t j = 0; j < cols_.size(); ++j)
    if (cols_[j].kind == ColumnKind::Artificial) {
      phase1[j] = 1;
      any_art = true;
    }
  if (any_art) {
    for (;;) {
      const Step s = iterate(phase1, true);
      if (s == Step::Optimal) break;
      if (s == Step::Limit) {
        result.pivots = pivots_;
        return result;
      }
    }
    if (objective_value(phase1) > feas_tol_) {
      result.status = LPStatus::Infeasible;
      result.duals = row_duals(phase1);
      result.pivots = pivots_;
      return result;
    }
    // Pivot zero-level artificials out where a structural column allows it.
    for (std::size_t k = 0; k < m_; ++k) {
      if (cols_[basis_[k]].kind != ColumnKind::Artificial) continue;
      std::vector<T> ek(m_, T(0));
      ek[k] = 1;
      const std::vector<T> row = lu_->solve_transposed(ek);
      std::optional<std::size_t> best;
      T best_abs = 0;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (is_basic_[j] || cols_[j].kind == ColumnKind::Artificial) continue;
        const T v = abs(dot_column(row, j));
        if (v > tol_ && v > best_abs) {
          best = j;
          best_abs = v;
        }
      }
      if (!best) continue;
      is_basic_[basis_[k]] = false;
      basis_[k] = *best;
      is_basic_[*best] = true;
      factor();
    }
  }

  std::vector<T> cost(cols_.size(), T(0));
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (cols_[j].kind == ColumnKind::Positive) cost[j] = lp_.objective[cols_[j].var];
    if (cols_[j].kind == ColumnKind::Negative) cost[j] = -lp_.objective[cols_[j].var];
  }
  streak_ = 0;
  for (;;) {
    const Step s = iterate(cost, false);
    if (s == Step::Optimal) break;
    if (s == Step::Limit) {
      result.pivots = pivots_;
      return result;
    }
    if (s == Step::Unbounded) {
      result.status = LPStatus::Unbounded;
      result.ray.assign(n, T(0));
      auto add = [&](std::size_t col, const T& amount) {
        if (cols_[col].kind == ColumnKind::Positive) result.ray[cols_[col].var] += amount;
        if (cols_[col].kind == ColumnKind::Negative) result.ray[cols_[col].var] -= amount;
      };
      add(unbounded_col_, T(1));
      for (std::size_t k = 0; k < m_; ++k) add(basis_[k], -unbounded_dir_[k]);
      result.pivots = pivots_;
      return result;
    }
  }

  result.status = LPStatus::Optimal;
  result.x.assign(n, T(0));
  for (std::size_t k = 0; k < m_; ++k) {
    const auto& c = cols_[basis_[k]];
    if (c.kind == ColumnKind::Positive) result.x[c.var] += xb_[k];
    if (c.kind == ColumnKind::Negative) result.x[c.var] -= xb_[k];
  }
  result.objective = lp_.offset;
  for (std::size_t j = 0; j < n; ++j) result.objective += lp_.objective[j] * result.x[j];
  result.duals = row_duals(cost);
  result.dual_objective = lp_.offset;
  for (std::size_t i = 0; i < m_; ++i) result.dual_objective += lp_.rhs[i] * result.duals[i];
  result.duality_gap = abs(result.objective - result.dual_objective);
  result.pivots = pivots_;
  return result;
}

}  // namespace

template <class T>
BasicSimplexResult<T> solve_dense_lp(const BasicDenseLP<T>& lp, const SimplexOptions& options) {
  Revised<T> solver(lp, options);
  return solver.run();
}

template BasicSimplexResult<Real> solve_dense_lp(const BasicDenseLP<Real>&, const SimplexOptions&);
template BasicSimplexResult<HighReal> solve_dense_lp(const BasicDenseLP<HighReal>&, const SimplexOptions&);

}  // namespace thetacert
