#include "hodyn/symcore/linalg.hpp"

#include <algorithm>
#include <set>

#include "hodyn/error.hpp"

namespace hodyn::sym {

ExprMatrix ExprMatrix::identity(std::size_t n) {
  ExprMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr(1);
  return m;
}

ExprMatrix jacobian(std::span<const Expr> f, std::span<const std::string> w) {
  ExprMatrix m(f.size(), w.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = partial(f[i], w[j]);
  return m;
}

ExprMatrix hessian(const Expr& f, std::span<const std::string> w) { return mixed_hessian(f, w, w); }

ExprMatrix mixed_hessian(const Expr& f, std::span<const std::string> row_vars,
                         std::span<const std::string> col_vars) {
  ExprMatrix m(row_vars.size(), col_vars.size());
  for (std::size_t i = 0; i < row_vars.size(); ++i) {
    Expr fi = partial(f, row_vars[i]);
    for (std::size_t j = 0; j < col_vars.size(); ++j) m(i, j) = partial(fi, col_vars[j]);
  }
  return m;
}

namespace {

std::size_t complexity(const Expr& e) { return e.num().size() + e.den().size(); }

// Row index in [from, rows) holding the preferred pivot of column col.
std::optional<std::size_t> pick_pivot(const std::vector<std::vector<Expr>>& a, std::size_t from,
                                      std::size_t col) {
  std::optional<std::size_t> best;
  for (std::size_t i = from; i < a.size(); ++i) {
    const Expr& e = a[i][col];
    if (e.is_zero()) continue;
    if (!best) {
      best = i;
      continue;
    }
    const Expr& b = a[*best][col];
    bool ec = e.is_constant(), bc = b.is_constant();
    if ((ec && !bc) || (ec == bc && complexity(e) < complexity(b))) best = i;
  }
  return best;
}

struct Elimination {
  std::vector<std::vector<Expr>> rows;
  std::vector<std::size_t> pivot_cols;  // pivot column of row r, for r < rank
  std::vector<Expr> pivots;             // pivot values before row scaling
  int swaps = 0;
};

// Gauss-Jordan on the first ncols columns; extra columns ride along.
Elimination eliminate(std::vector<std::vector<Expr>> a, std::size_t ncols, bool reduce_above) {
  Elimination out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < a.size(); ++col) {
    auto p = pick_pivot(a, r, col);
    if (!p) continue;
    if (*p != r) {
      std::swap(a[*p], a[r]);
      ++out.swaps;
    }
    Expr piv = a[r][col];
    out.pivots.push_back(piv);
    out.pivot_cols.push_back(col);
    for (auto& x : a[r]) x = x / piv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][col].is_zero()) continue;
      if (!reduce_above && i < r) continue;
      Expr f = a[i][col];
      for (std::size_t j = 0; j < a[i].size(); ++j)
        if (!a[r][j].is_zero()) a[i][j] = a[i][j] - f * a[r][j];
    }
    ++r;
  }
  out.rows = std::move(a);
  return out;
}

std::vector<std::vector<Expr>> to_rows(const ExprMatrix& m) {
  std::vector<std::vector<Expr>> a(m.rows(), std::vector<Expr>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

std::size_t matrix_rank(const ExprMatrix& m) {
  return eliminate(to_rows(m), m.cols(), false).pivot_cols.size();
}

Expr det(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of a non-square matrix");
  if (m.rows() == 0) return Expr(1);
  auto el = eliminate(to_rows(m), m.cols(), false);
  if (el.pivot_cols.size() < m.rows()) return {};
  Expr d = (el.swaps % 2) ? Expr(-1) : Expr(1);
  for (const auto& p : el.pivots) d = d * p;
  return d;
}

std::optional<Asymmetry> asymmetry_witness(const ExprMatrix& m) {
  if (m.rows() != m.cols()) return Asymmetry{0, 0, Expr(1)};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      Expr d = m(i, j) - m(j, i);
      if (!d.is_zero()) return Asymmetry{i, j, d};
    }
  return std::nullopt;
}

LinearSolution linear_solve(std::span<const Expr> equations, std::span<const std::string> unknowns) {
  const std::size_t n = unknowns.size();
  const std::set<std::string> unk(unknowns.begin(), unknowns.end());
  std::vector<std::vector<Expr>> a;
  for (const auto& eq : equations) {
    for (const auto& u : unknowns)
      if (eq.den().depends_on(u))
        throw ObstructionError("unknown '" + u + "' occurs in a denominator: " + eq.str());
    std::vector<Poly> coeff(n);
    Poly rest;
    for (const auto& t : eq.num().terms()) {
      int hit = -1, total = 0;
      for (std::size_t j = 0; j < n; ++j) {
        int d = t.mono.degree(unknowns[j]);
        if (d) {
          total += d;
          hit = static_cast<int>(j);
        }
      }
      if (total > 1) throw ObstructionError("equation is not affine in the unknowns: " + eq.str());
      Poly term = Poly::monomial(hit < 0 ? t.mono : t.mono.without(unknowns[hit]), t.coeff);
      if (hit < 0)
        rest = rest + term;
      else
        coeff[hit] = coeff[hit] + term;
    }
    std::vector<Expr> row;
    row.reserve(n + 1);
    for (auto& c : coeff) row.push_back(Expr::fraction(std::move(c), eq.den()));
    row.push_back(-Expr::fraction(std::move(rest), eq.den()));
    a.push_back(std::move(row));
  }

  auto el = eliminate(std::move(a), n, true);
  LinearSolution sol;
  std::vector<bool> is_pivot(n, false);
  for (auto c : el.pivot_cols) is_pivot[c] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) sol.free.push_back(unknowns[j]);
  for (std::size_t r = 0; r < el.rows.size(); ++r) {
    const auto& row = el.rows[r];
    if (r < el.pivot_cols.size()) {
      Expr value = row[n];
      for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j] && !row[j].is_zero()) value = value - row[j] * Expr::variable(unknowns[j]);
      sol.solved.emplace(unknowns[el.pivot_cols[r]], value);
    } else if (!row[n].is_zero()) {
      sol.residual.push_back(-row[n]);
    }
  }
  for (const auto& p : el.pivots)
    if (!p.is_constant()) sol.assumptions.push_back(p);
  return sol;
}

}  // namespace hodyn::sym
