#include <optional>
#include <utility>

#include "mcn/error.hpp"
#include "mcn/geometry.hpp"

namespace mcn {

void Polytope::add(AffineForm g) {
  if (g.arity() != arity_) throw InputError("constraint arity does not match polytope");
  constraints_.push_back(std::move(g));
}

Polytope Polytope::with(AffineForm g) const {
  Polytope p = *this;
  p.add(std::move(g));
  return p;
}

bool Polytope::contains(const Point& p) const {
  if (p.size() != arity_ || !in_unit_cube(p)) return false;
  for (const auto& g : constraints_)
    if (g.eval(p) > 0) return false;
  return true;
}

namespace {

// maximize c.y subject to A y <= b, y >= 0.
struct StandardLp {
  std::size_t vars = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;

  void add_row(std::vector<Rational> row, Rational b) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }
};

struct LpSolution {
  Rational value;
  std::vector<Rational> y;
};

// Dictionary form: basic_i = D[i][0] + sum_j D[i][1 + j] * nonbasic_j.
// Only the nonbasic columns are stored, so a pivot costs O(rows * vars).
class Dictionary {
public:
  explicit Dictionary(const StandardLp& lp) : vars_(lp.vars) {
    const std::size_t m = lp.rows.size();
    rows_.assign(m, std::vector<Rational>(vars_ + 1));
    basic_.resize(m);
    nonbasic_.resize(vars_);
    for (std::size_t j = 0; j < vars_; ++j) nonbasic_[j] = j;
    for (std::size_t i = 0; i < m; ++i) {
      basic_[i] = vars_ + i;
      rows_[i][0] = lp.rhs[i];
      for (std::size_t j = 0; j < vars_; ++j)
        if (lp.rows[i][j] != 0) rows_[i][1 + j] = -lp.rows[i][j];
    }
  }

  std::optional<LpSolution> solve(const std::vector<Rational>& c) {
    if (!feasible_start()) return std::nullopt;

    obj_.assign(nonbasic_.size() + 1, 0);
    for (std::size_t v = 0; v < vars_; ++v) {
      if (c[v] == 0) continue;
      if (auto q = column_of(v)) {
        obj_[1 + *q] += c[v];
      } else {
        const auto& row = rows_[row_of(v)];
        for (std::size_t j = 0; j < row.size(); ++j)
          if (row[j] != 0) obj_[j] += c[v] * row[j];
      }
    }
    run();

    LpSolution s;
    s.value = obj_[0];
    s.y.assign(vars_, 0);
    for (std::size_t i = 0; i < basic_.size(); ++i)
      if (basic_[i] < vars_) s.y[basic_[i]] = rows_[i][0];
    return s;
  }

private:
  // Phase 1 with a single auxiliary variable x0 added to every row.
  bool feasible_start() {
    std::size_t worst = basic_.size();
    for (std::size_t i = 0; i < basic_.size(); ++i)
      if (rows_[i][0] < 0 && (worst == basic_.size() || rows_[i][0] < rows_[worst][0])) worst = i;
    if (worst == basic_.size()) return true;

    const std::size_t aux = vars_ + basic_.size();
    aux_ = aux;
    nonbasic_.push_back(aux);
    for (auto& row : rows_) row.push_back(1);
    obj_.assign(nonbasic_.size() + 1, 0);
    obj_.back() = -1;
    pivot(worst, nonbasic_.size() - 1);
    run();
    if (obj_[0] < 0) return false;

    if (auto q = column_of(aux); !q) {
      std::size_t r = row_of(aux);
      std::size_t col = nonbasic_.size();
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (rows_[r][1 + j] != 0 && (col == nonbasic_.size() || nonbasic_[j] < nonbasic_[col])) col = j;
      }
      if (col == nonbasic_.size()) {
        // x0 = 0 identically; drop its row.
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
      } else {
        pivot(r, col);
      }
    }
    if (auto q = column_of(aux)) {
      for (auto& row : rows_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(1 + *q));
      nonbasic_.erase(nonbasic_.begin() + static_cast<std::ptrdiff_t>(*q));
    }
    aux_.reset();
    return true;
  }

  // Bland's rule: smallest-index improving variable enters, smallest-index
  // basic variable among tied ratios leaves (x0 first in phase 1).
  void run() {
    while (true) {
      std::size_t enter = nonbasic_.size();
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (obj_[1 + j] > 0 && (enter == nonbasic_.size() || nonbasic_[j] < nonbasic_[enter])) enter = j;
      }
      if (enter == nonbasic_.size()) return;
      std::size_t leave = basic_.size();
      Rational best;
      for (std::size_t i = 0; i < basic_.size(); ++i) {
        const Rational& a = rows_[i][1 + enter];
        if (a >= 0) continue;
        Rational ratio = rows_[i][0] / -a;
        bool take = leave == basic_.size() || ratio < best;
        if (!take && ratio == best) {
          if (aux_ && basic_[i] == *aux_) take = true;
          else if (!(aux_ && basic_[leave] == *aux_)) take = basic_[i] < basic_[leave];
        }
        if (take) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == basic_.size()) throw InternalError("unbounded linear program over a bounded region");
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    auto& R = rows_[r];
    const std::size_t col = 1 + e;
    Rational inv = 1 / R[col];
    // Solve row r for the entering variable; the leaving one takes its column.
    for (std::size_t j = 0; j < R.size(); ++j) {
      if (j == col) continue;
      if (R[j] != 0) R[j] = -R[j] * inv;
    }
    R[col] = inv;
    auto substitute = [&](std::vector<Rational>& row) {
      if (row[col] == 0) return;
      Rational f = row[col];
      row[col] = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (R[j] != 0) row[j] += f * R[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r) substitute(rows_[i]);
    substitute(obj_);
    std::swap(basic_[r], nonbasic_[e]);
  }

  std::optional<std::size_t> column_of(std::size_t v) const {
    for (std::size_t j = 0; j < nonbasic_.size(); ++j)
      if (nonbasic_[j] == v) return j;
    return std::nullopt;
  }

  std::size_t row_of(std::size_t v) const {
    for (std::size_t i = 0; i < basic_.size(); ++i)
      if (basic_[i] == v) return i;
    throw InternalError("variable is neither basic nor nonbasic");
  }

  std::size_t vars_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::optional<std::size_t> aux_;
};

std::optional<LpSolution> solve(const StandardLp& lp) {
  Dictionary d(lp);
  return d.solve(lp.objective);
}

Rational as_rational(Integer v) { return Rational(static_cast<long>(v)); }

// Rows g(x) <= 0 of P and the upper cube bounds, over variables x (and an
// optional trailing slack column that the caller fills in).
StandardLp base_program(const Polytope& P, std::size_t extra_vars) {
  StandardLp lp;
  std::size_t n = P.arity();
  lp.vars = n + extra_vars;
  for (const auto& g : P.constraints()) {
    std::vector<Rational> row(lp.vars);
    for (std::size_t j = 0; j < n; ++j) row[j] = as_rational(g.coeff(j));
    lp.add_row(std::move(row), -as_rational(g.constant()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row(lp.vars);
    row[j] = 1;
    lp.add_row(std::move(row), 1);
  }
  return lp;
}

}  // namespace

std::optional<LpOptimum> lp_optimize(const AffineForm& objective, const Polytope& P, Sense sense) {
  if (objective.arity() != P.arity()) throw InputError("objective arity does not match polytope");
  StandardLp lp = base_program(P, 0);
  std::size_t n = P.arity();
  lp.objective.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    Rational c = as_rational(objective.coeff(j));
    lp.objective[j] = sense == Sense::Maximize ? c : Rational(-c);
  }
  auto sol = solve(lp);
  if (!sol) return std::nullopt;
  LpOptimum out;
  out.witness = std::move(sol->y);
  out.value = objective.eval(out.witness);
  return out;
}

std::optional<Point> interior_point(const Polytope& P) {
  std::size_t n = P.arity();
  StandardLp lp = base_program(P, 1);
  // g(x) + t <= 0 for non-constant g; -x_j + t <= 0; x_j + t <= 1.
  for (std::size_t i = 0; i < P.constraints().size(); ++i)
    if (!P.constraints()[i].is_constant()) lp.rows[i][n] = 1;
  for (std::size_t j = 0; j < n; ++j) lp.rows[P.constraints().size() + j][n] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row(lp.vars);
    row[j] = -1;
    row[n] = 1;
    lp.add_row(std::move(row), 0);
  }
  lp.objective.assign(lp.vars, 0);
  lp.objective[n] = 1;
  auto sol = solve(lp);
  if (!sol || sol->value <= 0) return std::nullopt;
  sol->y.resize(n);
  return sol->y;
}

}  // namespace mcn
