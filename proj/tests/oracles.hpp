#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "mcn/affine.hpp"
#include "mcn/geometry.hpp"
#include "mcn/pwl.hpp"
#include "mcn/rational.hpp"
#include "mcn/term.hpp"

namespace oracle {

using mcn::AffineForm;
using mcn::Integer;
using mcn::Point;
using mcn::Rational;

// All points of [0,1]^n whose coordinates are k/den.
inline std::vector<Point> grid(std::size_t n, long den) {
  std::vector<Point> out;
  Point p(n);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == n) {
      out.push_back(p);
      return;
    }
    for (long k = 0; k <= den; ++k) {
      p[i] = Rational(k, den);
      p[i].canonicalize();
      go(i + 1);
    }
  };
  go(0);
  return out;
}

// Every rational in [0,1] with denominator <= den, without repeats.
inline std::vector<Rational> unit_rationals(long den) {
  std::vector<Rational> out;
  for (long q = 1; q <= den; ++q)
    for (long p = 0; p <= q; ++p) {
      Rational r(p, q);
      r.canonicalize();
      if (r.get_den() == q) out.push_back(r);
    }
  return out;
}

// Solves A x = b by Gauss-Jordan elimination; empty when singular.
inline std::optional<Point> solve_square(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && A[r][c] == 0) ++r;
    if (r == n) return std::nullopt;
    std::swap(A[r], A[c]);
    std::swap(b[r], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || A[i][c] == 0) continue;
      Rational f = A[i][c] / A[c][c];
      for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
      b[i] -= f * b[c];
    }
  }
  Point x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

// Best objective value over the vertices of P, found by intersecting every
// n-subset of constraint hyperplanes (cube facets included). Empty when P is
// empty.
inline std::optional<Rational> vertex_optimum(const AffineForm& obj, const mcn::Polytope& P, bool maximize) {
  const std::size_t n = P.arity();
  std::vector<AffineForm> all = P.constraints();
  for (std::size_t j = 0; j < n; ++j) {
    AffineForm x = AffineForm::of_variable(n, j + 1);
    all.push_back(-x);
    all.push_back(x.plus_constant(-1));
  }
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
      std::vector<Rational> b(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A[i][j] = Rational(static_cast<long>(all[pick[i]].coeff(j)));
        b[i] = Rational(static_cast<long>(-all[pick[i]].constant()));
      }
      auto v = solve_square(A, b);
      if (!v || !P.contains(*v)) return;
      Rational val = obj.eval(*v);
      if (!best || (maximize ? val > *best : val < *best)) best = val;
      return;
    }
    for (std::size_t i = from; i < all.size(); ++i) {
      pick[depth] = i;
      go(depth + 1, i + 1);
    }
  };
  go(0, 0);
  return best;
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  Integer uniform(Integer lo, Integer hi) { return std::uniform_int_distribution<Integer>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational unit(long max_den) {
    long q = static_cast<long>(uniform(1, max_den));
    Rational r(static_cast<long>(uniform(0, q)), q);
    r.canonicalize();
    return r;
  }

  Point point(std::size_t n, long max_den) {
    Point p(n);
    for (auto& c : p) c = unit(max_den);
    return p;
  }

  AffineForm form(std::size_t n, Integer bound) {
    std::vector<Integer> cs(n);
    for (auto& c : cs) c = uniform(-bound, bound);
    return AffineForm(uniform(-bound, bound), std::move(cs));
  }

  AffineForm nonconstant_form(std::size_t n, Integer bound) {
    while (true) {
      AffineForm g = form(n, bound);
      if (!g.is_constant()) return g;
    }
  }

  mcn::Term term(std::size_t n, int depth) {
    using mcn::Term;
    if (depth == 0 || uniform(0, 4) == 0) {
      switch (uniform(0, 5)) {
        case 0: return Term::zero();
        case 1: return Term::one();
        default: return Term::var(static_cast<std::size_t>(uniform(1, static_cast<Integer>(n))));
      }
    }
    switch (uniform(0, 6)) {
      case 0: return Term::neg(term(n, depth - 1));
      case 1: return Term::oplus(term(n, depth - 1), term(n, depth - 1));
      case 2: return mcn::ominus(term(n, depth - 1), term(n, depth - 1));
      case 3: return mcn::wedge(term(n, depth - 1), term(n, depth - 1));
      case 4: return mcn::vee(term(n, depth - 1), term(n, depth - 1));
      case 5: return mcn::otimes(term(n, depth - 1), term(n, depth - 1));
      default: return mcn::dist(term(n, depth - 1), term(n, depth - 1));
    }
  }

  // Random lattice expression over `leaves` random forms.
  mcn::PwlExpr pwl(std::size_t n, int leaves, Integer bound) {
    if (leaves <= 1) return mcn::PwlExpr::leaf(form(n, bound));
    int left = static_cast<int>(uniform(1, leaves - 1));
    std::vector<mcn::PwlExpr> cs{pwl(n, left, bound), pwl(n, leaves - left, bound)};
    return coin() ? mcn::PwlExpr::min(std::move(cs)) : mcn::PwlExpr::max(std::move(cs));
  }

  mcn::Polytope polytope(std::size_t n, int constraints, Integer bound) {
    mcn::Polytope P(n);
    for (int i = 0; i < constraints; ++i) P.add(form(n, bound));
    return P;
  }

private:
  std::mt19937_64 gen_;
};

inline Rational clamp01(const Rational& v) {
  if (v < 0) return 0;
  if (v > 1) return 1;
  return v;
}

inline Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

}  // namespace oracle
