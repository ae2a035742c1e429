#include "mcn/pwl.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "linearize.hpp"
#include "mcn/error.hpp"

namespace mcn {

struct PwlExpr::Node {
  PwlKind kind = PwlKind::Leaf;
  AffineForm form;
  std::vector<PwlExpr> children;
  std::size_t arity = 0;
  std::size_t hash = 0;
  std::uint64_t leaves = 1;
  Integer lo = 0;
  Integer hi = 0;
};

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) { return x > kSat - y ? kSat : x + y; }

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// Above this many leaves term_to_pwl tries to compact intermediate results.
constexpr std::uint64_t kCompactThreshold = 4;

}  // namespace

PwlExpr PwlExpr::leaf(AffineForm g) {
  auto n = std::make_shared<Node>();
  n->kind = PwlKind::Leaf;
  n->arity = g.arity();
  n->lo = g.cube_min();
  n->hi = g.cube_max();
  n->hash = mix(1, hash_value(g));
  n->form = std::move(g);
  return PwlExpr(std::move(n));
}

PwlExpr PwlExpr::constant(std::size_t arity, Integer c) {
  return leaf(AffineForm::of_constant(arity, c));
}

PwlExpr PwlExpr::lattice(PwlKind kind, std::vector<PwlExpr> children) {
  if (children.empty()) throw InputError("min/max needs at least one child");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->arity = children.front().arity();
  n->hash = mix(0, static_cast<std::size_t>(kind) + 7);
  n->leaves = 0;
  n->lo = children.front().lower_bound();
  n->hi = children.front().upper_bound();
  for (const auto& c : children) {
    if (c.arity() != n->arity) throw InputError("children of different arity");
    n->hash = mix(n->hash, c.hash());
    n->leaves = sat_add(n->leaves, c.leaf_count());
    if (kind == PwlKind::Min) {
      n->lo = std::min(n->lo, c.lower_bound());
      n->hi = std::min(n->hi, c.upper_bound());
    } else {
      n->lo = std::max(n->lo, c.lower_bound());
      n->hi = std::max(n->hi, c.upper_bound());
    }
  }
  n->children = std::move(children);
  return PwlExpr(std::move(n));
}

PwlExpr PwlExpr::min(std::vector<PwlExpr> children) { return lattice(PwlKind::Min, std::move(children)); }
PwlExpr PwlExpr::max(std::vector<PwlExpr> children) { return lattice(PwlKind::Max, std::move(children)); }

PwlKind PwlExpr::kind() const noexcept { return node_->kind; }
const AffineForm& PwlExpr::form() const noexcept { return node_->form; }
const std::vector<PwlExpr>& PwlExpr::children() const noexcept { return node_->children; }
std::size_t PwlExpr::arity() const noexcept { return node_->arity; }
std::size_t PwlExpr::hash() const noexcept { return node_->hash; }
std::uint64_t PwlExpr::leaf_count() const noexcept { return node_->leaves; }
Integer PwlExpr::lower_bound() const noexcept { return node_->lo; }
Integer PwlExpr::upper_bound() const noexcept { return node_->hi; }

bool operator==(const PwlExpr& a, const PwlExpr& b) {
  if (a.id() == b.id()) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.leaf_count() != b.leaf_count()) return false;
  if (a.kind() == PwlKind::Leaf) return a.form() == b.form();
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!(a.children()[i] == b.children()[i])) return false;
  return true;
}

Rational eval_pwl(const PwlExpr& F, const Point& p) {
  if (p.size() != F.arity())
    throw InputError("point has " + std::to_string(p.size()) + " coordinates, expression has arity " +
                     std::to_string(F.arity()));
  std::unordered_map<const PwlExpr::Node*, Rational> memo;
  std::function<Rational(const PwlExpr&)> go = [&](const PwlExpr& e) -> Rational {
    if (e.kind() == PwlKind::Leaf) return e.form().eval(p);
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    Rational best = go(e.children().front());
    for (std::size_t i = 1; i < e.children().size(); ++i) {
      Rational v = go(e.children()[i]);
      if (e.kind() == PwlKind::Min ? v < best : v > best) best = std::move(v);
    }
    memo.emplace(e.id(), best);
    return best;
  };
  return go(F);
}

std::vector<AffineForm> leaf_forms(const PwlExpr& F) {
  std::vector<AffineForm> out;
  std::unordered_set<AffineForm> seen;
  std::unordered_set<const PwlExpr::Node*> visited;
  std::function<void(const PwlExpr&)> go = [&](const PwlExpr& e) {
    if (!visited.insert(e.id()).second) return;
    if (e.kind() == PwlKind::Leaf) {
      if (seen.insert(e.form()).second) out.push_back(e.form());
      return;
    }
    for (const auto& c : e.children()) go(c);
  };
  go(F);
  return out;
}

PwlExpr truncate_affine(const AffineForm& g) {
  std::size_t n = g.arity();
  return PwlExpr::min({PwlExpr::max({PwlExpr::leaf(g), PwlExpr::constant(n, 0)}), PwlExpr::constant(n, 1)});
}

// ---------------------------------------------------------------------------
// Simplifying builders

namespace {

struct ExprHash {
  std::size_t operator()(const PwlExpr& e) const noexcept { return e.hash(); }
};

PwlExpr make_lattice(PwlKind kind, std::vector<PwlExpr> children) {
  if (children.empty()) throw InputError("min/max needs at least one child");
  const bool is_min = kind == PwlKind::Min;

  std::vector<PwlExpr> flat;
  std::unordered_set<PwlExpr, ExprHash> seen;
  auto push = [&](const PwlExpr& e) {
    if (seen.insert(e).second) flat.push_back(e);
  };
  for (const auto& c : children) {
    if (c.kind() == kind) {
      for (const auto& cc : c.children()) push(cc);
    } else {
      push(c);
    }
  }

  // Bound dominance: for a min, anything whose lower bound reaches the
  // smallest upper bound is never strictly below the child that has it.
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < flat.size(); ++i) {
    if (is_min ? flat[i].upper_bound() < flat[pivot].upper_bound()
               : flat[i].lower_bound() > flat[pivot].lower_bound())
      pivot = i;
  }
  std::vector<bool> drop(flat.size(), false);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (i == pivot) continue;
    drop[i] = is_min ? flat[i].lower_bound() >= flat[pivot].upper_bound()
                     : flat[i].upper_bound() <= flat[pivot].lower_bound();
  }
  // Leaf-against-leaf dominance over the cube.
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (drop[i] || flat[i].kind() != PwlKind::Leaf) continue;
    for (std::size_t j = 0; j < flat.size(); ++j) {
      if (i == j || drop[j] || flat[j].kind() != PwlKind::Leaf) continue;
      AffineForm d = flat[i].form() - flat[j].form();
      // i is redundant when the other leaf is always at least as good.
      if (is_min ? d.cube_min() >= 0 : d.cube_max() <= 0) {
        drop[i] = true;
        break;
      }
    }
  }
  std::vector<PwlExpr> kept;
  for (std::size_t i = 0; i < flat.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(flat[i]));
  if (kept.size() == 1) return kept.front();
  return is_min ? PwlExpr::min(std::move(kept)) : PwlExpr::max(std::move(kept));
}

using Memo = std::unordered_map<const PwlExpr::Node*, PwlExpr>;

PwlExpr map_leaves(const PwlExpr& e, const std::function<AffineForm(const AffineForm&)>& f, bool dual,
                   Memo& memo) {
  if (e.kind() == PwlKind::Leaf) return PwlExpr::leaf(f(e.form()));
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  std::vector<PwlExpr> cs;
  cs.reserve(e.children().size());
  for (const auto& c : e.children()) cs.push_back(map_leaves(c, f, dual, memo));
  bool as_min = (e.kind() == PwlKind::Min) != dual;
  PwlExpr r = as_min ? make_min(std::move(cs)) : make_max(std::move(cs));
  memo.emplace(e.id(), r);
  return r;
}

PwlExpr shifted(const PwlExpr& e, const AffineForm& g) {
  Memo memo;
  return map_leaves(e, [&](const AffineForm& a) { return a + g; }, false, memo);
}

PwlExpr sum(const PwlExpr& F, const PwlExpr& G) {
  if (G.kind() == PwlKind::Leaf) return shifted(F, G.form());
  if (F.kind() == PwlKind::Leaf) return shifted(G, F.form());
  std::vector<PwlExpr> cs;
  for (const auto& c : F.children()) cs.push_back(sum(c, G));
  return F.kind() == PwlKind::Min ? make_min(std::move(cs)) : make_max(std::move(cs));
}

PwlExpr clamp_above(PwlExpr S) {
  if (S.upper_bound() <= 1) return S;
  if (S.lower_bound() >= 1) return PwlExpr::constant(S.arity(), 1);
  PwlExpr one = PwlExpr::constant(S.arity(), 1);
  return make_min({std::move(S), std::move(one)});
}

PwlExpr maybe_compact(PwlExpr e) {
  if (e.leaf_count() > kCompactThreshold) return compact(e);
  return e;
}

}  // namespace

PwlExpr make_min(std::vector<PwlExpr> children) { return make_lattice(PwlKind::Min, std::move(children)); }
PwlExpr make_max(std::vector<PwlExpr> children) { return make_lattice(PwlKind::Max, std::move(children)); }

PwlExpr pwl_negate(const PwlExpr& F) {
  Memo memo;
  std::size_t n = F.arity();
  return map_leaves(F, [n](const AffineForm& a) { return AffineForm::of_constant(n, 1) - a; }, true, memo);
}

PwlExpr pwl_oplus(const PwlExpr& F, const PwlExpr& G) {
  if (F.arity() != G.arity()) throw InputError("oplus of expressions of different arity");
  if (F.upper_bound() <= 0) return G;
  if (G.upper_bound() <= 0) return F;
  return maybe_compact(clamp_above(sum(F, G)));
}

PwlExpr pwl_scale_clamped(const PwlExpr& F, Integer m) {
  if (m < 1) throw InputError("scale factor must be >= 1");
  if (m == 1) return F;
  Memo memo;
  PwlExpr S = map_leaves(F, [m](const AffineForm& a) { return a.scaled(m); }, false, memo);
  return maybe_compact(clamp_above(std::move(S)));
}

PwlExpr compact(const PwlExpr& F) {
  if (F.kind() == PwlKind::Leaf) return F;
  const Polytope cube = Polytope::cube(F.arity());

  struct Piece {
    Polytope cell;
    std::size_t form;
    detail::Samples samples;
  };
  std::vector<AffineForm> forms;
  std::unordered_map<AffineForm, std::size_t> index;
  std::vector<Piece> pieces;
  std::vector<PwlExpr> exprs{F};
  detail::for_each_piece_sampled(
      exprs, cube, [&](const Polytope& cell, std::span<const AffineForm> fs, detail::Samples& samples) {
        auto [it, fresh] = index.emplace(fs[0], forms.size());
        if (fresh) forms.push_back(fs[0]);
        pieces.push_back(Piece{cell, it->second, samples});
        return true;
      });
  if (forms.size() == 1) return PwlExpr::leaf(forms.front());

  // On a convex domain a continuous piecewise-affine function with pieces
  // a_r on full-dimensional cells C_r equals
  //   max_r min { b in pieces : b >= a_r on C_r }.
  std::vector<std::vector<std::size_t>> selectors;
  std::set<std::vector<std::size_t>> distinct;
  for (auto& piece : pieces) {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < forms.size(); ++b) {
      if (b == piece.form || detail::nonnegative_on(forms[b] - forms[piece.form], piece.cell, piece.samples))
        s.push_back(b);
    }
    if (distinct.insert(s).second) selectors.push_back(std::move(s));
  }
  // A superset selector gives a pointwise smaller min and never wins the max.
  std::vector<PwlExpr> terms;
  std::uint64_t leaves = 0;
  for (std::size_t i = 0; i < selectors.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < selectors.size() && !dominated; ++j) {
      if (i == j || selectors[j].size() >= selectors[i].size()) continue;
      dominated = std::includes(selectors[i].begin(), selectors[i].end(), selectors[j].begin(),
                                selectors[j].end());
    }
    if (dominated) continue;
    std::vector<PwlExpr> leaves_of;
    for (std::size_t b : selectors[i]) leaves_of.push_back(PwlExpr::leaf(forms[b]));
    leaves += leaves_of.size();
    terms.push_back(leaves_of.size() == 1 ? leaves_of.front() : PwlExpr::min(std::move(leaves_of)));
  }
  if (leaves >= F.leaf_count()) return F;
  return terms.size() == 1 ? terms.front() : PwlExpr::max(std::move(terms));
}

// ---------------------------------------------------------------------------
// Terms

const PwlExpr* PwlCache::find(const Term& t) const {
  auto it = entries_.find(t.id());
  return it == entries_.end() ? nullptr : &it->second.second;
}

const PwlExpr& PwlCache::insert(const Term& t, PwlExpr value) {
  return entries_.insert_or_assign(t.id(), std::make_pair(t, std::move(value))).first->second.second;
}

namespace {

bool same_term(const Term& a, const Term& b) { return a.id() == b.id() || (a.hash() == b.hash() && a == b); }

PwlExpr convert(const Term& t, PwlCache& cache) {
  if (const PwlExpr* hit = cache.find(t)) return *hit;
  const std::size_t n = cache.arity();
  PwlExpr r = PwlExpr::constant(n, 0);
  switch (t.kind()) {
    case TermKind::Zero: r = PwlExpr::constant(n, 0); break;
    case TermKind::One: r = PwlExpr::constant(n, 1); break;
    case TermKind::Var: r = PwlExpr::leaf(AffineForm::of_variable(n, t.var_index())); break;
    case TermKind::Neg: r = pwl_negate(convert(t.child(), cache)); break;
    case TermKind::Oplus: {
      // ((x ⊕ u) ⊕ u) ... ⊕ u collapses to x ⊕ min(1, k·u).
      const Term& u = t.right();
      Integer copies = 1;
      const Term* rest = &t.left();
      while (rest->kind() == TermKind::Oplus && same_term(rest->right(), u)) {
        ++copies;
        rest = &rest->left();
      }
      if (copies == 1) {
        r = pwl_oplus(convert(t.left(), cache), convert(u, cache));
      } else if (same_term(*rest, u)) {
        r = pwl_scale_clamped(convert(u, cache), copies + 1);
      } else {
        r = pwl_oplus(convert(*rest, cache), pwl_scale_clamped(convert(u, cache), copies));
      }
      break;
    }
  }
  return cache.insert(t, std::move(r));
}

}  // namespace

PwlExpr term_to_pwl(const Term& t, std::size_t arity) {
  PwlCache cache(arity);
  return term_to_pwl(t, cache);
}

PwlExpr term_to_pwl(const Term& t, PwlCache& cache) {
  if (t.max_var() > cache.arity())
    throw InputError("term uses x" + std::to_string(t.max_var()) + " beyond arity " +
                     std::to_string(cache.arity()));
  return convert(t, cache);
}

}  // namespace mcn
