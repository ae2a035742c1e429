#include <set>
#include <unordered_map>
#include <variant>

#include "linearize.hpp"
#include "mcn/error.hpp"
#include "mcn/pwl.hpp"

namespace mcn {

namespace detail {

namespace {

constexpr std::size_t kMaxSamples = 32;

void remember(Samples& samples, Point p) {
  if (samples.size() >= kMaxSamples) return;
  for (const auto& q : samples)
    if (q == p) return;
  samples.push_back(std::move(p));
}

}  // namespace

Order compare_on(const AffineForm& a, const AffineForm& b, const Polytope& P) {
  Samples none;
  return compare_on(a, b, P, none);
}

Order compare_on(const AffineForm& a, const AffineForm& b, const Polytope& P, Samples& samples) {
  AffineForm d = a - b;
  if (d.cube_max() <= 0) return Order::Leq;
  if (d.cube_min() >= 0) return Order::Geq;
  bool pos = false, neg = false;
  for (const auto& p : samples) {
    int s = sgn(d.eval(p));
    pos = pos || s > 0;
    neg = neg || s < 0;
    if (pos && neg) return Order::Mixed;
  }
  if (!pos) {
    auto hi = lp_optimize(d, P, Sense::Maximize);
    if (!hi) return Order::Leq;
    bool leq = hi->value <= 0;
    remember(samples, std::move(hi->witness));
    if (leq) return Order::Leq;
  }
  if (!neg) {
    auto lo = lp_optimize(d, P, Sense::Minimize);
    bool geq = lo->value >= 0;
    remember(samples, std::move(lo->witness));
    if (geq) return Order::Geq;
  }
  return Order::Mixed;
}

bool nonnegative_on(const AffineForm& d, const Polytope& P, Samples& samples) {
  if (d.cube_min() >= 0) return true;
  for (const auto& p : samples)
    if (d.eval(p) < 0) return false;
  auto lo = lp_optimize(d, P, Sense::Minimize);
  if (!lo) return true;
  bool ok = lo->value >= 0;
  remember(samples, std::move(lo->witness));
  return ok;
}

std::optional<Point> positive_point(const AffineForm& d, const Polytope& P, Samples& samples) {
  if (d.cube_max() <= 0) return std::nullopt;
  for (const auto& p : samples)
    if (d.eval(p) > 0) return p;
  auto hi = lp_optimize(d, P, Sense::Maximize);
  if (!hi || hi->value <= 0) return std::nullopt;
  remember(samples, hi->witness);
  return std::move(hi->witness);
}

}  // namespace detail

namespace {

using detail::Order;

struct Split {
  AffineForm hyperplane;
};

struct WorkCell {
  Polytope poly;
  std::unordered_map<const PwlExpr::Node*, AffineForm> resolved;
  detail::Samples samples;
};

// Either the affine form the node equals on the cell, or a hyperplane the
// cell has to be split along first.
using Resolution = std::variant<AffineForm, Split>;

Resolution resolve(const PwlExpr& e, WorkCell& cell) {
  if (e.kind() == PwlKind::Leaf) return e.form();
  if (auto it = cell.resolved.find(e.id()); it != cell.resolved.end()) return it->second;
  const bool is_min = e.kind() == PwlKind::Min;
  std::optional<AffineForm> best;
  for (const auto& c : e.children()) {
    Resolution r = resolve(c, cell);
    if (std::holds_alternative<Split>(r)) return r;
    AffineForm& f = std::get<AffineForm>(r);
    if (!best) {
      best = std::move(f);
      continue;
    }
    if (*best == f) continue;
    switch (detail::compare_on(*best, f, cell.poly, cell.samples)) {
      case Order::Leq:
        if (!is_min) best = std::move(f);
        break;
      case Order::Geq:
        if (is_min) best = std::move(f);
        break;
      case Order::Mixed: return Split{*best - f};
    }
  }
  cell.resolved.emplace(e.id(), *best);
  return *best;
}

}  // namespace

namespace detail {

void for_each_piece_sampled(std::span<const PwlExpr> exprs, const Polytope& P, const SampledVisitor& visit) {
  for (const auto& e : exprs)
    if (e.arity() != P.arity()) throw InputError("expression arity does not match region");
  auto start = lp_optimize(AffineForm::of_constant(P.arity(), 0), P, Sense::Maximize);
  if (!start) return;

  std::vector<WorkCell> stack;
  stack.push_back(WorkCell{P, {}, {std::move(start->witness)}});
  std::vector<AffineForm> forms;
  while (!stack.empty()) {
    WorkCell cell = std::move(stack.back());
    stack.pop_back();
    forms.clear();
    std::optional<AffineForm> split;
    for (const auto& e : exprs) {
      Resolution r = resolve(e, cell);
      if (auto* s = std::get_if<Split>(&r)) {
        split = std::move(s->hyperplane);
        break;
      }
      forms.push_back(std::get<AffineForm>(std::move(r)));
    }
    if (!split) {
      if (!visit(cell.poly, forms, cell.samples)) return;
      continue;
    }
    // Both halves have interior points: the split form takes both signs.
    WorkCell geq{cell.poly.with(-*split), cell.resolved, {}};
    Samples below;
    for (auto& p : cell.samples) {
      int s = sgn(split->eval(p));
      if (s >= 0) geq.samples.push_back(p);
      if (s <= 0) below.push_back(std::move(p));
    }
    cell.samples = std::move(below);
    cell.poly.add(std::move(*split));
    stack.push_back(std::move(geq));
    stack.push_back(std::move(cell));
  }
}

}  // namespace detail

void for_each_piece(std::span<const PwlExpr> exprs, const Polytope& P, const PieceVisitor& visit) {
  detail::for_each_piece_sampled(exprs, P, [&](const Polytope& cell, std::span<const AffineForm> forms,
                                               detail::Samples&) { return visit(cell, forms); });
}

Decision decide_leq(const PwlExpr& F, const PwlExpr& G, const Polytope& P) {
  if (F.arity() != G.arity()) throw InputError("comparing expressions of different arity");
  if (F.upper_bound() <= G.lower_bound()) return {};
  Decision out;
  std::vector<PwlExpr> exprs{F, G};
  detail::for_each_piece_sampled(
      exprs, P, [&](const Polytope& cell, std::span<const AffineForm> forms, detail::Samples& samples) {
        auto p = detail::positive_point(forms[0] - forms[1], cell, samples);
        if (!p) return true;
        out.holds = false;
        out.witness = std::move(*p);
        return false;
      });
  if (!out.holds && eval_pwl(F, *out.witness) <= eval_pwl(G, *out.witness))
    throw InternalError("decision witness does not separate the expressions");
  return out;
}

Decision decide_eq(const PwlExpr& F, const PwlExpr& G, const Polytope& P) {
  if (F == G) return {};
  Decision d = decide_leq(F, G, P);
  if (!d) return d;
  return decide_leq(G, F, P);
}

namespace {

AffineForm resolve_at(const PwlExpr& e, const Point& p) {
  if (e.kind() == PwlKind::Leaf) return e.form();
  std::optional<AffineForm> best;
  Rational best_value;
  for (const auto& c : e.children()) {
    AffineForm f = resolve_at(c, p);
    Rational v = f.eval(p);
    bool better = e.kind() == PwlKind::Min ? v < best_value : v > best_value;
    if (!best || better) {
      best = std::move(f);
      best_value = std::move(v);
    }
  }
  return *best;
}

}  // namespace

Decision decide_leq_by_arrangement(const PwlExpr& F, const PwlExpr& G, const Polytope& P) {
  if (F.arity() != G.arity() || F.arity() != P.arity())
    throw InputError("comparing expressions of different arity");
  std::vector<AffineForm> leaves = leaf_forms(F);
  for (auto& g : leaf_forms(G)) leaves.push_back(std::move(g));

  std::set<AffineForm> keys;
  std::vector<AffineForm> forms;
  auto add = [&](const AffineForm& g) {
    if (g.is_constant()) return;
    AffineForm k = g.hyperplane_key();
    if (keys.insert(k).second) forms.push_back(std::move(k));
  };
  for (const auto& g : leaves) add(g);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j) add(leaves[i] - leaves[j]);

  CellDecomposition cells = enumerate_cells(forms, P);
  for (const auto& cell : cells.cells) {
    // Every leaf difference has a fixed strict sign at the interior point,
    // so the pieces chosen there hold on the whole closed cell.
    AffineForm gap = resolve_at(F, cell.interior) - resolve_at(G, cell.interior);
    auto best = lp_optimize(gap, cell.polytope, Sense::Maximize);
    if (best && best->value > 0) return Decision{false, std::move(best->witness)};
  }
  return {};
}

}  // namespace mcn
