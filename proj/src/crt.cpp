#include "mcn/crt.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mcn/error.hpp"
#include "mcn/linear_synth.hpp"

namespace mcn {

PrincipalIdeal::PrincipalIdeal(Term generator, std::size_t arity)
    : generator_(std::move(generator)), function_(term_to_pwl(generator_, arity)) {}

PrincipalIdeal::PrincipalIdeal(Term generator, PwlExpr function)
    : generator_(std::move(generator)), function_(std::move(function)) {}

namespace {

PwlExpr pwl_of(const Term& t, PwlCache& cache) { return term_to_pwl(t, cache); }

// Some point where gen vanishes but e does not, if any.
std::optional<Point> zero_set_escape(const PwlExpr& e, const PwlExpr& gen) {
  std::optional<Point> found;
  std::vector<PwlExpr> exprs{e, gen};
  for_each_piece(exprs, Polytope::cube(e.arity()), [&](const Polytope& cell, std::span<const AffineForm> fs) {
    if (fs[0].cube_max() <= 0 || fs[1].cube_min() > 0) return true;
    auto best = lp_optimize(fs[0], cell.with(fs[1]), Sense::Maximize);
    if (best && best->value > 0) {
      found = std::move(best->witness);
      return false;
    }
    return true;
  });
  return found;
}

Membership membership_impl(const PwlExpr& e, const PwlExpr& gen, std::uint64_t cap) {
  if (cap < 1) throw InputError("membership cap must be >= 1");
  if (e.arity() != gen.arity()) throw InputError("membership test across arities");
  const Polytope cube = Polytope::cube(e.arity());
  bool checked_zero_set = false;
  for (std::uint64_t m = 1; m <= cap; m *= 2) {
    PwlExpr scaled = pwl_scale_clamped(gen, static_cast<Integer>(m));
    Decision d = decide_leq(e, scaled, cube);
    if (d) return Membership{Membership::Status::Member, m, {}};
    if (eval_pwl(gen, *d.witness) == 0) return Membership{Membership::Status::NotMember, 0, *d.witness};
    if (!checked_zero_set) {
      checked_zero_set = true;
      if (auto w = zero_set_escape(e, gen)) return Membership{Membership::Status::NotMember, 0, std::move(*w)};
    }
    if (m > cap / 2) break;
  }
  return Membership{Membership::Status::CapExceeded, 0, {}};
}

Term combine_impl(const Term& a1, const Term& a2, const PrincipalIdeal& I1, const PrincipalIdeal& I2,
                  std::uint64_t cap, PwlCache& cache, CombineStep* step) {
  if (I1.arity() != I2.arity()) throw InputError("ideals of different arity");
  PwlExpr join = pwl_oplus(I1.function(), I2.function());

  Term e1 = ominus(a1, a2);
  Term e2 = ominus(a2, a1);
  Membership r1 = membership_impl(pwl_of(e1, cache), join, cap);
  Membership r2 = r1.member() ? membership_impl(pwl_of(e2, cache), join, cap) : r1;
  for (const Membership* r : {&r1, &r2}) {
    if (r->status == Membership::Status::NotMember)
      throw NotCongruentError("terms are not congruent modulo the joined ideal; they differ at " +
                                  to_string(r->witness),
                              r->witness);
    if (r->status == Membership::Status::CapExceeded)
      throw CapExceededError("membership bound exceeds cap " + std::to_string(cap));
  }

  Term c1 = iterate_oplus(r1.bound, I1.generator());
  Term d2 = iterate_oplus(r2.bound, I2.generator());
  Term result = Term::oplus(Term::oplus(ominus(e1, c1), ominus(e2, d2)), wedge(a1, a2));
  if (step) *step = CombineStep{a1, a2, I1, I2, r1.bound, r2.bound, result};
  return result;
}

PrincipalIdeal intersect_impl(const PrincipalIdeal& I, const PrincipalIdeal& J, PwlCache& cache) {
  if (I.arity() != J.arity()) throw InputError("ideals of different arity");
  Term g = wedge(I.generator(), J.generator());
  // min(gen I, gen J) is the function of the wedge; record it so later
  // conversions reuse it.
  PwlExpr f = compact(make_min({I.function(), J.function()}));
  cache.insert(g, f);
  return PrincipalIdeal(std::move(g), std::move(f));
}

Term glue_impl(std::span<const Residue> residues, std::uint64_t cap, PwlCache& cache,
               std::vector<CombineStep>* steps) {
  if (residues.empty()) throw InputError("chinese_glue needs at least one residue");
  Term a = residues.front().value;
  PrincipalIdeal J = residues.front().ideal;
  for (std::size_t j = 1; j < residues.size(); ++j) {
    CombineStep step{a, a, J, J, 0, 0, a};
    try {
      a = combine_impl(a, residues[j].value, J, residues[j].ideal, cap, cache, steps ? &step : nullptr);
    } catch (const NotCongruentError& e) {
      throw NotCongruentError(std::string(e.what()) + " (residue " + std::to_string(j + 1) + ")", e.witness(),
                              j + 1);
    } catch (const CapExceededError& e) {
      throw CapExceededError(std::string(e.what()) + " (residue " + std::to_string(j + 1) + ")", j + 1);
    }
    if (steps) steps->push_back(std::move(step));
    J = intersect_impl(J, residues[j].ideal, cache);
  }
  return a;
}

PrincipalIdeal order_impl(std::span<const std::size_t> order, std::span<const Term> h, PwlCache& cache) {
  const std::size_t k = h.size();
  if (order.size() != k) throw InputError("order length does not match the number of terms");
  std::vector<bool> used(k, false);
  for (std::size_t s : order) {
    if (s < 1 || s > k || used[s - 1]) throw InputError("order is not a permutation of 1..k");
    used[s - 1] = true;
  }
  Term g = Term::zero();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    Term link = ominus(h[order[i] - 1], h[order[i + 1] - 1]);
    g = i == 0 ? link : Term::oplus(g, link);
  }
  PwlExpr f = pwl_of(g, cache);
  return PrincipalIdeal(std::move(g), std::move(f));
}

Rational clamp01(Rational v) {
  if (v < 0) return 0;
  if (v > 1) return 1;
  return v;
}

RegionAnalysis analyze_impl(const PwlExpr& f, PwlCache& cache) {
  validate_description(f);
  RegionAnalysis out;
  const std::size_t n = f.arity();
  out.arity = n;
  out.constituents = leaf_forms(f);
  const auto& g = out.constituents;
  const std::size_t k = g.size();

  std::vector<AffineForm> forms;
  std::set<AffineForm> keys;
  auto add = [&](const AffineForm& a) {
    if (a.is_constant()) return;
    AffineForm key = a.hyperplane_key();
    if (keys.insert(key).second) forms.push_back(std::move(key));
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) add(g[i] - g[j]);
  for (std::size_t i = 0; i < k; ++i) {
    add(g[i]);
    add(g[i].plus_constant(-1));
  }
  CellDecomposition arrangement = enumerate_cells(forms, n);

  for (const auto& gi : g) out.truncations.push_back(linear_term(gi));

  // Group cells by the ordering of truncated values at their interior point.
  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::vector<Cell>> members;
  std::map<std::vector<std::size_t>, std::size_t> slot;
  for (auto& cell : arrangement.cells) {
    std::vector<Rational> v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = clamp01(g[j].eval(cell.interior));
    std::vector<std::size_t> order(k);
    for (std::size_t j = 0; j < k; ++j) order[j] = j + 1;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a - 1] < v[b - 1]; });
    auto [it, fresh] = slot.emplace(order, orders.size());
    if (fresh) {
      orders.push_back(order);
      members.emplace_back();
    }
    members[it->second].push_back(std::move(cell));
  }

  for (std::size_t gi = 0; gi < orders.size(); ++gi) {
    const Point& p = members[gi].front().interior;
    Rational fp = eval_pwl(f, p);
    std::size_t branch = 0;
    for (std::size_t j = 0; j < k && branch == 0; ++j) {
      if (clamp01(g[j].eval(p)) != fp) continue;
      PwlExpr hj = truncate_affine(g[j]);
      bool everywhere = std::all_of(members[gi].begin(), members[gi].end(), [&](const Cell& c) {
        return decide_eq(f, hj, c.polytope).holds;
      });
      if (everywhere) branch = j + 1;
    }
    if (branch == 0)
      throw InvalidDescriptionError("no constituent agrees with the function on the region containing " +
                                        to_string(p),
                                    p);
    PrincipalIdeal ideal = order_impl(orders[gi], out.truncations, cache);
    out.groups.push_back(RegionGroup{orders[gi], std::move(members[gi]), branch, std::move(ideal)});
  }
  return out;
}

}  // namespace

PrincipalIdeal ideal_for_order(std::span<const std::size_t> order, std::span<const Term> h, std::size_t arity) {
  PwlCache cache(arity);
  return order_impl(order, h, cache);
}

PrincipalIdeal intersect_principal(const PrincipalIdeal& I, const PrincipalIdeal& J) {
  PwlCache cache(I.arity());
  return intersect_impl(I, J, cache);
}

Membership membership_bound(const Term& e, const PrincipalIdeal& I, std::uint64_t cap) {
  return membership_impl(term_to_pwl(e, I.arity()), I.function(), cap);
}

Membership membership_bound(const PwlExpr& e, const PrincipalIdeal& I, std::uint64_t cap) {
  return membership_impl(e, I.function(), cap);
}

Term combine_pair(const Term& a1, const Term& a2, const PrincipalIdeal& I1, const PrincipalIdeal& I2,
                  std::uint64_t cap, CombineStep* step) {
  PwlCache cache(I1.arity());
  return combine_impl(a1, a2, I1, I2, cap, cache, step);
}

Term chinese_glue(std::span<const Residue> residues, std::uint64_t cap, std::vector<CombineStep>* steps) {
  if (residues.empty()) throw InputError("chinese_glue needs at least one residue");
  PwlCache cache(residues.front().ideal.arity());
  return glue_impl(residues, cap, cache, steps);
}

void validate_description(const PwlExpr& f) {
  if (f.arity() == 0) throw InputError("descriptions need at least one variable");
  const Polytope cube = Polytope::cube(f.arity());
  if (Decision d = decide_leq(PwlExpr::constant(f.arity(), 0), f, cube); !d)
    throw InvalidDescriptionError("function is negative at " + to_string(*d.witness), *d.witness);
  if (Decision d = decide_leq(f, PwlExpr::constant(f.arity(), 1), cube); !d)
    throw InvalidDescriptionError("function exceeds 1 at " + to_string(*d.witness), *d.witness);
}

RegionAnalysis analyze_regions(const PwlExpr& f) {
  PwlCache cache(f.arity());
  return analyze_impl(f, cache);
}

CrtSynthesis synthesize_crt_detailed(const PwlExpr& f, std::uint64_t cap) {
  PwlCache cache(f.arity());
  CrtSynthesis out;
  out.regions = analyze_impl(f, cache);
  std::vector<Residue> residues;
  for (const auto& group : out.regions.groups)
    residues.push_back(Residue{out.regions.truncations[group.branch - 1], group.ideal});
  out.term = glue_impl(residues, cap, cache, &out.steps);
  for (const auto& s : out.steps) out.max_bound = std::max({out.max_bound, s.m1, s.m2});

  // Fresh conversion: the certificate must not rest on cached shortcuts.
  Decision d = decide_eq(term_to_pwl(out.term, f.arity()), f, Polytope::cube(f.arity()));
  if (!d) throw InternalError("synthesized term differs from the description at " + to_string(*d.witness));
  return out;
}

Term synthesize_crt(const PwlExpr& f, std::uint64_t cap) { return synthesize_crt_detailed(f, cap).term; }

Term synthesize_direct(const PwlExpr& f) {
  validate_description(f);
  std::map<const PwlExpr::Node*, Term> memo;
  std::function<Term(const PwlExpr&)> go = [&](const PwlExpr& e) -> Term {
    if (e.kind() == PwlKind::Leaf) return linear_term(e.form());
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    Term acc = go(e.children().front());
    for (std::size_t i = 1; i < e.children().size(); ++i) {
      Term next = go(e.children()[i]);
      acc = e.kind() == PwlKind::Min ? wedge(acc, next) : vee(acc, next);
    }
    memo.emplace(e.id(), acc);
    return acc;
  };
  Term t = go(f);
  Decision d = decide_eq(term_to_pwl(t, f.arity()), f, Polytope::cube(f.arity()));
  if (!d) throw InternalError("direct synthesis differs from the description at " + to_string(*d.witness));
  return t;
}

}  // namespace mcn
