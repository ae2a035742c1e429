#include "mcn/linear_synth.hpp"

#include <map>

#include "mcn/error.hpp"
#include "mcn/pwl.hpp"

namespace mcn {

namespace {

class Builder {
public:
  Term build(const AffineForm& g) {
    if (g.cube_max() <= 0) return Term::zero();
    if (g.cube_min() >= 1) return Term::one();
    if (auto it = memo_.find(g); it != memo_.end()) return it->second;

    // Peel one unit off the first variable with a nonzero coefficient.
    std::size_t i = 0;
    while (g.coeff(i) == 0) ++i;
    std::vector<Integer> cs = g.coeffs();
    Term x = Term::var(i + 1);
    Term t;
    if (cs[i] > 0) {
      cs[i] -= 1;
      AffineForm rest(g.constant(), cs);
      t = oplus0(build(rest), and1(x, build(rest.plus_constant(1))));
    } else {
      // g = (g + x_i - 1) + (1 - x_i)
      cs[i] += 1;
      AffineForm rest(g.constant(), cs);
      t = oplus0(build(rest.plus_constant(-1)), and1(Term::neg(x), build(rest)));
    }
    memo_.emplace(g, t);
    return t;
  }

private:
  static Term oplus0(const Term& a, const Term& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Term::oplus(a, b);
  }

  static Term and1(const Term& a, const Term& b) {
    if (b.is_one()) return a;
    if (b.is_zero()) return Term::zero();
    return otimes(a, b);
  }

  std::map<AffineForm, Term> memo_;
};

}  // namespace

Term linear_term(const AffineForm& g, const LinearTermOptions& options) {
  if (g.arity() == 0) throw InputError("linear_term needs arity >= 1");
  Builder b;
  Term t = b.build(g);
  if (options.certify) {
    Decision d = decide_eq(term_to_pwl(t, g.arity()), truncate_affine(g), Polytope::cube(g.arity()));
    if (!d)
      throw InternalError("linear_term(" + g.to_string() + ") differs from its truncation at " +
                          to_string(*d.witness));
  }
  return t;
}

}  // namespace mcn
