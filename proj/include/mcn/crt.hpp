#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mcn/affine.hpp"
#include "mcn/geometry.hpp"
#include "mcn/pwl.hpp"
#include "mcn/term.hpp"

namespace mcn {

inline constexpr std::uint64_t kDefaultMembershipCap = 65536;

// The ideal {e : e <= m·generator for some m >= 1} of term functions on
// [0,1]^n, with the generator's function cached.
class PrincipalIdeal {
public:
  PrincipalIdeal(Term generator, std::size_t arity);
  PrincipalIdeal(Term generator, PwlExpr function);

  const Term& generator() const noexcept { return generator_; }
  const PwlExpr& function() const noexcept { return function_; }
  std::size_t arity() const noexcept { return function_.arity(); }

private:
  Term generator_;
  PwlExpr function_;
};

// Generator (h_σ1 ⊖ h_σ2) ⊕ ... ⊕ (h_σ(k-1) ⊖ h_σk), left-associated; Zero
// when k = 1. `order` is a 1-based permutation of 1..k; InputError otherwise.
PrincipalIdeal ideal_for_order(std::span<const std::size_t> order, std::span<const Term> h,
                               std::size_t arity);

// Generator gen(I) ∧ gen(J).
PrincipalIdeal intersect_principal(const PrincipalIdeal& I, const PrincipalIdeal& J);

struct Membership {
  enum class Status { Member, NotMember, CapExceeded };
  Status status = Status::Member;
  std::uint64_t bound = 0;  // Member: smallest tested m with e <= m·gen
  Point witness;            // NotMember: gen(witness) = 0 < e(witness)

  bool member() const noexcept { return status == Status::Member; }
};

// Doubling search m = 1, 2, 4, ... <= cap for e <= min(1, m·gen). The first
// failed attempt also checks whether e is positive somewhere on the zero set
// of gen; if so no m can succeed and NotMember is returned.
Membership membership_bound(const Term& e, const PrincipalIdeal& I, std::uint64_t cap = kDefaultMembershipCap);
Membership membership_bound(const PwlExpr& e, const PrincipalIdeal& I, std::uint64_t cap = kDefaultMembershipCap);

// One gluing step, kept for inspection.
struct CombineStep {
  Term a1, a2;
  PrincipalIdeal I1, I2;
  std::uint64_t m1 = 0, m2 = 0;
  Term result;
};

// Given a1 ≡ a2 modulo the join (I1, I2), returns
//   (a1 ⊖ a2 ⊖ c1) ⊕ (a2 ⊖ a1 ⊖ d2) ⊕ (a1 ∧ a2)
// with c1 = m1·gen(I1) and d2 = m2·gen(I2), where m1 and m2 bound a1 ⊖ a2
// and a2 ⊖ a1 against gen(I1) ⊕ gen(I2). The result is congruent to a1
// modulo I1 and to a2 modulo I2. Throws NotCongruentError or
// CapExceededError when the bounds cannot be found.
Term combine_pair(const Term& a1, const Term& a2, const PrincipalIdeal& I1, const PrincipalIdeal& I2,
                  std::uint64_t cap = kDefaultMembershipCap, CombineStep* step = nullptr);

struct Residue {
  Term value;
  PrincipalIdeal ideal;
};

// Left fold of combine_pair over the list, intersecting ideals as it goes.
// Errors carry the 1-based index of the pair that failed to glue.
Term chinese_glue(std::span<const Residue> residues, std::uint64_t cap = kDefaultMembershipCap,
                  std::vector<CombineStep>* steps = nullptr);

struct RegionGroup {
  std::vector<std::size_t> order;  // 1-based, ascending truncated values
  std::vector<Cell> cells;
  std::size_t branch = 0;          // 1-based constituent index u
  PrincipalIdeal ideal;
};

struct RegionAnalysis {
  std::size_t arity = 0;
  std::vector<AffineForm> constituents;
  std::vector<Term> truncations;  // linear_term of each constituent
  std::vector<RegionGroup> groups;
};

// Throws InvalidDescriptionError (with a witness) unless 0 <= f <= 1 on the cube.
void validate_description(const PwlExpr& f);

RegionAnalysis analyze_regions(const PwlExpr& f);

struct CrtSynthesis {
  Term term;
  RegionAnalysis regions;
  std::vector<CombineStep> steps;
  std::uint64_t max_bound = 0;
};

CrtSynthesis synthesize_crt_detailed(const PwlExpr& f, std::uint64_t cap = kDefaultMembershipCap);
Term synthesize_crt(const PwlExpr& f, std::uint64_t cap = kDefaultMembershipCap);

// Leaves through linear_term, Min through ∧, Max through ∨.
Term synthesize_direct(const PwlExpr& f);

}  // namespace mcn
