#include <set>

#include "mcn/error.hpp"
#include "mcn/geometry.hpp"

namespace mcn {

namespace {

void branch(std::span<const AffineForm> forms, std::size_t depth, const Polytope& current,
            std::vector<Side>& signs, std::vector<Cell>& out) {
  for (Side side : {Side::Leq, Side::Geq}) {
    const AffineForm& g = forms[depth];
    Polytope next = current.with(side == Side::Leq ? g : -g);
    auto p = interior_point(next);
    if (!p) continue;
    signs.push_back(side);
    if (depth + 1 == forms.size())
      out.push_back(Cell{signs, std::move(next), std::move(*p)});
    else
      branch(forms, depth + 1, next, signs, out);
    signs.pop_back();
  }
}

}  // namespace

CellDecomposition enumerate_cells(std::span<const AffineForm> forms, std::size_t arity) {
  return enumerate_cells(forms, Polytope::cube(arity));
}

CellDecomposition enumerate_cells(std::span<const AffineForm> forms, const Polytope& region) {
  std::set<AffineForm> seen;
  for (const auto& g : forms) {
    if (g.arity() != region.arity()) throw InputError("form arity does not match region");
    if (g.is_constant()) throw InputError("constant form " + g.to_string() + " in arrangement");
    if (!seen.insert(g).second) throw InputError("duplicate form " + g.to_string() + " in arrangement");
  }
  CellDecomposition d;
  d.arity = region.arity();
  d.forms.assign(forms.begin(), forms.end());
  if (forms.empty()) {
    if (auto p = interior_point(region)) d.cells.push_back(Cell{{}, region, std::move(*p)});
    return d;
  }
  std::vector<Side> signs;
  branch(forms, 0, region, signs, d.cells);
  return d;
}

}  // namespace mcn
