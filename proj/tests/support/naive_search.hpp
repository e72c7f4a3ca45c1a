#pragma once

#include "sea/finite_ea.hpp"

#include <vector>

namespace sea::testing {

inline constexpr std::size_t kNaiveSearchLimit = 6;

/// Every SEA product on `ea` as a row-major cell vector, in lexicographic
/// order. Plain row-major backtracking over all n values per cell; a partial
/// table is rejected only when some S1-S5 instance whose cells are all
/// assigned fails. Shares no code with the library solver.
std::vector<std::vector<Index>> naive_sea_products(const FiniteEATable& ea);

}  // namespace sea::testing
