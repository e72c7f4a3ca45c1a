#pragma once

#include "sea/finite_ea.hpp"
#include "sea/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sea {

enum class AxiomSet { SeaS1S5, EffectMonoid, EffectMonoidWithS3 };

std::string to_string(AxiomSet a);

inline constexpr std::size_t kDefaultSearchBound = 12;

struct SearchProblem {
  FiniteEATable ea;
  AxiomSet axiom_set = AxiomSet::SeaS1S5;
  /// Stop after this many solutions; nullopt enumerates all.
  std::optional<std::size_t> max_solutions{};
  /// Quotient the solutions by automorphisms of the effect algebra.
  bool canonicalize = false;
  std::size_t size_bound = kDefaultSearchBound;
};

struct SearchResult {
  /// Sorted lexicographically by cells.
  std::vector<ProductTable> solutions;
  std::uint64_t node_count = 0;
  std::uint64_t pruned_count = 0;
  /// Lattice analysis of the effect algebra's order.
  BooleanAlgebraVerdict boolean_verdict;
  /// Effect-monoid searches: whether solution i satisfies a.b = 0 => b.a = 0.
  std::vector<bool> zero_symmetric;
  /// max_solutions was reached before the tree was exhausted.
  bool truncated = false;
};

/// Backtracking search for every product on `ea` satisfying the axiom set.
/// Forced entries (0 and 1 rows and columns) are seeded first; additivity
/// rows, zero symmetry and the closure axioms prune partial tables. Every
/// solution is re-validated by the independent axiom checker. Throws
/// InputError above the size bound and PreconditionError for invalid tables.
SearchResult search_products(const SearchProblem& p);

/// search_products with the axiom set forced to an effect-monoid variant
/// (EffectMonoid unless EffectMonoidWithS3 was requested).
SearchResult search_effect_monoids(SearchProblem p);

/// Every permutation of the carrier preserving 0, 1, sums and complements.
std::vector<std::vector<Index>> ea_automorphisms(const FiniteEATable& ea);

/// Lexicographically least relabeling of `t` under the given automorphisms.
ProductTable canonical_form(const ProductTable& t, const std::vector<std::vector<Index>>& automorphisms);

/// The meet product of a lattice-ordered table; nullopt if not a lattice.
std::optional<ProductTable> meet_table(const FiniteEATable& ea);

struct CorollaryEntry {
  std::size_t size = 0;
  std::size_t solutions = 0;
  bool boolean = false;
  bool all_meet = false;
  /// (solutions >= 1) => boolean and every solution is the meet; and
  /// Boolean tables have exactly one solution.
  bool consistent = false;
  std::string note;
};

struct CorollaryReport {
  std::vector<CorollaryEntry> entries;
  bool ok() const;
};

/// Runs the SEA search on each table and checks that finite SEAs are
/// Boolean algebras whose product is the meet.
CorollaryReport verify_finite_boolean_corollary(const std::vector<FiniteEATable>& eas,
                                                std::size_t size_bound = kDefaultSearchBound);

}  // namespace sea
