#pragma once

#include "sea/report.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sea {

using Index = std::size_t;

/// One entry of a partial sum table: sum(i, j) = k.
struct SumEntry {
  Index i, j, k;
};

/// A finite effect algebra given by its partial-sum table.
///
/// Element 0 is always the zero. The table is stored symmetrically in
/// upper-triangular form, so commutativity holds by construction; a
/// duplicate entry for (j, i) that disagrees with (i, j) is rejected when
/// the table is built.
class FiniteEATable {
 public:
  /// Throws StructuralError on out-of-range indices, a perp map of the
  /// wrong length, or inconsistent duplicate entries.
  FiniteEATable(std::size_t size, Index one, const std::vector<SumEntry>& sums, std::vector<Index> perp);

  std::size_t size() const { return size_; }
  Index zero() const { return 0; }
  Index one() const { return one_; }
  std::optional<Index> sum(Index i, Index j) const;
  bool summable(Index i, Index j) const { return sum(i, j).has_value(); }
  Index perp(Index i) const { return perp_.at(i); }

  /// Every defined entry, once per unordered pair with i <= j.
  std::vector<SumEntry> entries() const;

  bool operator==(const FiniteEATable&) const = default;

 private:
  std::size_t slot(Index i, Index j) const;

  std::size_t size_;
  Index one_;
  std::vector<std::optional<Index>> upper_;
  std::vector<Index> perp_;
};

using EaReport = ValidationReport<Index>;

// Axiom names used in EaReport.
inline constexpr const char* kAxCommutativity = "commutativity";
inline constexpr const char* kAxZero = "zero";
inline constexpr const char* kAxAssociativity = "associativity";
inline constexpr const char* kAxUniqueComplement = "unique complement";
inline constexpr const char* kAxOneSummability = "1-summability";

/// Checks commutativity, zero, associativity, unique complement and
/// 1-summability. Each violation carries the witnessing indices.
EaReport check_ea_axioms(const FiniteEATable& t, bool exhaustive = false);

/// The derived order a <= b iff a + c = b for some c, with its differences.
class OrderRelation {
 public:
  explicit OrderRelation(const FiniteEATable& t);

  std::size_t size() const { return size_; }
  bool leq(Index i, Index j) const { return leq_[i * size_ + j] != 0; }
  /// j (-) i, defined iff leq(i, j).
  std::optional<Index> ominus(Index j, Index i) const { return ominus_[j * size_ + i]; }

 private:
  std::size_t size_;
  std::vector<char> leq_;
  std::vector<std::optional<Index>> ominus_;
};

/// Requires check_ea_axioms(t).ok(); throws PreconditionError otherwise.
OrderRelation derive_order(const FiniteEATable& t);

struct DirectedCompleteness {
  bool complete = false;
  std::string argument;
  std::vector<Index> counterexample;
};

/// Finite valid tables are always directed complete: a finite directed set
/// contains its maximum. The derived order is re-checked to be a partial
/// order with bottom 0 and top 1; any failure is returned as a witness.
DirectedCompleteness is_directed_complete_finite(const FiniteEATable& t);

/// Lattice-theoretic view of the derived order.
struct BooleanAlgebraVerdict {
  bool lattice = false;
  bool distributive = false;
  bool complemented = false;  // perp is a lattice complement
  bool boolean() const { return lattice && distributive && complemented; }
  std::vector<Index> meet;  // size*size table, filled when lattice
  std::vector<Index> join;
  std::string reason;  // first failing property, empty when boolean()
};

BooleanAlgebraVerdict boolean_algebra_verdict(const FiniteEATable& t);

/// Frequently used tables.
namespace tables {

/// {0, 1} with the only possible sums.
FiniteEATable two_element();
/// The MV-chain {0, 1/n, ..., 1} with i/n + j/n defined when i + j <= n.
FiniteEATable chain(std::size_t n);
/// The Boolean algebra on `atoms` atoms; element index = bitmask of atoms.
FiniteEATable boolean_algebra(std::size_t atoms);
/// Six elements 0, a, a', b, b', 1 where only complementary pairs sum.
FiniteEATable mo2();

}  // namespace tables

}  // namespace sea
