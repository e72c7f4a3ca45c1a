#include "sea/finite_ea.hpp"

#include "sea/error.hpp"

#include <string>

namespace sea {

FiniteEATable::FiniteEATable(std::size_t size, Index one, const std::vector<SumEntry>& sums, std::vector<Index> perp)
    : size_(size), one_(one), upper_(size * (size + 1) / 2), perp_(std::move(perp)) {
  if (size_ == 0) throw StructuralError("table must have at least one element");
  if (one_ >= size_) throw StructuralError("one index " + std::to_string(one_) + " out of range");
  if (perp_.size() != size_) {
    throw StructuralError("perp has " + std::to_string(perp_.size()) + " entries, expected " + std::to_string(size_));
  }
  for (Index p : perp_) {
    if (p >= size_) throw StructuralError("perp entry " + std::to_string(p) + " out of range");
  }
  for (const auto& e : sums) {
    if (e.i >= size_ || e.j >= size_ || e.k >= size_) {
      throw StructuralError("sum entry (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")->" +
                            std::to_string(e.k) + " out of range");
    }
    auto& cell = upper_[slot(e.i, e.j)];
    if (cell && *cell != e.k) {
      throw StructuralError("inconsistent sum entries for pair (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            "): " + std::to_string(*cell) + " vs " + std::to_string(e.k));
    }
    cell = e.k;
  }
}

std::size_t FiniteEATable::slot(Index i, Index j) const {
  if (i > j) std::swap(i, j);
  // row-major upper triangle: rows 0..i-1 contribute (size - r) cells each
  return i * size_ - i * (i - 1) / 2 + (j - i);
}

std::optional<Index> FiniteEATable::sum(Index i, Index j) const {
  if (i >= size_ || j >= size_) throw StructuralError("sum index out of range");
  return upper_[slot(i, j)];
}

std::vector<SumEntry> FiniteEATable::entries() const {
  std::vector<SumEntry> out;
  for (Index i = 0; i < size_; ++i) {
    for (Index j = i; j < size_; ++j) {
      if (auto k = upper_[slot(i, j)]) out.push_back({i, j, *k});
    }
  }
  return out;
}

EaReport check_ea_axioms(const FiniteEATable& t, bool exhaustive) {
  EaReport report(exhaustive);
  const std::size_t n = t.size();

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      report.count();
      if (t.sum(i, j) != t.sum(j, i)) report.add(kAxCommutativity, {i, j});
    }
  }

  for (Index i = 0; i < n; ++i) {
    auto s = t.sum(i, t.zero());
    if (!s || *s != i) report.add(kAxZero, {i}, "sum(i, 0) is not i");
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      auto s = t.sum(i, j);
      if (!s) continue;
      for (Index k = 0; k < n; ++k) {
        auto total = t.sum(*s, k);
        if (!total) continue;
        report.count();
        auto jk = t.sum(j, k);
        if (!jk) {
          report.add(kAxAssociativity, {i, j, k}, "(i+j)+k defined but j+k is not");
          continue;
        }
        auto rhs = t.sum(i, *jk);
        if (!rhs || *rhs != *total) report.add(kAxAssociativity, {i, j, k}, "(i+j)+k != i+(j+k)");
      }
    }
  }

  for (Index i = 0; i < n; ++i) {
    const Index p = t.perp(i);
    auto s = t.sum(i, p);
    if (!s || *s != t.one()) {
      report.add(kAxUniqueComplement, {i, p}, "sum(i, perp(i)) is not one");
      continue;
    }
    for (Index j = 0; j < n; ++j) {
      if (j == p) continue;
      auto other = t.sum(i, j);
      if (other && *other == t.one()) report.add(kAxUniqueComplement, {i, j}, "a second complement exists");
    }
  }

  for (Index i = 0; i < n; ++i) {
    if (i != t.zero() && t.summable(i, t.one())) report.add(kAxOneSummability, {i}, "non-zero element summable with one");
  }
  return report;
}

OrderRelation::OrderRelation(const FiniteEATable& t)
    : size_(t.size()), leq_(size_ * size_, 0), ominus_(size_ * size_) {
  for (Index i = 0; i < size_; ++i) {
    for (Index k = 0; k < size_; ++k) {
      if (auto j = t.sum(i, k)) {
        leq_[i * size_ + *j] = 1;
        ominus_[*j * size_ + i] = k;
      }
    }
  }
}

OrderRelation derive_order(const FiniteEATable& t) {
  if (!check_ea_axioms(t).ok()) throw PreconditionError("derive_order requires a valid effect algebra table");
  return OrderRelation(t);
}

DirectedCompleteness is_directed_complete_finite(const FiniteEATable& t) {
  DirectedCompleteness out;
  const OrderRelation ord(t);
  const std::size_t n = t.size();
  for (Index i = 0; i < n; ++i) {
    if (!ord.leq(i, i)) {
      out.counterexample = {i};
      out.argument = "derived order is not reflexive";
      return out;
    }
    if (!ord.leq(t.zero(), i) || !ord.leq(i, t.one())) {
      out.counterexample = {i};
      out.argument = "derived order lacks bottom 0 or top 1";
      return out;
    }
    for (Index j = 0; j < n; ++j) {
      if (i != j && ord.leq(i, j) && ord.leq(j, i)) {
        out.counterexample = {i, j};
        out.argument = "derived order is not antisymmetric; {i, j} is directed without a supremum";
        return out;
      }
      for (Index k = 0; k < n; ++k) {
        if (ord.leq(i, j) && ord.leq(j, k) && !ord.leq(i, k)) {
          out.counterexample = {i, j, k};
          out.argument = "derived order is not transitive";
          return out;
        }
      }
    }
  }
  out.complete = true;
  out.argument = "finite partial order: every directed subset contains its maximum, which is its supremum";
  return out;
}

namespace {

std::optional<Index> bound(const OrderRelation& ord, Index a, Index b, bool lower) {
  const std::size_t n = ord.size();
  std::vector<Index> bounds;
  for (Index x = 0; x < n; ++x) {
    bool ok = lower ? (ord.leq(x, a) && ord.leq(x, b)) : (ord.leq(a, x) && ord.leq(b, x));
    if (ok) bounds.push_back(x);
  }
  for (Index c : bounds) {
    bool extremal = true;
    for (Index x : bounds) {
      if (lower ? !ord.leq(x, c) : !ord.leq(c, x)) {
        extremal = false;
        break;
      }
    }
    if (extremal) return c;
  }
  return std::nullopt;
}

}  // namespace

BooleanAlgebraVerdict boolean_algebra_verdict(const FiniteEATable& t) {
  BooleanAlgebraVerdict v;
  const OrderRelation ord(t);
  const std::size_t n = t.size();
  v.meet.assign(n * n, 0);
  v.join.assign(n * n, 0);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      auto m = bound(ord, a, b, true);
      auto j = bound(ord, a, b, false);
      if (!m || !j) {
        v.reason = "no " + std::string(!m ? "meet" : "join") + " for elements " + std::to_string(a) + " and " +
                   std::to_string(b);
        v.meet.clear();
        v.join.clear();
        return v;
      }
      v.meet[a * n + b] = *m;
      v.join[a * n + b] = *j;
    }
  }
  v.lattice = true;
  auto meet = [&](Index a, Index b) { return v.meet[a * n + b]; };
  auto join = [&](Index a, Index b) { return v.join[a * n + b]; };

  v.distributive = true;
  for (Index a = 0; a < n && v.distributive; ++a) {
    for (Index b = 0; b < n && v.distributive; ++b) {
      for (Index c = 0; c < n; ++c) {
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
          v.distributive = false;
          v.reason = "distributivity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                     std::to_string(c) + ")";
          break;
        }
      }
    }
  }

  v.complemented = true;
  for (Index a = 0; a < n; ++a) {
    if (meet(a, t.perp(a)) != t.zero() || join(a, t.perp(a)) != t.one()) {
      v.complemented = false;
      if (v.reason.empty()) v.reason = "perp(" + std::to_string(a) + ") is not a lattice complement";
      break;
    }
  }
  return v;
}

namespace tables {

FiniteEATable two_element() { return FiniteEATable(2, 1, {{0, 0, 0}, {0, 1, 1}}, {1, 0}); }

FiniteEATable chain(std::size_t n) {
  if (n == 0) throw InputError("chain needs n >= 1");
  std::vector<SumEntry> sums;
  std::vector<Index> perp(n + 1);
  for (Index i = 0; i <= n; ++i) {
    perp[i] = n - i;
    for (Index j = i; i + j <= n; ++j) sums.push_back({i, j, i + j});
  }
  return FiniteEATable(n + 1, n, sums, perp);
}

FiniteEATable boolean_algebra(std::size_t atoms) {
  if (atoms > 16) throw InputError("boolean_algebra: too many atoms for an explicit table");
  const std::size_t n = std::size_t{1} << atoms;
  const Index full = n - 1;
  std::vector<SumEntry> sums;
  std::vector<Index> perp(n);
  for (Index i = 0; i < n; ++i) {
    perp[i] = full & ~i;
    for (Index j = i; j < n; ++j) {
      if ((i & j) == 0) sums.push_back({i, j, i | j});
    }
  }
  return FiniteEATable(n, full, sums, perp);
}

FiniteEATable mo2() {
  // 0, a, a', b, b', 1
  std::vector<SumEntry> sums;
  for (Index i = 0; i < 6; ++i) sums.push_back({0, i, i});
  sums.push_back({1, 2, 5});
  sums.push_back({3, 4, 5});
  return FiniteEATable(6, 5, sums, {5, 2, 1, 4, 3, 0});
}

}  // namespace tables

}  // namespace sea
