#include "sea/search.hpp"

#include "sea/error.hpp"
#include "sea/sequential.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace sea {

std::string to_string(AxiomSet a) {
  switch (a) {
    case AxiomSet::SeaS1S5: return "sea";
    case AxiomSet::EffectMonoid: return "monoid";
    case AxiomSet::EffectMonoidWithS3: return "monoid-s3";
  }
  return "?";
}

namespace {

using Mask = std::uint32_t;
constexpr int kNone = -1;

// Dense view of the effect algebra used by the solver.
struct Ea {
  int n;
  int one;
  std::vector<int> sum;    // n*n, kNone when undefined
  std::vector<int> diff;   // diff[j*n+i] = j (-) i, kNone unless i <= j
  std::vector<int> perp;
  std::vector<int> rank;   // number of elements strictly below

  explicit Ea(const FiniteEATable& t)
      : n(static_cast<int>(t.size())), one(static_cast<int>(t.one())), sum(n * n, kNone), diff(n * n, kNone),
        perp(n), rank(n, 0) {
    for (int i = 0; i < n; ++i) {
      perp[i] = static_cast<int>(t.perp(i));
      for (int j = 0; j < n; ++j) {
        if (auto k = t.sum(i, j)) {
          sum[i * n + j] = static_cast<int>(*k);
          diff[static_cast<int>(*k) * n + i] = j;
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && leq(i, j)) ++rank[j];
      }
    }
  }

  int s(int i, int j) const { return sum[i * n + j]; }
  int d(int j, int i) const { return diff[j * n + i]; }
  bool leq(int i, int j) const { return diff[j * n + i] != kNone; }
};

// x = y + z, over three product-table cells.
struct Additive {
  int x, y, z;
};

class Solver {
 public:
  Solver(const FiniteEATable& table, const SearchProblem& p) : t_(table), ea_(table), p_(p) {
    n_ = ea_.n;
    monoid_ = p.axiom_set != AxiomSet::SeaS1S5;
    s3_ = p.axiom_set != AxiomSet::EffectMonoid;
    build_constraints();
  }

  SearchResult run() {
    dom_.assign(n_ * n_, 0);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        Mask m = 0;
        for (int v = 0; v < n_; ++v) {
          // a o b <= a always; a . b <= b as well for effect monoids
          if (ea_.leq(v, a) && (!monoid_ || ea_.leq(v, b))) m |= Mask{1} << v;
        }
        dom_[cell(a, b)] = m;
      }
    }
    bool ok = true;
    for (int v = 0; v < n_ && ok; ++v) {
      ok = restrict(cell(0, v), bit(0)) && restrict(cell(v, 0), bit(0)) && restrict(cell(ea_.one, v), bit(v)) &&
           restrict(cell(v, ea_.one), bit(v));
    }
    trail_.clear();
    if (ok && propagate() && ground_ok()) dfs();
    std::sort(result_.solutions.begin(), result_.solutions.end(),
              [](const ProductTable& a, const ProductTable& b) { return a.cells < b.cells; });
    return std::move(result_);
  }

 private:
  static Mask bit(int v) { return Mask{1} << v; }
  int cell(int a, int b) const { return a * n_ + b; }
  bool fixed(int c) const { return std::has_single_bit(dom_[c]); }
  int value(int c) const { return std::countr_zero(dom_[c]); }
  int val_or_none(int a, int b) const { return fixed(cell(a, b)) ? value(cell(a, b)) : kNone; }

  void build_constraints() {
    by_cell_.assign(n_ * n_, {});
    for (int y = 0; y < n_; ++y) {
      for (int z = y; z < n_; ++z) {
        const int x = ea_.s(y, z);
        if (x == kNone) continue;
        for (int r = 0; r < n_; ++r) {
          // r o (y + z) = r o y + r o z
          add_additive({cell(r, x), cell(r, y), cell(r, z)});
          if (monoid_) add_additive({cell(x, r), cell(y, r), cell(z, r)});
        }
      }
    }
  }

  void add_additive(Additive c) {
    const int id = static_cast<int>(additive_.size());
    additive_.push_back(c);
    for (int k : {c.x, c.y, c.z}) {
      auto& list = by_cell_[k];
      if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(id);
    }
  }

  bool restrict(int c, Mask m) {
    const Mask now = dom_[c] & m;
    if (now == dom_[c]) return true;
    trail_.push_back({c, dom_[c]});
    dom_[c] = now;
    if (now == 0) return false;
    if (std::has_single_bit(now)) queue_.push_back(c);
    return true;
  }

  bool force(int c, int v) { return v != kNone && restrict(c, bit(v)); }

  bool propagate_additive(const Additive& k) {
    const bool fx = fixed(k.x), fy = fixed(k.y), fz = fixed(k.z);
    if (fy && fz) return force(k.x, ea_.s(value(k.y), value(k.z)));
    if (fx && fy) return force(k.z, ea_.d(value(k.x), value(k.y)));
    if (fx && fz) return force(k.y, ea_.d(value(k.x), value(k.z)));
    return true;
  }

  bool propagate_zero_symmetry(int c) {
    const int a = c / n_, b = c % n_;
    const int mirror = cell(b, a);
    if (value(c) == 0) return restrict(mirror, bit(0));
    return restrict(mirror, ~bit(0));
  }

  bool propagate() {
    while (!queue_.empty()) {
      const int c = queue_.back();
      queue_.pop_back();
      for (int id : by_cell_[c]) {
        if (!propagate_additive(additive_[id])) return fail_propagation();
      }
      if (s3_ && !propagate_zero_symmetry(c)) return fail_propagation();
    }
    return true;
  }

  bool fail_propagation() {
    queue_.clear();
    return false;
  }

  bool commute(int a, int b) const {
    const int x = val_or_none(a, b), y = val_or_none(b, a);
    return x != kNone && x == y;
  }

  // Ground instances of the closure axioms (S4, S5) or associativity.
  bool ground_ok() const {
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        const int ab = val_or_none(a, b);
        if (ab == kNone) continue;
        const bool check_assoc = monoid_ || commute(a, b);
        if (!monoid_ && check_assoc) {
          const int bp = ea_.perp[b];
          const int x = val_or_none(a, bp), y = val_or_none(bp, a);
          if (x != kNone && y != kNone && x != y) return false;
        }
        for (int c = 0; c < n_; ++c) {
          if (check_assoc) {
            const int bc = val_or_none(b, c);
            if (bc != kNone) {
              const int lhs = val_or_none(a, bc), rhs = val_or_none(ab, c);
              if (lhs != kNone && rhs != kNone && lhs != rhs) return false;
            }
          }
          if (!monoid_ && commute(c, a) && commute(c, b)) {
            const int x = val_or_none(c, ab), y = val_or_none(ab, c);
            if (x != kNone && y != kNone && x != y) return false;
            const int s = ea_.s(a, b);
            if (s != kNone) {
              const int u = val_or_none(c, s), v = val_or_none(s, c);
              if (u != kNone && v != kNone && u != v) return false;
            }
          }
        }
      }
    }
    return true;
  }

  // Diagonal first, then rows already known to be idempotent, then by
  // ascending rank of row and column.
  int choose() const {
    int best = kNone;
    std::tuple<int, int, int, int> best_key{};
    for (int a = 0; a < n_; ++a) {
      const int aa = val_or_none(a, a);
      const int row_class = aa == a ? 1 : 2;
      for (int b = 0; b < n_; ++b) {
        const int c = cell(a, b);
        if (fixed(c)) continue;
        const std::tuple<int, int, int, int> key{a == b ? 0 : row_class, ea_.rank[a], ea_.rank[b], c};
        if (best == kNone || key < best_key) {
          best = c;
          best_key = key;
        }
      }
    }
    return best;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      dom_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  bool full() const { return result_.truncated; }

  void dfs() {
    const int c = choose();
    if (c == kNone) {
      record();
      return;
    }
    const Mask options = dom_[c];
    for (int v = 0; v < n_ && !full(); ++v) {
      if (!(options & bit(v))) continue;
      ++result_.node_count;
      const std::size_t mark = trail_.size();
      if (restrict(c, bit(v)) && propagate() && ground_ok()) {
        dfs();
      } else {
        ++result_.pruned_count;
      }
      undo(mark);
    }
  }

  void record() {
    std::vector<Index> cells(n_ * n_);
    for (int c = 0; c < n_ * n_; ++c) cells[c] = static_cast<Index>(value(c));
    ProductTable table(n_, std::move(cells));
    revalidate(table);
    result_.solutions.push_back(std::move(table));
    if (p_.max_solutions && result_.solutions.size() >= *p_.max_solutions) result_.truncated = true;
  }

  void revalidate(const ProductTable& table) const {
    const ModelExpr m = ModelExpr::finite(t_, table);
    SeaCheckConfig cfg;
    cfg.enumeration_budget = static_cast<std::size_t>(n_);
    bool ok;
    if (monoid_) {
      const EffectMonoidReport r = check_effect_monoid(m, cfg);
      ok = r.ok() && (!s3_ || r.zero_symmetric);
    } else {
      ok = check_sea_axioms(m, cfg).ok();
    }
    if (!ok) throw std::logic_error("search emitted a table rejected by the axiom checker");
  }

  const FiniteEATable& t_;
  Ea ea_;
  const SearchProblem& p_;
  int n_ = 0;
  bool monoid_ = false;
  bool s3_ = true;
  std::vector<Additive> additive_;
  std::vector<std::vector<int>> by_cell_;
  std::vector<Mask> dom_;
  std::vector<std::pair<int, Mask>> trail_;
  std::vector<int> queue_;
  SearchResult result_;
};

bool zero_symmetric(const ProductTable& t) {
  for (Index a = 0; a < t.size; ++a) {
    for (Index b = 0; b < t.size; ++b) {
      if (t(a, b) == 0 && t(b, a) != 0) return false;
    }
  }
  return true;
}

}  // namespace

SearchResult search_products(const SearchProblem& p) {
  if (p.ea.size() > p.size_bound) {
    throw InputError("search is limited to tables with at most " + std::to_string(p.size_bound) + " elements; got " +
                     std::to_string(p.ea.size()));
  }
  if (p.ea.size() > 32) throw InputError("search supports at most 32 elements");
  if (!check_ea_axioms(p.ea).ok()) throw PreconditionError("search requires a valid effect algebra table");
  if (p.max_solutions && *p.max_solutions == 0) throw InputError("max_solutions must be positive");

  SearchResult r = Solver(p.ea, p).run();
  r.boolean_verdict = boolean_algebra_verdict(p.ea);
  if (p.canonicalize) {
    const auto autos = ea_automorphisms(p.ea);
    for (auto& s : r.solutions) s = canonical_form(s, autos);
    std::sort(r.solutions.begin(), r.solutions.end(),
              [](const ProductTable& a, const ProductTable& b) { return a.cells < b.cells; });
    r.solutions.erase(std::unique(r.solutions.begin(), r.solutions.end()), r.solutions.end());
  }
  if (p.axiom_set != AxiomSet::SeaS1S5) {
    for (const auto& s : r.solutions) r.zero_symmetric.push_back(zero_symmetric(s));
  }
  return r;
}

SearchResult search_effect_monoids(SearchProblem p) {
  if (p.axiom_set == AxiomSet::SeaS1S5) p.axiom_set = AxiomSet::EffectMonoid;
  return search_products(p);
}

std::vector<std::vector<Index>> ea_automorphisms(const FiniteEATable& ea) {
  const std::size_t n = ea.size();
  std::vector<std::vector<Index>> out;
  std::vector<Index> sigma(n, n);
  std::vector<bool> used(n, false);

  // sigma is consistent on the assigned prefix [0, i]
  auto consistent = [&](Index i) {
    if (sigma[ea.perp(i)] != n && sigma[ea.perp(i)] != ea.perp(sigma[i])) return false;
    for (Index j = 0; j <= i; ++j) {
      const auto s = ea.sum(i, j);
      const auto t = ea.sum(sigma[i], sigma[j]);
      if (s.has_value() != t.has_value()) return false;
      if (s && sigma[*s] != n && sigma[*s] != *t) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, Index i) -> void {
    if (i == n) {
      // sums landing on later indices were only checked once assigned
      for (Index a = 0; a < n; ++a) {
        if (sigma[ea.perp(a)] != ea.perp(sigma[a])) return;
        for (Index b = 0; b < n; ++b) {
          const auto s = ea.sum(a, b);
          const auto t = ea.sum(sigma[a], sigma[b]);
          if (s.has_value() != t.has_value() || (s && sigma[*s] != *t)) return;
        }
      }
      out.push_back(sigma);
      return;
    }
    for (Index v = 0; v < n; ++v) {
      if (used[v]) continue;
      if (i == ea.zero() && v != ea.zero()) continue;
      if (i == ea.one() && v != ea.one()) continue;
      sigma[i] = v;
      used[v] = true;
      if (consistent(i)) self(self, i + 1);
      used[v] = false;
      sigma[i] = n;
    }
  };
  rec(rec, 0);
  return out;
}

ProductTable canonical_form(const ProductTable& t, const std::vector<std::vector<Index>>& automorphisms) {
  ProductTable best = t;
  const std::size_t n = t.size;
  for (const auto& sigma : automorphisms) {
    std::vector<Index> cells(n * n);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) cells[sigma[a] * n + sigma[b]] = sigma[t(a, b)];
    }
    if (cells < best.cells) best.cells = std::move(cells);
  }
  return best;
}

std::optional<ProductTable> meet_table(const FiniteEATable& ea) {
  BooleanAlgebraVerdict v = boolean_algebra_verdict(ea);
  if (!v.lattice) return std::nullopt;
  return ProductTable(ea.size(), std::move(v.meet));
}

bool CorollaryReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const CorollaryEntry& e) { return e.consistent; });
}

CorollaryReport verify_finite_boolean_corollary(const std::vector<FiniteEATable>& eas, std::size_t size_bound) {
  CorollaryReport out;
  for (const auto& ea : eas) {
    SearchProblem p{.ea = ea};
    p.size_bound = size_bound;
    const SearchResult r = search_products(p);
    CorollaryEntry e;
    e.size = ea.size();
    e.solutions = r.solutions.size();
    e.boolean = r.boolean_verdict.boolean();
    const auto meet = meet_table(ea);
    e.all_meet = std::all_of(r.solutions.begin(), r.solutions.end(),
                             [&](const ProductTable& s) { return meet && s == *meet; });
    const bool found_implies_boolean = e.solutions == 0 || (e.boolean && e.all_meet);
    const bool boolean_has_one = !e.boolean || e.solutions == 1;
    e.consistent = found_implies_boolean && boolean_has_one;
    if (!found_implies_boolean) e.note = "counterexample candidate: a product exists on a non-Boolean table";
    else if (!boolean_has_one) e.note = "Boolean table without exactly one product";
    else if (e.boolean) e.note = "Boolean algebra; the unique product is the meet";
    else e.note = "not a Boolean algebra (" + r.boolean_verdict.reason + "); no product";
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace sea
