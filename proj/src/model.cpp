#include "sea/model.hpp"

#include "sea/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace sea {

ProductTable::ProductTable(std::size_t n, std::vector<Index> c) : size(n), cells(std::move(c)) {
  if (cells.size() != n * n) throw StructuralError("product table must have size*size entries");
  for (Index v : cells) {
    if (v >= n) throw StructuralError("product table entry " + std::to_string(v) + " out of range");
  }
}

struct ModelExpr::Node {
  Kind kind;
  std::optional<FiniteEATable> table;
  std::optional<ProductTable> product;
  std::size_t atoms = 0;
  std::vector<ModelExpr> parts;  // horizontal/direct sum parts; corner base is parts[0]
  Elem idempotent;
};

namespace {

constexpr std::size_t kMaxBooleanAtoms = 62;
constexpr std::size_t kCornerBaseCap = std::size_t{1} << 20;

}  // namespace

ModelExpr ModelExpr::finite(FiniteEATable table, std::optional<ProductTable> product) {
  if (product && product->size != table.size()) {
    throw StructuralError("product table size " + std::to_string(product->size) + " does not match carrier size " +
                          std::to_string(table.size()));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finite;
  n->table = std::move(table);
  n->product = std::move(product);
  return ModelExpr(std::move(n));
}

ModelExpr ModelExpr::boolean(std::size_t atoms) {
  if (atoms == 0 || atoms > kMaxBooleanAtoms) {
    throw InputError("boolean model needs between 1 and " + std::to_string(kMaxBooleanAtoms) + " atoms");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Boolean;
  n->atoms = atoms;
  return ModelExpr(std::move(n));
}

ModelExpr ModelExpr::interval() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Interval;
  return ModelExpr(std::move(n));
}

ModelExpr ModelExpr::matrix_interval() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::MatrixInterval;
  return ModelExpr(std::move(n));
}

ModelExpr ModelExpr::horizontal_sum(std::vector<ModelExpr> parts) {
  if (parts.size() < 2) throw InputError("horizontal sum needs at least two parts");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    auto size = carrier_size(parts[k]);
    if (size && *size < 3) {
      throw InputError("horizontal sum part " + std::to_string(k) + " has only " + std::to_string(*size) +
                       " elements; degenerate parts are rejected");
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::HorizontalSum;
  n->parts = std::move(parts);
  return ModelExpr(std::move(n));
}

ModelExpr ModelExpr::direct_sum(std::vector<ModelExpr> parts) {
  if (parts.empty()) throw InputError("direct sum needs at least one part");
  auto n = std::make_shared<Node>();
  n->kind = Kind::DirectSum;
  n->parts = std::move(parts);
  return ModelExpr(std::move(n));
}

ModelExpr ModelExpr::corner(ModelExpr base, Elem idempotent) {
  if (!has_product(base)) throw InputError("corner needs a base with a sequential product");
  Elem p = canonical(base, idempotent);
  if (!membership(base, p)) throw InputError("corner element " + to_string(p) + " is not in the base carrier");
  if (!(seq_product(base, p, p) == p)) throw InputError("corner element " + to_string(p) + " is not idempotent");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Corner;
  n->parts.push_back(std::move(base));
  n->idempotent = std::move(p);
  return ModelExpr(std::move(n));
}

ModelExpr ModelExpr::trivial() {
  return finite(FiniteEATable(1, 0, {{0, 0, 0}}, {0}), ProductTable(1, {0}));
}

ModelExpr::Kind ModelExpr::kind() const { return node_->kind; }

const FiniteEATable& ModelExpr::table() const {
  if (!node_->table) throw TypeError("not a finite model");
  return *node_->table;
}

const std::optional<ProductTable>& ModelExpr::product_table() const { return node_->product; }
std::size_t ModelExpr::atoms() const { return node_->atoms; }
const std::vector<ModelExpr>& ModelExpr::parts() const { return node_->parts; }

const ModelExpr& ModelExpr::base() const {
  if (node_->kind != Kind::Corner) throw TypeError("not a corner model");
  return node_->parts.front();
}

const Elem& ModelExpr::idempotent() const { return node_->idempotent; }

bool ModelExpr::operator==(const ModelExpr& o) const {
  if (node_ == o.node_) return true;
  const Node& a = *node_;
  const Node& b = *o.node_;
  return a.kind == b.kind && a.table == b.table && a.product == b.product && a.atoms == b.atoms &&
         a.parts == b.parts && a.idempotent == b.idempotent;
}

std::string kind_name(ModelExpr::Kind k) {
  switch (k) {
    case ModelExpr::Kind::Finite: return "finite";
    case ModelExpr::Kind::Boolean: return "boolean";
    case ModelExpr::Kind::Interval: return "interval";
    case ModelExpr::Kind::MatrixInterval: return "matrix_interval";
    case ModelExpr::Kind::HorizontalSum: return "horizontal_sum";
    case ModelExpr::Kind::DirectSum: return "direct_sum";
    case ModelExpr::Kind::Corner: return "corner";
  }
  return "?";
}

std::string to_string(const ModelExpr& m) {
  std::ostringstream os;
  switch (m.kind()) {
    case ModelExpr::Kind::Finite:
      os << "finite(" << m.table().size() << (m.product_table() ? ", product" : "") << ")";
      break;
    case ModelExpr::Kind::Boolean: os << "boolean(" << m.atoms() << ")"; break;
    case ModelExpr::Kind::Interval: os << "interval"; break;
    case ModelExpr::Kind::MatrixInterval: os << "matrix_interval"; break;
    case ModelExpr::Kind::HorizontalSum:
    case ModelExpr::Kind::DirectSum:
      os << kind_name(m.kind()) << "[";
      for (std::size_t i = 0; i < m.parts().size(); ++i) os << (i ? ", " : "") << to_string(m.parts()[i]);
      os << "]";
      break;
    case ModelExpr::Kind::Corner:
      os << "corner(" << to_string(m.base()) << "; " << to_string(m.idempotent()) << ")";
      break;
  }
  return os.str();
}

bool has_product(const ModelExpr& m) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return m.product_table().has_value();
    case ModelExpr::Kind::Boolean:
    case ModelExpr::Kind::Interval:
    case ModelExpr::Kind::MatrixInterval: return true;
    case ModelExpr::Kind::HorizontalSum:
      for (const auto& p : m.parts()) {
        if (p.kind() != ModelExpr::Kind::Interval) return false;
      }
      return true;
    case ModelExpr::Kind::DirectSum:
      for (const auto& p : m.parts()) {
        if (!has_product(p)) return false;
      }
      return true;
    case ModelExpr::Kind::Corner: return true;
  }
  return false;
}

std::optional<std::size_t> carrier_size(const ModelExpr& m) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return m.table().size();
    case ModelExpr::Kind::Boolean: return std::size_t{1} << m.atoms();
    case ModelExpr::Kind::Interval:
    case ModelExpr::Kind::MatrixInterval: return std::nullopt;
    case ModelExpr::Kind::HorizontalSum: {
      std::size_t total = 2;
      for (const auto& p : m.parts()) {
        auto s = carrier_size(p);
        if (!s) return std::nullopt;
        total += *s - 2;
      }
      return total;
    }
    case ModelExpr::Kind::DirectSum: {
      std::size_t total = 1;
      for (const auto& p : m.parts()) {
        auto s = carrier_size(p);
        if (!s) return std::nullopt;
        total *= *s;
      }
      return total;
    }
    case ModelExpr::Kind::Corner: {
      const Elem& p = m.idempotent();
      if (m.base().kind() == ModelExpr::Kind::Boolean) return std::size_t{1} << std::popcount(p.as<Bits>().mask);
      if (!carrier_size(m.base())) {
        // corners of infinite families are infinite unless p is 0
        if (p == zero(m.base())) return 1;
        return std::nullopt;
      }
      return enumerate(m, kCornerBaseCap).size();
    }
  }
  return std::nullopt;
}

Elem zero(const ModelExpr& m) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return Elem::idx(m.table().zero());
    case ModelExpr::Kind::Boolean: return Elem::bits(0);
    case ModelExpr::Kind::Interval: return Elem::rat(0);
    case ModelExpr::Kind::MatrixInterval: return Elem::mat(Mat2::zero());
    case ModelExpr::Kind::HorizontalSum: return Elem::zero();
    case ModelExpr::Kind::DirectSum: {
      std::vector<Elem> parts;
      for (const auto& p : m.parts()) parts.push_back(zero(p));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: return zero(m.base());
  }
  return Elem::zero();
}

Elem one(const ModelExpr& m) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return Elem::idx(m.table().one());
    case ModelExpr::Kind::Boolean: return Elem::bits((std::uint64_t{1} << m.atoms()) - 1);
    case ModelExpr::Kind::Interval: return Elem::rat(1);
    case ModelExpr::Kind::MatrixInterval: return Elem::mat(Mat2::identity());
    case ModelExpr::Kind::HorizontalSum: return Elem::one();
    case ModelExpr::Kind::DirectSum: {
      std::vector<Elem> parts;
      for (const auto& p : m.parts()) parts.push_back(one(p));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: return m.idempotent();
  }
  return Elem::one();
}

namespace {

[[noreturn]] void mismatch(const ModelExpr& m, const Elem& e) {
  throw TypeError("element " + to_string(e) + " does not match model family " + kind_name(m.kind()));
}

// A branch element, collapsing the part's 0/1 onto the global tags.
Elem make_branch(const ModelExpr& hs, std::size_t k, Elem inner) {
  const ModelExpr& part = hs.parts()[k];
  if (inner == zero(part)) return Elem::zero();
  if (inner == one(part)) return Elem::one();
  return Elem::branch(k, std::move(inner));
}

const Tuple& tuple_of(const ModelExpr& m, const Elem& e) {
  if (!e.is<Tuple>() || e.as<Tuple>().parts.size() != m.parts().size()) mismatch(m, e);
  return e.as<Tuple>();
}

}  // namespace

Elem canonical(const ModelExpr& m, const Elem& e) {
  if (m.kind() != ModelExpr::Kind::HorizontalSum) {
    if (e.is<ZeroTag>()) return zero(m);
    if (e.is<OneTag>()) return one(m);
  }
  switch (m.kind()) {
    case ModelExpr::Kind::Finite:
      if (!e.is<FiniteIdx>()) mismatch(m, e);
      return e;
    case ModelExpr::Kind::Boolean:
      if (!e.is<Bits>()) mismatch(m, e);
      return e;
    case ModelExpr::Kind::Interval:
      if (!e.is<Rat>()) mismatch(m, e);
      return e;
    case ModelExpr::Kind::MatrixInterval:
      if (!e.is<Mat2>()) mismatch(m, e);
      return e;
    case ModelExpr::Kind::HorizontalSum: {
      if (e.is<ZeroTag>() || e.is<OneTag>()) return e;
      if (!e.is<Branch>()) mismatch(m, e);
      const auto& b = e.as<Branch>();
      if (b.part >= m.parts().size()) throw TypeError("branch index " + std::to_string(b.part) + " out of range");
      return make_branch(m, b.part, canonical(m.parts()[b.part], *b.inner));
    }
    case ModelExpr::Kind::DirectSum: {
      const auto& t = tuple_of(m, e);
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < t.parts.size(); ++i) parts.push_back(canonical(m.parts()[i], t.parts[i]));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: return canonical(m.base(), e);
  }
  return e;
}

bool matrix_member(const Mat2& a) {
  if (a == Mat2::zero() || a == Mat2::identity()) return true;
  const Rational left = a.column_sum_left();
  return left == a.column_sum_right() && left > 0 && left < 1;
}

bool membership(const ModelExpr& m, const Elem& e) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite:
      if (!e.is<FiniteIdx>()) mismatch(m, e);
      return e.as<FiniteIdx>().value < m.table().size();
    case ModelExpr::Kind::Boolean:
      if (!e.is<Bits>()) mismatch(m, e);
      return (e.as<Bits>().mask >> m.atoms()) == 0;
    case ModelExpr::Kind::Interval:
      if (!e.is<Rat>()) mismatch(m, e);
      return in_unit_interval(e.as<Rat>().value);
    case ModelExpr::Kind::MatrixInterval:
      if (!e.is<Mat2>()) mismatch(m, e);
      return matrix_member(e.as<Mat2>());
    case ModelExpr::Kind::HorizontalSum: {
      if (e.is<ZeroTag>() || e.is<OneTag>()) return true;
      if (!e.is<Branch>()) mismatch(m, e);
      const auto& b = e.as<Branch>();
      if (b.part >= m.parts().size()) return false;
      const ModelExpr& part = m.parts()[b.part];
      return membership(part, *b.inner) && !(*b.inner == zero(part)) && !(*b.inner == one(part));
    }
    case ModelExpr::Kind::DirectSum: {
      const auto& t = tuple_of(m, e);
      for (std::size_t i = 0; i < t.parts.size(); ++i) {
        if (!membership(m.parts()[i], t.parts[i])) return false;
      }
      return true;
    }
    case ModelExpr::Kind::Corner:
      return membership(m.base(), e) && leq(m.base(), e, m.idempotent());
  }
  return false;
}

std::optional<Elem> partial_sum(const ModelExpr& m, const Elem& a, const Elem& b) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: {
      auto s = m.table().sum(a.as<FiniteIdx>().value, b.as<FiniteIdx>().value);
      if (!s) return std::nullopt;
      return Elem::idx(*s);
    }
    case ModelExpr::Kind::Boolean: {
      const auto x = a.as<Bits>().mask, y = b.as<Bits>().mask;
      if (x & y) return std::nullopt;
      return Elem::bits(x | y);
    }
    case ModelExpr::Kind::Interval: {
      Rational s = a.as<Rat>().value + b.as<Rat>().value;
      if (s > 1) return std::nullopt;
      return Elem::rat(std::move(s));
    }
    case ModelExpr::Kind::MatrixInterval: {
      Mat2 s = a.as<Mat2>() + b.as<Mat2>();
      if (!matrix_member(s)) return std::nullopt;
      return Elem::mat(std::move(s));
    }
    case ModelExpr::Kind::HorizontalSum: {
      if (a.is<ZeroTag>()) return b;
      if (b.is<ZeroTag>()) return a;
      if (a.is<OneTag>() || b.is<OneTag>()) return std::nullopt;
      const auto& x = a.as<Branch>();
      const auto& y = b.as<Branch>();
      if (x.part != y.part) return std::nullopt;
      auto s = partial_sum(m.parts()[x.part], *x.inner, *y.inner);
      if (!s) return std::nullopt;
      return make_branch(m, x.part, std::move(*s));
    }
    case ModelExpr::Kind::DirectSum: {
      const auto& x = tuple_of(m, a);
      const auto& y = tuple_of(m, b);
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < x.parts.size(); ++i) {
        auto s = partial_sum(m.parts()[i], x.parts[i], y.parts[i]);
        if (!s) return std::nullopt;
        parts.push_back(std::move(*s));
      }
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: {
      auto s = partial_sum(m.base(), a, b);
      if (!s || !leq(m.base(), *s, m.idempotent())) return std::nullopt;
      return s;
    }
  }
  return std::nullopt;
}

bool summable(const ModelExpr& m, const Elem& a, const Elem& b) { return partial_sum(m, a, b).has_value(); }

Elem complement(const ModelExpr& m, const Elem& a) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return Elem::idx(m.table().perp(a.as<FiniteIdx>().value));
    case ModelExpr::Kind::Boolean: return Elem::bits(one(m).as<Bits>().mask & ~a.as<Bits>().mask);
    case ModelExpr::Kind::Interval: return Elem::rat(1 - a.as<Rat>().value);
    case ModelExpr::Kind::MatrixInterval: return Elem::mat(Mat2::identity() - a.as<Mat2>());
    case ModelExpr::Kind::HorizontalSum: {
      if (a.is<ZeroTag>()) return Elem::one();
      if (a.is<OneTag>()) return Elem::zero();
      const auto& x = a.as<Branch>();
      return make_branch(m, x.part, complement(m.parts()[x.part], *x.inner));
    }
    case ModelExpr::Kind::DirectSum: {
      const auto& x = tuple_of(m, a);
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < x.parts.size(); ++i) parts.push_back(complement(m.parts()[i], x.parts[i]));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: {
      auto d = ominus(m.base(), m.idempotent(), a);
      if (!d) throw PreconditionError("corner complement of an element not below the idempotent");
      return *d;
    }
  }
  return a;
}

Elem seq_product(const ModelExpr& m, const Elem& a, const Elem& b) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: {
      const auto& table = m.product_table();
      if (!table) throw Unsupported("no sequential product attached");
      return Elem::idx((*table)(a.as<FiniteIdx>().value, b.as<FiniteIdx>().value));
    }
    case ModelExpr::Kind::Boolean: return Elem::bits(a.as<Bits>().mask & b.as<Bits>().mask);
    case ModelExpr::Kind::Interval: return Elem::rat(a.as<Rat>().value * b.as<Rat>().value);
    case ModelExpr::Kind::MatrixInterval: return Elem::mat(a.as<Mat2>() * b.as<Mat2>());
    case ModelExpr::Kind::HorizontalSum: {
      if (!has_product(m)) throw Unsupported("no sequential product attached to this horizontal sum");
      if (a.is<ZeroTag>() || b.is<ZeroTag>()) return Elem::zero();
      if (a.is<OneTag>()) return b;
      if (b.is<OneTag>()) return a;
      // (lambda, A) o (mu, B) = (lambda * mu, A): the left branch is kept
      const auto& x = a.as<Branch>();
      const auto& y = b.as<Branch>();
      return make_branch(m, x.part, seq_product(m.parts()[x.part], *x.inner, *y.inner));
    }
    case ModelExpr::Kind::DirectSum: {
      const auto& x = tuple_of(m, a);
      const auto& y = tuple_of(m, b);
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < x.parts.size(); ++i) parts.push_back(seq_product(m.parts()[i], x.parts[i], y.parts[i]));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: return seq_product(m.base(), a, b);
  }
  return a;
}

Rational tau(const Elem& a) {
  if (!a.is<Mat2>()) throw TypeError("tau is defined on MatrixInterval elements only");
  return a.as<Mat2>().column_sum_left();
}

bool leq(const ModelExpr& m, const Elem& a, const Elem& b) {
  switch (m.kind()) {
    case ModelExpr::Kind::Boolean: return (a.as<Bits>().mask & ~b.as<Bits>().mask) == 0;
    case ModelExpr::Kind::Interval: return a.as<Rat>().value <= b.as<Rat>().value;
    default: return summable(m, a, complement(m, b));
  }
}

std::optional<Elem> ominus(const ModelExpr& m, const Elem& b, const Elem& a) {
  auto s = partial_sum(m, a, complement(m, b));
  if (!s) return std::nullopt;
  return complement(m, *s);
}

std::optional<Elem> multiple(const ModelExpr& m, const Elem& a, std::size_t n) {
  Elem acc = zero(m);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = partial_sum(m, acc, a);
    if (!s) return std::nullopt;
    acc = std::move(*s);
  }
  return acc;
}

std::optional<std::vector<Elem>> closed_form_halves(const ModelExpr& m, const Elem& a) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return std::nullopt;
    case ModelExpr::Kind::Boolean:
      // b + b needs b disjoint from itself, so b = 0
      if (a.as<Bits>().mask == 0) return std::vector<Elem>{a};
      return std::vector<Elem>{};
    case ModelExpr::Kind::Interval: return std::vector<Elem>{Elem::rat(a.as<Rat>().value / 2)};
    case ModelExpr::Kind::MatrixInterval: return std::vector<Elem>{Elem::mat(Rational(1, 2) * a.as<Mat2>())};
    case ModelExpr::Kind::HorizontalSum: {
      if (a.is<ZeroTag>()) return std::vector<Elem>{a};
      std::vector<Elem> out;
      for (std::size_t k = 0; k < m.parts().size(); ++k) {
        if (a.is<Branch>() && a.as<Branch>().part != k) continue;
        const ModelExpr& part = m.parts()[k];
        const Elem inner = a.is<OneTag>() ? one(part) : *a.as<Branch>().inner;
        auto hs = closed_form_halves(part, inner);
        if (!hs) return std::nullopt;
        for (auto& h : *hs) out.push_back(make_branch(m, k, std::move(h)));
      }
      return out;
    }
    case ModelExpr::Kind::DirectSum: {
      const auto& x = tuple_of(m, a);
      std::vector<std::vector<Elem>> acc{{}};
      for (std::size_t i = 0; i < x.parts.size(); ++i) {
        auto hs = closed_form_halves(m.parts()[i], x.parts[i]);
        if (!hs) return std::nullopt;
        std::vector<std::vector<Elem>> next;
        for (const auto& prefix : acc) {
          for (const auto& h : *hs) {
            auto row = prefix;
            row.push_back(h);
            next.push_back(std::move(row));
          }
        }
        acc = std::move(next);
      }
      std::vector<Elem> out;
      for (auto& row : acc) out.push_back(Elem::tuple(std::move(row)));
      return out;
    }
    case ModelExpr::Kind::Corner: {
      auto hs = closed_form_halves(m.base(), a);
      if (!hs) return std::nullopt;
      std::vector<Elem> out;
      for (auto& h : *hs) {
        if (leq(m.base(), h, m.idempotent())) out.push_back(std::move(h));
      }
      return out;
    }
  }
  return std::nullopt;
}

std::vector<Elem> enumerate(const ModelExpr& m, std::size_t budget) {
  if (m.kind() == ModelExpr::Kind::Interval || m.kind() == ModelExpr::Kind::MatrixInterval) {
    throw Unsupported("cannot enumerate the infinite carrier of " + kind_name(m.kind()));
  }
  if (m.kind() != ModelExpr::Kind::Corner) {
    auto size = carrier_size(m);
    if (!size) throw Unsupported("cannot enumerate the infinite carrier of " + to_string(m));
    if (*size > budget) {
      throw BudgetError("carrier of " + to_string(m) + " has " + std::to_string(*size) + " elements, budget is " +
                        std::to_string(budget));
    }
  }
  std::vector<Elem> out;
  switch (m.kind()) {
    case ModelExpr::Kind::Finite:
      for (Index i = 0; i < m.table().size(); ++i) out.push_back(Elem::idx(i));
      break;
    case ModelExpr::Kind::Boolean:
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << m.atoms()); ++x) out.push_back(Elem::bits(x));
      break;
    case ModelExpr::Kind::HorizontalSum:
      out.push_back(Elem::zero());
      out.push_back(Elem::one());
      for (std::size_t k = 0; k < m.parts().size(); ++k) {
        const ModelExpr& part = m.parts()[k];
        for (auto& e : enumerate(part, budget)) {
          if (e == zero(part) || e == one(part)) continue;
          out.push_back(Elem::branch(k, std::move(e)));
        }
      }
      break;
    case ModelExpr::Kind::DirectSum: {
      std::vector<std::vector<Elem>> acc{{}};
      for (const auto& part : m.parts()) {
        auto elems = enumerate(part, budget);
        std::vector<std::vector<Elem>> next;
        for (const auto& prefix : acc) {
          for (const auto& e : elems) {
            auto row = prefix;
            row.push_back(e);
            next.push_back(std::move(row));
          }
        }
        acc = std::move(next);
      }
      for (auto& row : acc) out.push_back(Elem::tuple(std::move(row)));
      break;
    }
    case ModelExpr::Kind::Corner: {
      const Elem& p = m.idempotent();
      if (m.base().kind() == ModelExpr::Kind::Boolean) {
        const std::uint64_t mask = p.as<Bits>().mask;
        if (std::size_t{1} << std::popcount(mask) > budget) throw BudgetError("corner carrier exceeds budget");
        // submasks in increasing order
        std::vector<std::uint64_t> subs;
        for (std::uint64_t s = mask;; s = (s - 1) & mask) {
          subs.push_back(s);
          if (s == 0) break;
        }
        for (auto it = subs.rbegin(); it != subs.rend(); ++it) out.push_back(Elem::bits(*it));
        break;
      }
      if (!carrier_size(m.base())) {
        if (p == zero(m.base())) {
          out.push_back(p);
          break;
        }
        throw Unsupported("cannot enumerate the infinite carrier of " + to_string(m));
      }
      for (auto& e : enumerate(m.base(), kCornerBaseCap)) {
        if (leq(m.base(), e, p)) out.push_back(std::move(e));
      }
      if (out.size() > budget) {
        throw BudgetError("carrier of " + to_string(m) + " has " + std::to_string(out.size()) +
                          " elements, budget is " + std::to_string(budget));
      }
      break;
    }
    default: break;
  }
  return out;
}

FiniteCarrier to_finite_carrier(const ModelExpr& m, std::size_t budget) {
  if (m.kind() == ModelExpr::Kind::Finite) {
    if (m.table().size() > budget) throw BudgetError("table exceeds budget " + std::to_string(budget));
    std::vector<Elem> labels;
    for (Index i = 0; i < m.table().size(); ++i) labels.push_back(Elem::idx(i));
    return {m.table(), std::move(labels), m.product_table()};
  }
  std::vector<Elem> labels = enumerate(m, budget);
  const Elem z = zero(m);
  std::stable_partition(labels.begin(), labels.end(), [&](const Elem& e) { return e == z; });
  std::map<Elem, Index, bool (*)(const Elem&, const Elem&)> index(elem_less);
  for (Index i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  const std::size_t n = labels.size();
  std::vector<SumEntry> sums;
  std::vector<Index> perp(n);
  for (Index i = 0; i < n; ++i) {
    perp[i] = index.at(complement(m, labels[i]));
    for (Index j = i; j < n; ++j) {
      if (auto s = partial_sum(m, labels[i], labels[j])) sums.push_back({i, j, index.at(*s)});
    }
  }
  FiniteEATable table(n, index.at(one(m)), sums, std::move(perp));
  std::optional<ProductTable> product;
  if (has_product(m)) {
    std::vector<Index> cells(n * n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) cells[i * n + j] = index.at(seq_product(m, labels[i], labels[j]));
    }
    product = ProductTable(n, std::move(cells));
  }
  return {std::move(table), std::move(labels), std::move(product)};
}

ModelReport check_model_ea_axioms(const ModelExpr& m, const std::vector<Elem>& elems, bool exhaustive) {
  ModelReport report(exhaustive);
  const Elem z = zero(m);
  const Elem u = one(m);
  for (const auto& a : elems) {
    if (!membership(m, a)) report.add("membership", {a}, "sampled element is not a carrier member");
    auto s = partial_sum(m, a, z);
    if (!s || !(*s == a)) report.add(kAxZero, {a}, "a + 0 is not a");
    const Elem c = complement(m, a);
    auto t = partial_sum(m, a, c);
    if (!t || !(*t == u)) report.add(kAxUniqueComplement, {a, c}, "a + a' is not 1");
    if (!(complement(m, c) == a)) report.add(kAxUniqueComplement, {a}, "complement is not involutive");
    if (!(a == z) && summable(m, a, u)) report.add(kAxOneSummability, {a}, "non-zero element summable with 1");
    for (const auto& b : elems) {
      auto ab = partial_sum(m, a, b);
      auto ba = partial_sum(m, b, a);
      if (ab.has_value() != ba.has_value() || (ab && !(*ab == *ba))) report.add(kAxCommutativity, {a, b});
      if (ab && !membership(m, *ab)) report.add("closure", {a, b}, "sum is not a carrier member");
      if (!(b == c) && ab && *ab == u) report.add(kAxUniqueComplement, {a, b}, "second complement");
      if (!ab) continue;
      for (const auto& cc : elems) {
        report.count();
        auto total = partial_sum(m, *ab, cc);
        if (!total) continue;
        auto bc = partial_sum(m, b, cc);
        auto rhs = bc ? partial_sum(m, a, *bc) : std::nullopt;
        if (!rhs || !(*rhs == *total)) report.add(kAxAssociativity, {a, b, cc});
      }
    }
  }
  return report;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace sea
