#include "sea/sequential.hpp"

#include "sea/error.hpp"

#include <algorithm>

namespace sea {

void validate(const SeaCheckConfig& cfg) {
  if (cfg.sample_budget < 8) throw InputError("sample_budget must be at least 8");
}

ElementSample elements_for(const ModelExpr& m, const SeaCheckConfig& cfg) {
  validate(cfg);
  if (carrier_size(m)) return enumerate_or_sample(m, cfg.enumeration_budget, cfg.seed);
  return enumerate_or_sample(m, cfg.sample_budget, cfg.seed);
}

bool is_idempotent(const ModelExpr& m, const Elem& a) { return seq_product(m, a, a) == a; }

bool commutes(const ModelExpr& m, const Elem& a, const Elem& b) {
  return seq_product(m, a, b) == seq_product(m, b, a);
}

namespace {

std::string show(const Elem& e) { return to_string(e); }

// Shared per-element data so the triple loops do not recompute products.
struct Precomputed {
  const ModelExpr& m;
  const std::vector<Elem>& e;
  std::size_t n;
  std::vector<Elem> perp;
  std::vector<Elem> prod;                  // prod[i*n+j] = e[i] o e[j]
  std::vector<std::optional<Elem>> sum;    // sum[i*n+j] = e[i] + e[j]

  Precomputed(const ModelExpr& model, const std::vector<Elem>& elems) : m(model), e(elems), n(elems.size()) {
    perp.reserve(n);
    for (const auto& a : e) perp.push_back(complement(m, a));
    prod.reserve(n * n);
    sum.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        prod.push_back(seq_product(m, e[i], e[j]));
        sum.push_back(partial_sum(m, e[i], e[j]));
      }
    }
  }

  const Elem& p(std::size_t i, std::size_t j) const { return prod[i * n + j]; }
  const std::optional<Elem>& s(std::size_t i, std::size_t j) const { return sum[i * n + j]; }
  bool comm(std::size_t i, std::size_t j) const { return p(i, j) == p(j, i); }
};

void check_s1_to_s5(const Precomputed& pc, ModelReport& r) {
  const ModelExpr& m = pc.m;
  const auto& e = pc.e;
  const std::size_t n = pc.n;
  const Elem z = zero(m);
  const Elem u = one(m);

  for (std::size_t i = 0; i < n; ++i) {
    if (!(seq_product(m, u, e[i]) == e[i])) r.add(kAxS2, {e[i]}, "1 o a = " + show(seq_product(m, u, e[i])));
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pc.p(i, j) == z && !(pc.p(j, i) == z)) {
        r.add(kAxS3, {e[i], e[j]}, "a o b = 0 but b o a = " + show(pc.p(j, i)));
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        r.count();
        // S1: a o (b + c) = a o b + a o c
        if (const auto& bc = pc.s(b, c)) {
          const Elem lhs = seq_product(m, e[a], *bc);
          const auto rhs = partial_sum(m, pc.p(a, b), pc.p(a, c));
          if (!rhs || !(*rhs == lhs)) {
            r.add(kAxS1, {e[a], e[b], e[c]},
                  "a o (b + c) = " + show(lhs) + " but a o b + a o c = " + (rhs ? show(*rhs) : "undefined"));
          }
        }
        // S4: a | b implies a o (b o c) = (a o b) o c
        if (pc.comm(a, b)) {
          const Elem lhs = seq_product(m, e[a], pc.p(b, c));
          const Elem rhs = seq_product(m, pc.p(a, b), e[c]);
          if (!(lhs == rhs)) {
            r.add(kAxS4, {e[a], e[b], e[c]}, "a | b but a o (b o c) = " + show(lhs) + " and (a o b) o c = " + show(rhs));
          }
        }
        // S5: c | a and c | b imply c | a o b, and c | a + b when defined
        if (pc.comm(c, a) && pc.comm(c, b)) {
          if (!commutes(m, e[c], pc.p(a, b))) r.add(kAxS5, {e[a], e[b], e[c]}, "c does not commute with a o b");
          if (const auto& ab = pc.s(a, b); ab && !commutes(m, e[c], *ab)) {
            r.add(kAxS5, {e[a], e[b], e[c]}, "c does not commute with a + b");
          }
        }
      }
      if (pc.comm(a, b) && !commutes(m, e[a], pc.perp[b])) {
        r.add(kAxS4, {e[a], e[b]}, "a | b but a does not commute with b'");
      }
    }
  }
}

void check_basic_properties(const Precomputed& pc, ModelReport& r) {
  const ModelExpr& m = pc.m;
  const auto& e = pc.e;
  const std::size_t n = pc.n;
  const Elem z = zero(m);
  const Elem u = one(m);

  std::vector<bool> idem(n);
  for (std::size_t i = 0; i < n; ++i) idem[i] = pc.p(i, i) == e[i];

  for (std::size_t i = 0; i < n; ++i) {
    const Elem& a = e[i];
    if (!(seq_product(m, a, z) == z) || !(seq_product(m, z, a) == z) || !(seq_product(m, a, u) == a) ||
        !(seq_product(m, u, a) == a)) {
      r.add(kPropZeroUnit, {a});
    }
    const Elem aap = seq_product(m, a, pc.perp[i]);
    if (!summable(m, aap, aap)) r.add(kPropSelfSummable, {a}, "a o a' = " + show(aap));
    if (pc.p(i, i) == z && !(a == z)) r.add(kPropNoNilpotents, {a});
    if (idem[i] && !is_idempotent(m, pc.perp[i])) r.add(kPropComplementIdempotent, {a});
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Elem& ab = pc.p(i, j);
      if (!membership(m, ab)) r.add(kAxClosure, {e[i], e[j]}, "a o b = " + show(ab) + " is not a carrier member");
      if (!leq(m, ab, e[i])) r.add(kPropBelowLeft, {e[i], e[j]}, "a o b = " + show(ab));
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!leq(m, e[a], e[b])) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!leq(m, pc.p(c, a), pc.p(c, b))) r.add(kPropMonotone, {e[a], e[b], e[c]}, "a <= b but c o a > c o b");
      }
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    if (!idem[p]) continue;
    const Elem& pe = e[p];
    const Elem& pp = pc.perp[p];
    for (std::size_t i = 0; i < n; ++i) {
      const Elem& a = e[i];
      const Elem& ap = pc.perp[i];
      const bool below[] = {leq(m, pe, a), pc.p(p, i) == pe, pc.p(i, p) == pe, seq_product(m, ap, pe) == z,
                            seq_product(m, pe, ap) == z};
      if (!std::all_of(std::begin(below), std::end(below), [&](bool v) { return v == below[0]; })) {
        r.add(kPropIdempotentBelow, {pe, a}, "p <= a equivalences disagree");
      }
      const bool above[] = {leq(m, a, pe), pc.p(p, i) == a, pc.p(i, p) == a, seq_product(m, a, pp) == z,
                            seq_product(m, pp, a) == z};
      if (!std::all_of(std::begin(above), std::end(above), [&](bool v) { return v == above[0]; })) {
        r.add(kPropIdempotentAbove, {pe, a}, "a <= p equivalences disagree");
      }
      if (const auto& s = pc.s(p, i)) {
        if (idem[i] != is_idempotent(m, *s)) r.add(kPropOrthogonalIdempotent, {pe, a}, "p + a = " + show(*s));
      }
    }
  }
}

}  // namespace

ModelReport check_sea_axioms(const ModelExpr& m, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  const ElementSample sample = elements_for(m, cfg);
  ModelReport report(cfg.exhaustive_report);
  const Precomputed pc(m, sample.elems);
  check_s1_to_s5(pc, report);
  check_basic_properties(pc, report);
  if (!cfg.check_s6) {
    report.note("S6: skipped");
  } else if (sample.exhaustive) {
    report.note("S6: vacuous on a finite carrier; every directed subset contains its maximum");
  } else {
    report.note("S6: asserted by family, not computed");
  }
  report.note(std::string(sample.exhaustive ? "exhaustive over " : "sampled ") + std::to_string(sample.elems.size()) +
              " elements, seed " + std::to_string(sample.seed));
  return report;
}

EffectMonoidReport check_effect_monoid(const ModelExpr& m, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  const ElementSample sample = elements_for(m, cfg);
  EffectMonoidReport out;
  out.report = ModelReport(cfg.exhaustive_report);
  ModelReport& r = out.report;
  const Precomputed pc(m, sample.elems);
  const auto& e = pc.e;
  const std::size_t n = pc.n;
  const Elem z = zero(m);
  const Elem u = one(m);

  for (std::size_t i = 0; i < n; ++i) {
    if (!(seq_product(m, u, e[i]) == e[i]) || !(seq_product(m, e[i], u) == e[i])) r.add(kAxMonoidUnit, {e[i]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!pc.comm(i, j) && out.commutative) {
        out.commutative = false;
        out.commutativity_witness = {e[i], e[j]};
      }
      if (pc.p(i, j) == z) {
        if (!(pc.p(j, i) == z)) out.zero_symmetric = false;
        if (!(e[i] == z) && !(e[j] == z) && out.zero_divisor_free) {
          out.zero_divisor_free = false;
          out.zero_divisor_witness = {e[i], e[j]};
        }
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        r.count();
        if (const auto& bc = pc.s(b, c)) {
          const Elem left = seq_product(m, e[a], *bc);
          const auto left_rhs = partial_sum(m, pc.p(a, b), pc.p(a, c));
          if (!left_rhs || !(*left_rhs == left)) {
            r.add(kAxLeftDistributivity, {e[a], e[b], e[c]},
                  "a.(b + c) = " + show(left) + " but a.b + a.c = " + (left_rhs ? show(*left_rhs) : "undefined"));
          }
          const Elem right = seq_product(m, *bc, e[a]);
          const auto right_rhs = partial_sum(m, pc.p(b, a), pc.p(c, a));
          if (!right_rhs || !(*right_rhs == right)) {
            r.add(kAxRightDistributivity, {e[b], e[c], e[a]},
                  "(b + c).a = " + show(right) + " but b.a + c.a = " + (right_rhs ? show(*right_rhs) : "undefined"));
          }
        }
        const Elem lhs = seq_product(m, e[a], pc.p(b, c));
        const Elem rhs = seq_product(m, pc.p(a, b), e[c]);
        if (!(lhs == rhs)) r.add(kAxMonoidAssociativity, {e[a], e[b], e[c]});
      }
    }
  }
  return out;
}

ModelExpr corner_view(const ModelExpr& m) {
  if (m.kind() != ModelExpr::Kind::Corner) return m;
  const ModelExpr& base = m.base();
  const Elem& p = m.idempotent();
  if (base.kind() == ModelExpr::Kind::Corner) return corner_view(ModelExpr::corner(base.base(), p));
  if (p == one(base)) return corner_view(base);
  if (base.kind() == ModelExpr::Kind::DirectSum) {
    std::vector<ModelExpr> parts;
    const auto& ps = p.as<Tuple>().parts;
    for (std::size_t i = 0; i < ps.size(); ++i) parts.push_back(corner_view(ModelExpr::corner(base.parts()[i], ps[i])));
    return ModelExpr::direct_sum(std::move(parts));
  }
  return m;
}

namespace {

constexpr std::size_t kScanBudget = std::size_t{1} << 16;

std::vector<Elem> scan(const ModelExpr& m) { return enumerate(m, kScanBudget); }

// Powers a, a^2, a^4, ... decrease; the first fixed point is the floor.
Elem floor_by_squaring(const ModelExpr& m, const Elem& a) {
  const std::size_t cap = carrier_size(m).value_or(64) + 2;
  Elem x = a;
  for (std::size_t i = 0; i < cap; ++i) {
    Elem y = seq_product(m, x, x);
    if (y == x) return x;
    x = std::move(y);
  }
  throw StructuralError("powers of " + to_string(a) + " do not stabilize; the product is not a sequential product");
}

bool is_interval_hs(const ModelExpr& m) { return m.kind() == ModelExpr::Kind::HorizontalSum && has_product(m); }

}  // namespace

Elem floor(const ModelExpr& m, const Elem& a) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return floor_by_squaring(m, a);
    case ModelExpr::Kind::Boolean: return a;
    case ModelExpr::Kind::Interval: return a.as<Rat>().value == 1 ? one(m) : zero(m);
    case ModelExpr::Kind::MatrixInterval: return tau(a) == 1 ? one(m) : zero(m);
    case ModelExpr::Kind::HorizontalSum:
      if (!is_interval_hs(m)) throw Unsupported("no sequential product attached to this horizontal sum");
      // branch values lie strictly inside (0, 1), so their powers tend to 0
      return a.is<OneTag>() ? Elem::one() : Elem::zero();
    case ModelExpr::Kind::DirectSum: {
      std::vector<Elem> parts;
      const auto& xs = a.as<Tuple>().parts;
      for (std::size_t i = 0; i < xs.size(); ++i) parts.push_back(floor(m.parts()[i], xs[i]));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return floor(view, a);
      return floor_by_squaring(m, a);
    }
  }
  return a;
}

Elem divide_by_n(const ModelExpr& m, const Elem& a, std::size_t n) {
  if (n == 0) throw InputError("division needs n >= 1");
  if (!(floor(m, a) == zero(m))) {
    throw PreconditionError("floor(" + to_string(a) + ") is not 0; unique division requires a zero floor");
  }
  if (n == 1) return a;
  const Rational inv(1, static_cast<unsigned long>(n));
  switch (m.kind()) {
    case ModelExpr::Kind::Interval: return Elem::rat(a.as<Rat>().value * inv);
    case ModelExpr::Kind::MatrixInterval: return Elem::mat(inv * a.as<Mat2>());
    case ModelExpr::Kind::Boolean: return a;  // floor(a) = a, so a = 0
    case ModelExpr::Kind::HorizontalSum: {
      if (a.is<ZeroTag>()) return a;
      const auto& b = a.as<Branch>();
      return canonical(m, Elem::branch(b.part, divide_by_n(m.parts()[b.part], *b.inner, n)));
    }
    case ModelExpr::Kind::DirectSum: {
      std::vector<Elem> parts;
      const auto& xs = a.as<Tuple>().parts;
      for (std::size_t i = 0; i < xs.size(); ++i) parts.push_back(divide_by_n(m.parts()[i], xs[i], n));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return divide_by_n(view, a, n);
      [[fallthrough]];
    }
    case ModelExpr::Kind::Finite: {
      std::vector<Elem> found;
      for (const auto& x : scan(m)) {
        if (auto s = multiple(m, x, n); s && *s == a) found.push_back(x);
      }
      if (found.empty()) throw Unsupported("no element x with " + std::to_string(n) + "x = " + to_string(a));
      if (found.size() > 1) throw StructuralError("division of " + to_string(a) + " is not unique");
      return found.front();
    }
  }
  throw Unsupported("division is not supported for " + kind_name(m.kind()));
}

std::vector<Elem> halves_of(const ModelExpr& m, const Elem& a) {
  std::vector<Elem> out;
  switch (m.kind()) {
    case ModelExpr::Kind::Boolean:
    case ModelExpr::Kind::Interval:
    case ModelExpr::Kind::MatrixInterval: out = *closed_form_halves(m, a); break;
    case ModelExpr::Kind::HorizontalSum:
      if (a.is<ZeroTag>()) {
        out.push_back(a);
        break;
      }
      for (std::size_t k = 0; k < m.parts().size(); ++k) {
        if (a.is<Branch>() && a.as<Branch>().part != k) continue;
        const ModelExpr& part = m.parts()[k];
        const Elem inner = a.is<OneTag>() ? one(part) : *a.as<Branch>().inner;
        for (auto& h : halves_of(part, inner)) out.push_back(canonical(m, Elem::branch(k, std::move(h))));
      }
      break;
    case ModelExpr::Kind::DirectSum: {
      std::vector<std::vector<Elem>> acc{{}};
      const auto& xs = a.as<Tuple>().parts;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto hs = halves_of(m.parts()[i], xs[i]);
        std::vector<std::vector<Elem>> next;
        for (const auto& prefix : acc) {
          for (const auto& h : hs) {
            auto row = prefix;
            row.push_back(h);
            next.push_back(std::move(row));
          }
        }
        acc = std::move(next);
      }
      for (auto& row : acc) out.push_back(Elem::tuple(std::move(row)));
      break;
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return halves_of(view, a);
      [[fallthrough]];
    }
    case ModelExpr::Kind::Finite:
      for (const auto& x : scan(m)) {
        if (auto s = partial_sum(m, x, x); s && *s == a) out.push_back(x);
      }
      break;
  }
  std::sort(out.begin(), out.end(), elem_less);
  return out;
}

SqrtResult sqrt(const ModelExpr& m, const Elem& a) {
  switch (m.kind()) {
    case ModelExpr::Kind::Boolean: return {a};
    case ModelExpr::Kind::Interval: {
      const Rational& q = a.as<Rat>().value;
      if (auto r = exact_sqrt(q)) return {Elem::rat(*r)};
      Rational r = dyadic_sqrt_floor(q, kSqrtBits);
      // r <= sqrt(q) < r + 2^-bits, so 0 <= q - r^2 < 2^(1-bits) + 2^(-2 bits)
      Rational tol(1);
      tol /= Rational(mpz_class(1) << (kSqrtBits - 1));
      return {Elem::rat(std::move(r)), true, tol};
    }
    case ModelExpr::Kind::MatrixInterval:
      throw Unsupported("square roots are not supported on matrix_interval: it is not a normal SEA");
    case ModelExpr::Kind::HorizontalSum: {
      if (!is_interval_hs(m)) throw Unsupported("no sequential product attached to this horizontal sum");
      if (!a.is<Branch>()) return {a};
      const auto& b = a.as<Branch>();
      SqrtResult inner = sqrt(m.parts()[b.part], *b.inner);
      return {canonical(m, Elem::branch(b.part, std::move(inner.root))), inner.approximate, inner.tolerance};
    }
    case ModelExpr::Kind::DirectSum: {
      SqrtResult out;
      std::vector<Elem> parts;
      const auto& xs = a.as<Tuple>().parts;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        SqrtResult r = sqrt(m.parts()[i], xs[i]);
        parts.push_back(std::move(r.root));
        out.approximate = out.approximate || r.approximate;
        if (r.tolerance > out.tolerance) out.tolerance = r.tolerance;
      }
      out.root = Elem::tuple(std::move(parts));
      return out;
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return sqrt(view, a);
      [[fallthrough]];
    }
    case ModelExpr::Kind::Finite: {
      std::vector<Elem> found;
      for (const auto& x : scan(m)) {
        if (seq_product(m, x, x) == a) found.push_back(x);
      }
      if (found.empty()) throw PreconditionError(to_string(a) + " has no square root");
      if (found.size() > 1) throw Unsupported("square root of " + to_string(a) + " is not unique in this table");
      return {found.front()};
    }
  }
  throw Unsupported("square roots are not supported for " + kind_name(m.kind()));
}

}  // namespace sea
