#include "sea/error.hpp"
#include "sea/model.hpp"

#include <algorithm>

namespace sea {

namespace {

const Rational kEpsilon(1, 1024);

// `spread` widens the denominator range so that large budgets still find
// fresh values.
Rational random_unit_rational(SplitMix64& rng, std::uint64_t spread) {
  const std::uint64_t den = 1 + rng.below(24 + spread);
  const std::uint64_t num = rng.below(den + 1);
  Rational q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

Rational random_signed_rational(SplitMix64& rng, std::uint64_t spread) {
  const std::uint64_t den = 1 + rng.below(12 + spread);
  const std::int64_t num = static_cast<std::int64_t>(rng.below(4 * den + 1)) - static_cast<std::int64_t>(2 * den);
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

Elem random_member(const ModelExpr& m, SplitMix64& rng, std::uint64_t spread) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: return Elem::idx(rng.below(m.table().size()));
    case ModelExpr::Kind::Boolean: return Elem::bits(rng.below(std::uint64_t{1} << m.atoms()));
    case ModelExpr::Kind::Interval: return Elem::rat(random_unit_rational(rng, spread));
    case ModelExpr::Kind::MatrixInterval: {
      const auto pick = rng.below(16);
      if (pick == 0) return Elem::mat(Mat2::zero());
      if (pick == 1) return Elem::mat(Mat2::identity());
      Rational t;
      do t = random_unit_rational(rng, spread); while (t == 0 || t == 1);
      // free entries a, b; c and d are fixed by the common column sum t
      Rational a = random_signed_rational(rng, spread);
      Rational b = random_signed_rational(rng, spread);
      return Elem::mat(Mat2{a, b, t - a, t - b});
    }
    case ModelExpr::Kind::HorizontalSum: {
      const auto pick = rng.below(8);
      if (pick == 0) return Elem::zero();
      if (pick == 1) return Elem::one();
      const std::size_t k = rng.below(m.parts().size());
      const ModelExpr& part = m.parts()[k];
      for (;;) {
        Elem inner = random_member(part, rng, spread);
        if (!(inner == zero(part)) && !(inner == one(part))) return Elem::branch(k, std::move(inner));
      }
    }
    case ModelExpr::Kind::DirectSum: {
      std::vector<Elem> parts;
      for (const auto& p : m.parts()) parts.push_back(random_member(p, rng, spread));
      return Elem::tuple(std::move(parts));
    }
    case ModelExpr::Kind::Corner:
      return seq_product(m.base(), m.idempotent(), random_member(m.base(), rng, spread));
  }
  return zero(m);
}

std::vector<Elem> boundary_values(const ModelExpr& m) {
  switch (m.kind()) {
    case ModelExpr::Kind::Finite:
    case ModelExpr::Kind::Boolean: return {};
    case ModelExpr::Kind::Interval: return {Elem::rat(kEpsilon), Elem::rat(1 - kEpsilon)};
    case ModelExpr::Kind::MatrixInterval:
      return {Elem::mat(Mat2::scalar(kEpsilon)), Elem::mat(Mat2::scalar(1 - kEpsilon)),
              Elem::mat(Mat2{kEpsilon, Rational(-1, 2), 0, kEpsilon + Rational(1, 2)})};
    case ModelExpr::Kind::HorizontalSum: {
      std::vector<Elem> out;
      for (std::size_t k = 0; k < m.parts().size(); ++k) {
        for (auto& e : boundary_values(m.parts()[k])) out.push_back(Elem::branch(k, std::move(e)));
      }
      return out;
    }
    case ModelExpr::Kind::DirectSum: {
      std::vector<std::vector<Elem>> per_part;
      std::size_t longest = 0;
      for (const auto& p : m.parts()) {
        per_part.push_back(boundary_values(p));
        longest = std::max(longest, per_part.back().size());
      }
      // the j-th tuple takes each part's j-th boundary value, or its 0 when exhausted
      std::vector<Elem> out;
      for (std::size_t j = 0; j < longest; ++j) {
        std::vector<Elem> row;
        for (std::size_t i = 0; i < per_part.size(); ++i) {
          row.push_back(j < per_part[i].size() ? per_part[i][j] : zero(m.parts()[i]));
        }
        out.push_back(Elem::tuple(std::move(row)));
      }
      return out;
    }
    case ModelExpr::Kind::Corner: {
      std::vector<Elem> out;
      for (const auto& e : boundary_values(m.base())) out.push_back(seq_product(m.base(), m.idempotent(), e));
      return out;
    }
  }
  return {};
}

}  // namespace

ElementSample enumerate_or_sample(const ModelExpr& m, std::size_t budget, std::uint64_t seed) {
  ElementSample out;
  out.seed = seed;
  if (carrier_size(m)) {
    out.elems = enumerate(m, budget);
    out.exhaustive = true;
    return out;
  }

  std::vector<Elem> mandatory{zero(m), one(m)};
  if (auto halves = closed_form_halves(m, one(m))) {
    for (auto& h : *halves) mandatory.push_back(std::move(h));
  }
  auto contains = [&](const Elem& e) { return std::find(out.elems.begin(), out.elems.end(), e) != out.elems.end(); };
  for (auto& e : mandatory) {
    if (!contains(e)) out.elems.push_back(std::move(e));
  }
  if (out.elems.size() > budget) {
    throw InputError("sample budget " + std::to_string(budget) + " is smaller than the " +
                     std::to_string(out.elems.size()) + " mandatory sample elements");
  }
  for (auto& e : boundary_values(m)) {
    if (out.elems.size() == budget) break;
    if (!contains(e)) out.elems.push_back(std::move(e));
  }
  SplitMix64 rng(seed);
  std::uint64_t misses = 0;
  while (out.elems.size() < budget) {
    Elem e = random_member(m, rng, misses / 8);
    if (contains(e)) {
      ++misses;
    } else {
      out.elems.push_back(std::move(e));
    }
  }
  for (const auto& e : out.elems) {
    if (!membership(m, e)) throw std::logic_error("sampler produced a non-member " + to_string(e));
  }
  return out;
}

}  // namespace sea
