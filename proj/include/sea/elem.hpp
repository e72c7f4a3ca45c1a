#pragma once

#include "sea/finite_ea.hpp"
#include "sea/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace sea {

class Elem;

/// Distinguished global bottom/top of a horizontal sum.
struct ZeroTag {
  bool operator==(const ZeroTag&) const = default;
};
struct OneTag {
  bool operator==(const OneTag&) const = default;
};

struct FiniteIdx {
  Index value;
  bool operator==(const FiniteIdx&) const = default;
};

/// A subset of the atoms of Boolean(n), n <= 64.
struct Bits {
  std::uint64_t mask;
  bool operator==(const Bits&) const = default;
};

struct Rat {
  Rational value;
  bool operator==(const Rat& o) const { return value == o.value; }
};

/// Row-major 2x2 rational matrix [[a, b], [c, d]].
struct Mat2 {
  Rational a, b, c, d;

  static Mat2 zero() { return {0, 0, 0, 0}; }
  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 scalar(const Rational& q) { return {q, 0, 0, q}; }

  Rational column_sum_left() const { return a + c; }
  Rational column_sum_right() const { return b + d; }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator*(const Rational& q, const Mat2& x) { return {q * x.a, q * x.b, q * x.c, q * x.d}; }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

/// Element of a horizontal-sum part. `inner` is never the part's 0 or 1.
struct Branch {
  std::size_t part;
  std::shared_ptr<const Elem> inner;
  bool operator==(const Branch& o) const;
};

struct Tuple {
  std::vector<Elem> parts;
  bool operator==(const Tuple& o) const;
};

/// Tagged carrier value of a model. Immutable value type.
class Elem {
 public:
  using Value = std::variant<ZeroTag, OneTag, FiniteIdx, Bits, Rat, Mat2, Branch, Tuple>;

  Elem() : v_(ZeroTag{}) {}
  Elem(Value v) : v_(std::move(v)) {}

  static Elem zero() { return Elem(ZeroTag{}); }
  static Elem one() { return Elem(OneTag{}); }
  static Elem idx(Index i) { return Elem(FiniteIdx{i}); }
  static Elem bits(std::uint64_t mask) { return Elem(Bits{mask}); }
  // Factories store rationals in lowest terms; mpq equality assumes canonical form.
  static Elem rat(Rational q) {
    q.canonicalize();
    return Elem(Rat{std::move(q)});
  }
  static Elem mat(Mat2 m) {
    for (Rational* x : {&m.a, &m.b, &m.c, &m.d}) x->canonicalize();
    return Elem(std::move(m));
  }
  static Elem branch(std::size_t part, Elem inner) {
    return Elem(Branch{part, std::make_shared<const Elem>(std::move(inner))});
  }
  static Elem tuple(std::vector<Elem> parts) { return Elem(Tuple{std::move(parts)}); }

  const Value& value() const { return v_; }

  template <class T>
  bool is() const { return std::holds_alternative<T>(v_); }
  template <class T>
  const T& as() const { return std::get<T>(v_); }

  bool operator==(const Elem& o) const { return v_ == o.v_; }

 private:
  Value v_;
};

/// Compact human-readable form, e.g. "1/2@1" for a branch element.
std::string to_string(const Elem& e);

/// A strict total order on elements of the same shape, for deterministic
/// sorting and de-duplication.
bool elem_less(const Elem& x, const Elem& y);

}  // namespace sea
