#include "sea/elem.hpp"

#include <sstream>

namespace sea {

bool Branch::operator==(const Branch& o) const { return part == o.part && *inner == *o.inner; }
bool Tuple::operator==(const Tuple& o) const { return parts == o.parts; }

namespace {

struct Printer {
  std::ostringstream& os;

  void operator()(const ZeroTag&) const { os << "0"; }
  void operator()(const OneTag&) const { os << "1"; }
  void operator()(const FiniteIdx& i) const { os << "#" << i.value; }
  void operator()(const Bits& b) const {
    os << "{";
    bool first = true;
    for (unsigned k = 0; k < 64; ++k) {
      if (b.mask >> k & 1u) {
        os << (first ? "" : ",") << k;
        first = false;
      }
    }
    os << "}";
  }
  void operator()(const Rat& r) const { os << r.value.get_str(); }
  void operator()(const Mat2& m) const {
    os << "[[" << m.a.get_str() << "," << m.b.get_str() << "],[" << m.c.get_str() << "," << m.d.get_str() << "]]";
  }
  void operator()(const Branch& b) const { os << to_string(*b.inner) << "@" << b.part; }
  void operator()(const Tuple& t) const {
    os << "(";
    for (std::size_t i = 0; i < t.parts.size(); ++i) os << (i ? ", " : "") << to_string(t.parts[i]);
    os << ")";
  }
};

int cmp(const Rational& a, const Rational& b) { return ::cmp(a, b); }

int compare(const Elem& x, const Elem& y);

int compare_mat(const Mat2& x, const Mat2& y) {
  for (auto [p, q] : {std::pair{&x.a, &y.a}, {&x.b, &y.b}, {&x.c, &y.c}, {&x.d, &y.d}}) {
    if (int c = cmp(*p, *q)) return c;
  }
  return 0;
}

int compare(const Elem& x, const Elem& y) {
  const auto& xv = x.value();
  const auto& yv = y.value();
  if (xv.index() != yv.index()) return xv.index() < yv.index() ? -1 : 1;
  return std::visit(
      [&](const auto& a) -> int {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(yv);
        if constexpr (std::is_same_v<T, ZeroTag> || std::is_same_v<T, OneTag>) {
          return 0;
        } else if constexpr (std::is_same_v<T, FiniteIdx>) {
          return a.value == b.value ? 0 : (a.value < b.value ? -1 : 1);
        } else if constexpr (std::is_same_v<T, Bits>) {
          return a.mask == b.mask ? 0 : (a.mask < b.mask ? -1 : 1);
        } else if constexpr (std::is_same_v<T, Rat>) {
          return cmp(a.value, b.value);
        } else if constexpr (std::is_same_v<T, Mat2>) {
          return compare_mat(a, b);
        } else if constexpr (std::is_same_v<T, Branch>) {
          if (a.part != b.part) return a.part < b.part ? -1 : 1;
          return compare(*a.inner, *b.inner);
        } else {
          const std::size_t n = std::min(a.parts.size(), b.parts.size());
          for (std::size_t i = 0; i < n; ++i) {
            if (int c = compare(a.parts[i], b.parts[i])) return c;
          }
          if (a.parts.size() == b.parts.size()) return 0;
          return a.parts.size() < b.parts.size() ? -1 : 1;
        }
      },
      xv);
}

}  // namespace

std::string to_string(const Elem& e) {
  std::ostringstream os;
  std::visit(Printer{os}, e.value());
  return os.str();
}

bool elem_less(const Elem& x, const Elem& y) { return compare(x, y) < 0; }

}  // namespace sea
