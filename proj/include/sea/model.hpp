#pragma once

#include "sea/elem.hpp"
#include "sea/finite_ea.hpp"
#include "sea/report.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sea {

/// Explicit total product table (a, b) -> a o b for a finite carrier.
struct ProductTable {
  std::size_t size = 0;
  std::vector<Index> cells;

  ProductTable() = default;
  ProductTable(std::size_t n, std::vector<Index> c);
  Index operator()(Index a, Index b) const { return cells[a * size + b]; }
  bool operator==(const ProductTable&) const = default;
};

/// Algebraic description of a model built from closed families.
///
/// Immutable and cheap to copy (shared node). Construction validates the
/// family invariants: corners need an idempotent of a base with a product,
/// horizontal-sum parts need at least three elements.
class ModelExpr {
 public:
  enum class Kind { Finite, Boolean, Interval, MatrixInterval, HorizontalSum, DirectSum, Corner };

  static ModelExpr finite(FiniteEATable table, std::optional<ProductTable> product = std::nullopt);
  static ModelExpr boolean(std::size_t atoms);
  static ModelExpr interval();
  static ModelExpr matrix_interval();
  static ModelExpr horizontal_sum(std::vector<ModelExpr> parts);
  static ModelExpr direct_sum(std::vector<ModelExpr> parts);
  static ModelExpr corner(ModelExpr base, Elem idempotent);
  /// The one-element algebra (0 = 1), used for empty decomposition blocks.
  static ModelExpr trivial();

  Kind kind() const;
  const FiniteEATable& table() const;
  const std::optional<ProductTable>& product_table() const;
  std::size_t atoms() const;
  const std::vector<ModelExpr>& parts() const;
  const ModelExpr& base() const;
  const Elem& idempotent() const;

  bool operator==(const ModelExpr& o) const;

 private:
  struct Node;
  explicit ModelExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const ModelExpr& m);
std::string kind_name(ModelExpr::Kind k);

/// True when a sequential product is attached: explicit table for Finite,
/// closed-form rule otherwise (horizontal sums only when every part is an
/// Interval; sums and corners when their constituents have one).
bool has_product(const ModelExpr& m);

/// Number of carrier elements, or nullopt for infinite carriers.
std::optional<std::size_t> carrier_size(const ModelExpr& m);

Elem zero(const ModelExpr& m);
Elem one(const ModelExpr& m);

/// Rewrites Zero/One tags to the family's own 0/1 and collapses branch
/// elements whose inner value is a part's 0/1. Shape errors throw TypeError.
Elem canonical(const ModelExpr& m, const Elem& e);

/// Carrier membership. Throws TypeError if e has the wrong shape.
bool membership(const ModelExpr& m, const Elem& e);

/// Effect-algebra sum; nullopt when a and b are not summable.
std::optional<Elem> partial_sum(const ModelExpr& m, const Elem& a, const Elem& b);
bool summable(const ModelExpr& m, const Elem& a, const Elem& b);

Elem complement(const ModelExpr& m, const Elem& a);

/// Throws Unsupported when no product is attached.
Elem seq_product(const ModelExpr& m, const Elem& a, const Elem& b);

/// The common column sum of a MatrixInterval member.
Rational tau(const Elem& a);

/// MatrixInterval carrier predicate on a raw matrix.
bool matrix_member(const Mat2& a);

bool leq(const ModelExpr& m, const Elem& a, const Elem& b);
/// b (-) a, defined iff a <= b.
std::optional<Elem> ominus(const ModelExpr& m, const Elem& b, const Elem& a);

/// n-fold sum a + ... + a, if it exists.
std::optional<Elem> multiple(const ModelExpr& m, const Elem& a, std::size_t n);

/// Closed-form halves {b : b + b = a} for parametric families and
/// compounds; nullopt for Finite leaves (no closed form, scan instead).
std::optional<std::vector<Elem>> closed_form_halves(const ModelExpr& m, const Elem& a);

/// Every carrier element of a finite model. Throws BudgetError if the
/// carrier exceeds `budget`, Unsupported for infinite carriers.
std::vector<Elem> enumerate(const ModelExpr& m, std::size_t budget);

/// A finite model re-encoded as an explicit table: labels[i] is the
/// element with index i, and labels[0] is the zero.
struct FiniteCarrier {
  FiniteEATable table;
  std::vector<Elem> labels;
  std::optional<ProductTable> product;
};

/// Throws Unsupported for infinite carriers and BudgetError above `budget`.
FiniteCarrier to_finite_carrier(const ModelExpr& m, std::size_t budget);

inline constexpr std::uint64_t kDefaultSeed = 20200117;

struct ElementSample {
  std::vector<Elem> elems;
  bool exhaustive = false;  // the whole carrier
  std::uint64_t seed = 0;
};

/// Full enumeration for finite models (BudgetError if too large); for
/// models containing Interval/MatrixInterval a deterministic sample of
/// exactly `budget` distinct members. The sample starts with 0, 1, every
/// half of 1 and boundary-adjacent values, then pseudo-random rationals.
ElementSample enumerate_or_sample(const ModelExpr& m, std::size_t budget, std::uint64_t seed = kDefaultSeed);


using ModelReport = ValidationReport<Elem>;

/// The five effect-algebra axioms over every triple of the given elements.
ModelReport check_model_ea_axioms(const ModelExpr& m, const std::vector<Elem>& elems, bool exhaustive = false);

/// Deterministic splitmix64 stream, so samples do not depend on the
/// standard library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace sea
