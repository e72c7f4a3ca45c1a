#pragma once

#include "sea/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sea {

struct SeaCheckConfig {
  /// Sample size for parametric carriers; triples are checked over the
  /// whole sample, so 24 gives 13824 triples.
  std::size_t sample_budget = 24;
  /// Finite carriers larger than this are refused rather than scanned.
  std::size_t enumeration_budget = 256;
  bool check_s6 = true;
  std::uint64_t seed = kDefaultSeed;
  /// Keep every violating instance instead of one per axiom.
  bool exhaustive_report = false;
};

/// Throws InputError unless sample_budget >= 8.
void validate(const SeaCheckConfig& cfg);

/// Enumeration for finite carriers, deterministic sample otherwise.
ElementSample elements_for(const ModelExpr& m, const SeaCheckConfig& cfg);

inline constexpr const char* kAxS1 = "S1";
inline constexpr const char* kAxS2 = "S2";
inline constexpr const char* kAxS3 = "S3";
inline constexpr const char* kAxS4 = "S4";
inline constexpr const char* kAxS5 = "S5";
inline constexpr const char* kAxClosure = "closure";
inline constexpr const char* kPropZeroUnit = "zero and unit";
inline constexpr const char* kPropBelowLeft = "a o b <= a";
inline constexpr const char* kPropMonotone = "monotone right factor";
inline constexpr const char* kPropIdempotentBelow = "idempotent below";
inline constexpr const char* kPropIdempotentAbove = "idempotent above";
inline constexpr const char* kPropComplementIdempotent = "complement of idempotent";
inline constexpr const char* kPropOrthogonalIdempotent = "orthogonal idempotent sum";
inline constexpr const char* kPropSelfSummable = "a o a' self-summable";
inline constexpr const char* kPropNoNilpotents = "no nilpotents";

/// S1-S5 over every enumerated or sampled triple, plus the basic derived
/// properties of a sequential product. S6 is recorded as a note only: it is
/// vacuous on finite carriers and a per-family fact on parametric ones.
/// Throws Unsupported when no product is attached.
ModelReport check_sea_axioms(const ModelExpr& m, const SeaCheckConfig& cfg = {});

inline constexpr const char* kAxMonoidUnit = "unit";
inline constexpr const char* kAxLeftDistributivity = "left distributivity";
inline constexpr const char* kAxRightDistributivity = "right distributivity";
inline constexpr const char* kAxMonoidAssociativity = "associativity";

struct EffectMonoidReport {
  ModelReport report;
  bool commutative = true;
  bool zero_symmetric = true;      // a.b = 0 implies b.a = 0
  bool zero_divisor_free = true;   // a.b = 0 implies a = 0 or b = 0
  std::vector<Elem> commutativity_witness;
  std::vector<Elem> zero_divisor_witness;

  bool ok() const { return report.ok(); }
};

/// Unit, two-sided distributivity and associativity of the attached product.
EffectMonoidReport check_effect_monoid(const ModelExpr& m, const SeaCheckConfig& cfg = {});

bool is_idempotent(const ModelExpr& m, const Elem& a);
bool commutes(const ModelExpr& m, const Elem& a, const Elem& b);

/// A sub-structure described either by its full member list or by a
/// symbolic description with a membership predicate and representatives.
struct SubalgebraClosure {
  std::vector<Elem> generators;
  /// Every member when `enumerated`; otherwise representative members.
  std::vector<Elem> members;
  bool enumerated = false;
  std::string description;
  std::function<bool(const Elem&)> contains;
  struct Flags {
    bool sum = false;
    bool complement = false;
    bool product = false;
  } closed_under;
  /// Closure flags were verified on a sample rather than on every member.
  bool sampled = false;
};

/// Z(E). Exhaustive on finite carriers, closed form per family otherwise.
SubalgebraClosure center(const ModelExpr& m, const SeaCheckConfig& cfg = {});

/// S' = {x : x | s for all s in S}. Throws Unsupported for families without
/// a closed form.
SubalgebraClosure commutant(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg = {});

/// S'' = (S')'.
SubalgebraClosure bicommutant(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg = {});

/// The largest idempotent below a.
Elem floor(const ModelExpr& m, const Elem& a);

/// The unique a' with n a' = a. Requires floor(a) = 0.
Elem divide_by_n(const ModelExpr& m, const Elem& a, std::size_t n);

/// Every b with b + b = a, sorted.
std::vector<Elem> halves_of(const ModelExpr& m, const Elem& a);

struct SqrtResult {
  Elem root;
  bool approximate = false;
  /// Bound on |root o root - a| for approximate Interval roots.
  Rational tolerance = 0;
};

inline constexpr unsigned kSqrtBits = 40;

/// Square root for families with a registered rule. Throws Unsupported for
/// MatrixInterval.
SqrtResult sqrt(const ModelExpr& m, const Elem& a);

/// A model with the same element representation where corners of direct
/// sums are pushed into the parts and trivial corners collapse.
ModelExpr corner_view(const ModelExpr& m);

}  // namespace sea
