#pragma once

#include "sea/finite_ea.hpp"
#include "sea/sequential.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sea {

/// A scalar action lambda . a of the rational unit interval on a model.
struct AConvexAction {
  ModelExpr model;
  std::function<Elem(const Rational&, const Elem&)> rule;
  /// Description of lambda -> lambda . 1.
  std::string unit_image;

  /// Throws InputError for scalars outside [0, 1].
  Elem act(const Rational& lambda, const Elem& a) const;
};

/// lambda -> phi(lambda), the image of the unit under an action.
using ScalarMap = std::function<Elem(const Rational&)>;

/// The canonical scalar embedding lambda -> lambda . 1 of a family:
/// lambda on Interval, lambda id on MatrixInterval, (lambda, branch) on a
/// horizontal sum, componentwise on direct sums. Unsupported elsewhere.
ScalarMap unit_map(const ModelExpr& m, std::size_t branch = 0);

/// Scalars used by the action checks: 0, 1, 1/2, then small fractions.
std::vector<Rational> scalar_sample();

/// The action lambda . a = a o phi(lambda). phi must be additive and unital
/// with values in the carrier; violations throw InputError with a witness.
AConvexAction action_from_additive_map(const ModelExpr& m, ScalarMap phi, std::string description,
                                       const SeaCheckConfig& cfg = {});

inline constexpr const char* kAxActionAssociative = "lambda.(mu.a) = (lambda mu).a";
inline constexpr const char* kAxActionAdditive = "(lambda + mu).a = lambda.a + mu.a";
inline constexpr const char* kAxActionUnit = "1.a = a";
inline constexpr const char* kAxActionConvex = "lambda.(a + b) = lambda.a + lambda.b";

struct ActionReport {
  ModelReport aconvex_report;
  bool aconvex() const { return aconvex_report.ok(); }
  bool convex = true;
  /// {lambda, a, b} with lambda as a Rat element.
  std::optional<Violation<Elem>> convexity_witness;
  /// lambda . (a + b) and lambda . a + lambda . b at the witness.
  std::optional<Elem> witness_lhs;
  std::optional<Elem> witness_rhs;
};

ActionReport check_aconvex_action(const AConvexAction& act, const SeaCheckConfig& cfg = {});

enum class ConvexityClass { Convex, PurelyAConvex, AConvexMixed, Boolean, NotAConvex };

std::string to_string(ConvexityClass c);

struct ConvexityVerdict {
  ConvexityClass kind = ConvexityClass::NotAConvex;
  std::vector<Elem> halves;  // halves of 1
  std::optional<SubalgebraClosure> center;
  /// A single half that fails to be central, or a central half among
  /// several; either contradicts the theory and indicates a bad product.
  bool contradiction = false;
  std::vector<std::string> evidence;
};

/// Decides the class from the halves of 1 and the center.
ConvexityVerdict classify_convexity(const ModelExpr& m, const SeaCheckConfig& cfg = {});

struct EvidenceItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct DecompositionReport {
  ModelExpr boolean_block = ModelExpr::trivial();
  ModelExpr convex_block = ModelExpr::trivial();
  ModelExpr aconvex_block = ModelExpr::trivial();
  /// Central idempotents of the input model cutting out each block.
  Elem p_bool, p_conv, p_ac;
  /// Leaf classifications in expression order.
  std::vector<std::pair<std::string, ConvexityClass>> leaves;
  std::optional<BooleanAlgebraVerdict> boolean_verdict;
  std::vector<EvidenceItem> evidence;

  bool ok() const;
};

/// Boolean (+) convex (+) purely a-convex split of a finite model with a
/// product or of a composite expression, with every defining property
/// verified. Throws Unsupported ("cannot decompose leaf") for leaves that
/// are neither Boolean, convex nor purely a-convex.
DecompositionReport decompose(const ModelExpr& m, const SeaCheckConfig& cfg = {});

struct CommutingHalvesReport {
  bool holds = true;
  /// {a, b, c} with a | b, b = c + c and not a | c.
  std::vector<Elem> witness;
  ConvexityClass classification = ConvexityClass::NotAConvex;
  /// On a-convex models: holds iff the class is Convex.
  bool agrees_with_classification = true;
  bool exhaustive = false;
};

CommutingHalvesReport check_commuting_halves(const ModelExpr& m, const SeaCheckConfig& cfg = {});

struct AssociativityReport {
  bool associative = true;
  bool commutative = true;
  bool idempotents_central = true;
  std::vector<Elem> idempotents;
  std::vector<Elem> associativity_witness;
  std::vector<Elem> commutativity_witness;
  std::vector<Elem> centrality_witness;
  /// "horizontal sum of k intervals", "unclassified factor", or empty when
  /// the model is not an associative a-convex factor.
  std::string factor_classification;
  bool exhaustive = false;
};

AssociativityReport analyze_associativity(const ModelExpr& m, const SeaCheckConfig& cfg = {});

/// Shape of the double commutant {a}'' as an interval part and a Boolean
/// part, split by a central idempotent.
struct SpectralReport {
  ModelExpr interval_part = ModelExpr::trivial();
  ModelExpr boolean_part = ModelExpr::trivial();
  /// Members of the Boolean part, as elements of the input model.
  std::vector<Elem> boolean_members;
  /// Central idempotent whose corner carries the interval part.
  Elem splitting_idempotent;
  std::string description;
};

SpectralReport bicommutant_representation(const ModelExpr& m, const Elem& a);

}  // namespace sea
