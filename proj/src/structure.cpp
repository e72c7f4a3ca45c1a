#include "sea/structure.hpp"

#include "sea/error.hpp"

#include <algorithm>

namespace sea {

Elem AConvexAction::act(const Rational& lambda, const Elem& a) const {
  if (!in_unit_interval(lambda)) throw InputError("scalar " + to_string(lambda) + " is outside [0, 1]");
  return rule(lambda, a);
}

ScalarMap unit_map(const ModelExpr& m, std::size_t branch) {
  switch (m.kind()) {
    case ModelExpr::Kind::Interval: return [](const Rational& l) { return Elem::rat(l); };
    case ModelExpr::Kind::MatrixInterval: return [](const Rational& l) { return Elem::mat(Mat2::scalar(l)); };
    case ModelExpr::Kind::HorizontalSum: {
      if (branch >= m.parts().size()) throw InputError("branch " + std::to_string(branch) + " out of range");
      ScalarMap inner = unit_map(m.parts()[branch], 0);
      return [m, branch, inner](const Rational& l) { return canonical(m, Elem::branch(branch, inner(l))); };
    }
    case ModelExpr::Kind::DirectSum: {
      std::vector<ScalarMap> maps;
      for (const auto& p : m.parts()) maps.push_back(unit_map(p, branch));
      return [maps](const Rational& l) {
        std::vector<Elem> parts;
        for (const auto& f : maps) parts.push_back(f(l));
        return Elem::tuple(std::move(parts));
      };
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return unit_map(view, branch);
      break;
    }
    default: break;
  }
  throw Unsupported("no scalar embedding for " + to_string(m));
}

std::vector<Rational> scalar_sample() {
  std::vector<Rational> out{Rational(0), Rational(1)};
  for (unsigned long d = 2; d <= 6; ++d) {
    for (unsigned long n = 1; n < d; ++n) {
      Rational q(n, d);
      q.canonicalize();
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  }
  return out;
}

AConvexAction action_from_additive_map(const ModelExpr& m, ScalarMap phi, std::string description,
                                       const SeaCheckConfig& cfg) {
  validate(cfg);
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  const auto scalars = scalar_sample();
  for (const auto& l : scalars) {
    const Elem v = phi(l);
    if (!membership(m, v)) throw InputError("phi(" + to_string(l) + ") = " + to_string(v) + " is not a carrier member");
  }
  if (!(phi(Rational(1)) == one(m))) throw InputError("phi(1) = " + to_string(phi(Rational(1))) + " is not 1");
  for (const auto& l : scalars) {
    for (const auto& u : scalars) {
      if (l + u > 1) continue;
      const auto s = partial_sum(m, phi(l), phi(u));
      if (!s || !(*s == phi(l + u))) {
        throw InputError("phi is not additive at (" + to_string(l) + ", " + to_string(u) + "): phi(l + u) = " +
                         to_string(phi(l + u)) + ", phi(l) + phi(u) = " + (s ? to_string(*s) : "undefined"));
      }
    }
  }
  auto rule = [m, phi](const Rational& l, const Elem& a) { return seq_product(m, a, phi(l)); };
  return AConvexAction{m, rule, std::move(description)};
}

ActionReport check_aconvex_action(const AConvexAction& act, const SeaCheckConfig& cfg) {
  const ModelExpr& m = act.model;
  const auto elems = elements_for(m, cfg).elems;
  const auto scalars = scalar_sample();
  ActionReport out;
  out.aconvex_report = ModelReport(cfg.exhaustive_report);
  ModelReport& r = out.aconvex_report;
  auto rat = [](const Rational& q) { return Elem::rat(q); };

  for (const auto& a : elems) {
    if (!(act.act(1, a) == a)) r.add(kAxActionUnit, {a}, "1.a = " + to_string(act.act(1, a)));
    for (const auto& l : scalars) {
      const Elem la = act.act(l, a);
      if (!membership(m, la)) r.add(kAxClosure, {rat(l), a}, to_string(la) + " is not a carrier member");
      for (const auto& u : scalars) {
        r.count();
        const Elem lhs = act.act(l, act.act(u, a));
        const Elem rhs = act.act(l * u, a);
        if (!(lhs == rhs)) r.add(kAxActionAssociative, {rat(l), rat(u), a}, to_string(lhs) + " vs " + to_string(rhs));
        if (l + u <= 1) {
          const auto s = partial_sum(m, la, act.act(u, a));
          const Elem whole = act.act(l + u, a);
          if (!s || !(*s == whole)) {
            r.add(kAxActionAdditive, {rat(l), rat(u), a},
                  to_string(whole) + " vs " + (s ? to_string(*s) : std::string("undefined")));
          }
        }
      }
    }
  }

  for (const auto& a : elems) {
    for (const auto& b : elems) {
      const auto ab = partial_sum(m, a, b);
      if (!ab) continue;
      for (const auto& l : scalars) {
        const Elem lhs = act.act(l, *ab);
        const auto rhs = partial_sum(m, act.act(l, a), act.act(l, b));
        if (rhs && *rhs == lhs) continue;
        if (out.convex) {
          out.convex = false;
          out.convexity_witness = Violation<Elem>{kAxActionConvex, {rat(l), a, b},
                                                  to_string(lhs) + " vs " + (rhs ? to_string(*rhs) : "undefined")};
          out.witness_lhs = lhs;
          if (rhs) out.witness_rhs = *rhs;
        }
      }
    }
  }
  return out;
}

std::string to_string(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::Convex: return "convex";
    case ConvexityClass::PurelyAConvex: return "purely a-convex";
    case ConvexityClass::AConvexMixed: return "a-convex (mixed)";
    case ConvexityClass::Boolean: return "boolean";
    case ConvexityClass::NotAConvex: return "not a-convex";
  }
  return "?";
}

namespace {

std::string list_elems(const std::vector<Elem>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + to_string(xs[i]);
  return out + "}";
}

bool central_on(const ModelExpr& m, const Elem& p, const std::vector<Elem>& elems) {
  return std::all_of(elems.begin(), elems.end(), [&](const Elem& x) { return commutes(m, p, x); });
}

bool all_idempotent(const ModelExpr& m, const std::vector<Elem>& elems) {
  return std::all_of(elems.begin(), elems.end(), [&](const Elem& x) { return is_idempotent(m, x); });
}

}  // namespace

ConvexityVerdict classify_convexity(const ModelExpr& m, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  ConvexityVerdict v;
  v.halves = halves_of(m, one(m));
  const auto elems = elements_for(m, cfg).elems;
  v.evidence.push_back("halves of 1: " + list_elems(v.halves));

  if (v.halves.empty()) {
    const bool idem = all_idempotent(m, elems);
    v.kind = idem ? ConvexityClass::Boolean : ConvexityClass::NotAConvex;
    v.evidence.push_back(std::string(idem ? "all " : "not all ") + std::to_string(elems.size()) +
                         " checked elements are idempotent");
    return v;
  }

  v.center = center(m, cfg);
  v.evidence.push_back("center: " + v.center->description);
  if (v.halves.size() == 1) {
    v.kind = ConvexityClass::Convex;
    const bool central = central_on(m, v.halves.front(), elems);
    v.contradiction = !central;
    v.evidence.push_back(std::string("the unique half is ") + (central ? "central" : "NOT central"));
    return v;
  }

  const auto& members = v.center->members;
  if (all_idempotent(m, members)) {
    v.kind = ConvexityClass::PurelyAConvex;
    v.evidence.push_back("center consists of idempotents: " + list_elems(members));
    return v;
  }
  v.kind = ConvexityClass::AConvexMixed;
  for (const auto& h : v.halves) {
    if (v.center->contains(h)) {
      v.contradiction = true;
      v.evidence.push_back("half " + to_string(h) + " is central although halves are not unique");
    }
  }
  v.evidence.push_back("center has non-idempotent members");
  return v;
}

bool DecompositionReport::ok() const {
  return std::all_of(evidence.begin(), evidence.end(), [](const EvidenceItem& e) { return e.passed; });
}

namespace {

void collect_leaves(const ModelExpr& m, std::vector<ModelExpr>& out) {
  if (m.kind() == ModelExpr::Kind::DirectSum) {
    for (const auto& p : m.parts()) collect_leaves(p, out);
  } else {
    out.push_back(m);
  }
}

void flatten_elem(const ModelExpr& m, const Elem& x, std::vector<Elem>& out) {
  if (m.kind() == ModelExpr::Kind::DirectSum) {
    const auto& xs = x.as<Tuple>().parts;
    for (std::size_t i = 0; i < xs.size(); ++i) flatten_elem(m.parts()[i], xs[i], out);
  } else {
    out.push_back(x);
  }
}

Elem rebuild_elem(const ModelExpr& m, const std::vector<Elem>& leaves, std::size_t& next) {
  if (m.kind() != ModelExpr::Kind::DirectSum) return leaves[next++];
  std::vector<Elem> parts;
  for (const auto& p : m.parts()) parts.push_back(rebuild_elem(p, leaves, next));
  return Elem::tuple(std::move(parts));
}

ModelExpr group(const std::vector<ModelExpr>& leaves) {
  if (leaves.empty()) return ModelExpr::trivial();
  if (leaves.size() == 1) return leaves.front();
  return ModelExpr::direct_sum(leaves);
}

Elem group_elem(const std::vector<Elem>& values) {
  if (values.empty()) return Elem::idx(0);
  if (values.size() == 1) return values.front();
  return Elem::tuple(values);
}

std::vector<Elem> ungroup_elem(const Elem& x, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {x};
  return x.as<Tuple>().parts;
}

enum Block { kBool = 0, kConv = 1, kAc = 2 };

struct Rearrangement {
  ModelExpr view;
  std::vector<ModelExpr> leaves;
  std::vector<Block> block_of;
  ModelExpr target;

  Elem forward(const Elem& x) const {
    std::vector<Elem> flat;
    flatten_elem(view, x, flat);
    std::vector<Elem> per_block[3];
    for (std::size_t i = 0; i < flat.size(); ++i) per_block[block_of[i]].push_back(flat[i]);
    return Elem::tuple({group_elem(per_block[0]), group_elem(per_block[1]), group_elem(per_block[2])});
  }

  Elem backward(const Elem& y) const {
    std::vector<Elem> per_block[3];
    std::size_t counts[3] = {0, 0, 0};
    for (Block b : block_of) ++counts[b];
    for (int b = 0; b < 3; ++b) per_block[b] = ungroup_elem(y.as<Tuple>().parts[b], counts[b]);
    std::size_t used[3] = {0, 0, 0};
    std::vector<Elem> flat;
    for (Block b : block_of) flat.push_back(per_block[b][used[b]++]);
    std::size_t next = 0;
    return rebuild_elem(view, flat, next);
  }
};

Elem indicator(const Rearrangement& r, Block which) {
  std::vector<Elem> flat;
  for (std::size_t i = 0; i < r.leaves.size(); ++i) {
    flat.push_back(r.block_of[i] == which ? one(r.leaves[i]) : zero(r.leaves[i]));
  }
  std::size_t next = 0;
  return rebuild_elem(r.view, flat, next);
}

}  // namespace

DecompositionReport decompose(const ModelExpr& m, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  DecompositionReport rep;
  Rearrangement r{corner_view(m), {}, {}, ModelExpr::trivial()};
  collect_leaves(r.view, r.leaves);

  std::vector<ModelExpr> blocks[3];
  for (const auto& leaf : r.leaves) {
    const ConvexityVerdict v = classify_convexity(leaf, cfg);
    rep.leaves.emplace_back(to_string(leaf), v.kind);
    Block b;
    switch (v.kind) {
      case ConvexityClass::Boolean: b = kBool; break;
      case ConvexityClass::Convex: b = kConv; break;
      case ConvexityClass::PurelyAConvex: b = kAc; break;
      default:
        throw Unsupported("cannot decompose leaf " + to_string(leaf) + " (classified " + to_string(v.kind) + ")");
    }
    rep.evidence.push_back({"leaf " + to_string(leaf) + " is " + to_string(v.kind), !v.contradiction,
                            v.evidence.empty() ? "" : v.evidence.back()});
    r.block_of.push_back(b);
    blocks[b].push_back(leaf);
  }
  rep.boolean_block = group(blocks[kBool]);
  rep.convex_block = group(blocks[kConv]);
  rep.aconvex_block = group(blocks[kAc]);
  r.target = ModelExpr::direct_sum({rep.boolean_block, rep.convex_block, rep.aconvex_block});
  rep.p_bool = indicator(r, kBool);
  rep.p_conv = indicator(r, kConv);
  rep.p_ac = indicator(r, kAc);

  const auto elems = elements_for(m, cfg).elems;
  const Elem ws[3] = {rep.p_bool, rep.p_conv, rep.p_ac};
  auto add = [&](std::string name, bool passed, std::string detail = {}) {
    rep.evidence.push_back({std::move(name), passed, std::move(detail)});
  };

  bool idem = true, central = true, orth = true;
  for (int i = 0; i < 3; ++i) {
    idem = idem && membership(m, ws[i]) && is_idempotent(m, ws[i]);
    central = central && central_on(m, ws[i], elems);
    for (int j = i + 1; j < 3; ++j) {
      orth = orth && summable(m, ws[i], ws[j]) && seq_product(m, ws[i], ws[j]) == zero(m);
    }
  }
  add("witnesses are idempotent", idem);
  add("witnesses are central", central, "against " + std::to_string(elems.size()) + " elements");
  add("witnesses are pairwise orthogonal", orth);
  std::optional<Elem> total = partial_sum(m, ws[0], ws[1]);
  if (total) total = partial_sum(m, *total, ws[2]);
  add("witnesses sum to 1", total && *total == one(m));

  const auto bool_elems = elements_for(rep.boolean_block, cfg).elems;
  add("boolean block: every element idempotent", all_idempotent(rep.boolean_block, bool_elems),
      std::to_string(bool_elems.size()) + " elements");
  for (const auto& leaf : blocks[kBool]) {
    if (leaf.kind() != ModelExpr::Kind::Finite) continue;
    BooleanAlgebraVerdict v = boolean_algebra_verdict(leaf.table());
    add("boolean block: " + to_string(leaf) + " is a Boolean algebra", v.boolean(), v.reason);
    if (r.leaves.size() == 1) rep.boolean_verdict = std::move(v);
  }

  const auto conv_halves = halves_of(rep.convex_block, one(rep.convex_block));
  const auto conv_elems = elements_for(rep.convex_block, cfg).elems;
  add("convex block: unique central half of 1",
      conv_halves.size() == 1 && central_on(rep.convex_block, conv_halves.front(), conv_elems),
      "halves " + list_elems(conv_halves));

  const SubalgebraClosure ac_center = center(rep.aconvex_block, cfg);
  add("a-convex block: center consists of idempotents", all_idempotent(rep.aconvex_block, ac_center.members),
      ac_center.description);

  const auto target_elems = elements_for(r.target, cfg).elems;
  bool bijective = true;
  for (const auto& x : elems) {
    const Elem y = r.forward(x);
    bijective = bijective && membership(r.target, y) && r.backward(y) == x;
  }
  for (const auto& y : target_elems) {
    const Elem x = r.backward(y);
    bijective = bijective && membership(m, x) && r.forward(x) == y;
  }
  add("rearrangement is a bijection", bijective,
      std::to_string(elems.size()) + " + " + std::to_string(target_elems.size()) + " elements");

  bool sums = true, products = true;
  for (const auto& x : elems) {
    const Elem fx = r.forward(x);
    for (const auto& y : elems) {
      const Elem fy = r.forward(y);
      const auto s = partial_sum(m, x, y);
      const auto fs = partial_sum(r.target, fx, fy);
      if (s.has_value() != fs.has_value() || (s && !(r.forward(*s) == *fs))) sums = false;
      if (!(r.forward(seq_product(m, x, y)) == seq_product(r.target, fx, fy))) products = false;
    }
  }
  add("rearrangement preserves sums", sums);
  add("rearrangement preserves products", products);
  return rep;
}

CommutingHalvesReport check_commuting_halves(const ModelExpr& m, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  CommutingHalvesReport out;
  const ElementSample sample = elements_for(m, cfg);
  out.exhaustive = sample.exhaustive;
  const auto& elems = sample.elems;
  for (const auto& c : elems) {
    const auto b = partial_sum(m, c, c);
    if (!b) continue;
    for (const auto& a : elems) {
      if (commutes(m, a, *b) && !commutes(m, a, c)) {
        out.holds = false;
        out.witness = {a, *b, c};
        break;
      }
    }
    if (!out.holds) break;
  }
  out.classification = classify_convexity(m, cfg).kind;
  const bool aconvex = out.classification == ConvexityClass::Convex ||
                       out.classification == ConvexityClass::PurelyAConvex ||
                       out.classification == ConvexityClass::AConvexMixed;
  if (aconvex) out.agrees_with_classification = out.holds == (out.classification == ConvexityClass::Convex);
  return out;
}

AssociativityReport analyze_associativity(const ModelExpr& m, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  AssociativityReport out;
  const ElementSample sample = elements_for(m, cfg);
  out.exhaustive = sample.exhaustive;
  const auto& e = sample.elems;
  const std::size_t n = e.size();
  std::vector<Elem> prod;
  prod.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) prod.push_back(seq_product(m, e[i], e[j]));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (out.commutative && !(prod[a * n + b] == prod[b * n + a])) {
        out.commutative = false;
        out.commutativity_witness = {e[a], e[b]};
      }
      for (std::size_t c = 0; c < n && out.associative; ++c) {
        if (!(seq_product(m, e[a], prod[b * n + c]) == seq_product(m, prod[a * n + b], e[c]))) {
          out.associative = false;
          out.associativity_witness = {e[a], e[b], e[c]};
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (prod[i * n + i] == e[i]) out.idempotents.push_back(e[i]);
  }
  if (out.associative) {
    for (const auto& p : out.idempotents) {
      for (const auto& x : e) {
        if (!commutes(m, p, x)) {
          out.idempotents_central = false;
          if (out.centrality_witness.empty()) out.centrality_witness = {p, x};
        }
      }
    }
    const SubalgebraClosure z = center(m, cfg);
    const bool center_trivial =
        z.enumerated && std::all_of(z.members.begin(), z.members.end(),
                                    [&](const Elem& x) { return x == zero(m) || x == one(m); });
    if (center_trivial && !halves_of(m, one(m)).empty()) {
      if (m.kind() == ModelExpr::Kind::HorizontalSum && has_product(m)) {
        out.factor_classification = "horizontal sum of " + std::to_string(m.parts().size()) + " intervals";
      } else {
        out.factor_classification = "unclassified factor";
      }
    }
  }
  return out;
}

namespace {

struct Piece {
  std::vector<ModelExpr> intervals;
  std::vector<ModelExpr> booleans;
  std::vector<Elem> boolean_members;
  Elem split;
};

ModelExpr boolean_of_size(std::size_t count) {
  if (count <= 1) return ModelExpr::trivial();
  std::size_t atoms = 0;
  while ((std::size_t{1} << atoms) < count) ++atoms;
  return ModelExpr::boolean(atoms);
}

Piece boolean_piece(const ModelExpr& m, const Elem& a) {
  if (!is_idempotent(m, a)) throw Unsupported(to_string(a) + " is not idempotent in " + to_string(m));
  Piece p;
  for (const Elem& x : {zero(m), a, complement(m, a), one(m)}) {
    if (std::find(p.boolean_members.begin(), p.boolean_members.end(), x) == p.boolean_members.end()) {
      p.boolean_members.push_back(x);
    }
  }
  p.booleans.push_back(boolean_of_size(p.boolean_members.size()));
  p.split = zero(m);
  return p;
}

Piece spectral_piece(const ModelExpr& m, const Elem& a) {
  switch (m.kind()) {
    case ModelExpr::Kind::Boolean: return boolean_piece(m, a);
    case ModelExpr::Kind::Interval: return {{ModelExpr::interval()}, {}, {}, one(m)};
    case ModelExpr::Kind::MatrixInterval: {
      const Mat2& x = a.as<Mat2>();
      if (x.b == 0 && x.c == 0 && x.a == x.d) return {{ModelExpr::interval()}, {}, {}, one(m)};
      throw Unsupported("double commutant representation of a non-scalar matrix is not supported");
    }
    case ModelExpr::Kind::HorizontalSum: {
      if (!has_product(m)) throw Unsupported("no sequential product attached to this horizontal sum");
      if (a.is<Branch>()) return {{m.parts()[a.as<Branch>().part]}, {}, {}, Elem::one()};
      return {{}, {ModelExpr::boolean(1)}, {Elem::zero(), Elem::one()}, Elem::zero()};
    }
    case ModelExpr::Kind::DirectSum: {
      Piece out;
      std::vector<Elem> splits;
      std::vector<std::vector<Elem>> member_lists;
      const auto& xs = a.as<Tuple>().parts;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        Piece p = spectral_piece(m.parts()[i], xs[i]);
        out.intervals.insert(out.intervals.end(), p.intervals.begin(), p.intervals.end());
        out.booleans.insert(out.booleans.end(), p.booleans.begin(), p.booleans.end());
        splits.push_back(p.split);
        // components carried by the interval part contribute 0 to Boolean members
        if (p.boolean_members.empty()) p.boolean_members.push_back(zero(m.parts()[i]));
        member_lists.push_back(std::move(p.boolean_members));
      }
      std::vector<std::vector<Elem>> acc{{}};
      for (const auto& list : member_lists) {
        std::vector<std::vector<Elem>> next;
        for (const auto& prefix : acc) {
          for (const auto& x : list) {
            auto row = prefix;
            row.push_back(x);
            next.push_back(std::move(row));
          }
        }
        acc = std::move(next);
      }
      for (auto& row : acc) out.boolean_members.push_back(Elem::tuple(std::move(row)));
      out.split = Elem::tuple(std::move(splits));
      return out;
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return spectral_piece(view, a);
      return boolean_piece(m, a);
    }
    case ModelExpr::Kind::Finite:
      if (!has_product(m)) throw Unsupported("no sequential product attached");
      return boolean_piece(m, a);
  }
  throw Unsupported("unsupported leaf " + to_string(m));
}

}  // namespace

SpectralReport bicommutant_representation(const ModelExpr& m, const Elem& a) {
  if (!membership(m, a)) throw InputError(to_string(a) + " is not a carrier member");
  Piece p = spectral_piece(m, a);
  SpectralReport out;
  std::vector<ModelExpr> bools;
  for (auto& b : p.booleans) {
    if (!(b == ModelExpr::trivial())) bools.push_back(std::move(b));
  }
  out.interval_part = group(p.intervals);
  out.boolean_part = group(bools);
  out.boolean_members = std::move(p.boolean_members);
  out.splitting_idempotent = std::move(p.split);
  out.description = "interval part " + to_string(out.interval_part) + ", boolean part " + to_string(out.boolean_part) +
                    " with " + std::to_string(out.boolean_members.size()) + " members";
  return out;
}

}  // namespace sea
