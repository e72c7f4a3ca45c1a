#include "sea/error.hpp"
#include "sea/sequential.hpp"

#include <algorithm>

namespace sea {

namespace {

constexpr std::size_t kMaxListed = 4096;

// S' or S'' of one model. `all` lists every member when the set is finite.
// For S'', x is a member iff x commutes with every element of `tests`.
struct Form {
  std::string description;
  std::optional<std::vector<Elem>> all;
  std::vector<Elem> tests;
};

bool commutes_with_all(const ModelExpr& m, const Elem& x, const std::vector<Elem>& s) {
  return std::all_of(s.begin(), s.end(), [&](const Elem& y) { return commutes(m, x, y); });
}

std::vector<Elem> filter(const ModelExpr& m, const std::vector<Elem>& xs, const std::vector<Elem>& s) {
  std::vector<Elem> out;
  for (const auto& x : xs) {
    if (commutes_with_all(m, x, s)) out.push_back(x);
  }
  return out;
}

bool finite_scan(const ModelExpr& m, const SeaCheckConfig& cfg) {
  auto size = carrier_size(m);
  return size && *size <= cfg.enumeration_budget;
}

bool is_scalar(const Mat2& x) { return x.b == 0 && x.c == 0 && x.a == x.d; }

// Non-scalar members of S, and whether they pairwise commute.
std::pair<std::vector<Elem>, bool> non_scalars(const std::vector<Elem>& s) {
  std::vector<Elem> out;
  for (const auto& x : s) {
    if (!is_scalar(x.as<Mat2>())) out.push_back(x);
  }
  bool commuting = true;
  for (const auto& x : out) {
    const Mat2& a = x.as<Mat2>();
    const Mat2& b = out.front().as<Mat2>();
    if (!(a * b == b * a)) commuting = false;
  }
  return {out, commuting};
}

std::vector<std::size_t> branches_used(const std::vector<Elem>& s) {
  std::vector<std::size_t> out;
  for (const auto& x : s) {
    if (x.is<Branch>() && std::find(out.begin(), out.end(), x.as<Branch>().part) == out.end()) {
      out.push_back(x.as<Branch>().part);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> project(const std::vector<Elem>& s, std::size_t i) {
  std::vector<Elem> out;
  for (const auto& x : s) out.push_back(x.as<Tuple>().parts[i]);
  return out;
}

std::optional<std::vector<Elem>> cartesian(const std::vector<std::optional<std::vector<Elem>>>& lists) {
  std::size_t total = 1;
  for (const auto& l : lists) {
    if (!l) return std::nullopt;
    total *= l->size();
    if (total > kMaxListed) return std::nullopt;
  }
  std::vector<std::vector<Elem>> acc{{}};
  for (const auto& l : lists) {
    std::vector<std::vector<Elem>> next;
    for (const auto& prefix : acc) {
      for (const auto& x : *l) {
        auto row = prefix;
        row.push_back(x);
        next.push_back(std::move(row));
      }
    }
    acc = std::move(next);
  }
  std::vector<Elem> out;
  for (auto& row : acc) out.push_back(Elem::tuple(std::move(row)));
  return out;
}

std::string join_descriptions(const std::vector<Form>& forms) {
  std::string out = "product of [";
  for (std::size_t i = 0; i < forms.size(); ++i) out += (i ? "; " : "") + forms[i].description;
  return out + "]";
}

Elem embed(const ModelExpr& ds, std::size_t i, const Elem& x) {
  std::vector<Elem> parts;
  for (std::size_t j = 0; j < ds.parts().size(); ++j) parts.push_back(j == i ? x : zero(ds.parts()[j]));
  return Elem::tuple(std::move(parts));
}

Form commutant_form(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg);
Form bicommutant_form(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg);

Form finite_commutant(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg) {
  auto members = filter(m, enumerate(m, cfg.enumeration_budget), s);
  return {"enumerated", std::move(members), {}};
}

Form finite_bicommutant(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg) {
  const auto everything = enumerate(m, cfg.enumeration_budget);
  auto first = filter(m, everything, s);
  auto members = filter(m, everything, first);
  return {"enumerated", std::move(members), std::move(first)};
}

[[noreturn]] void no_closed_form(const ModelExpr& m) {
  throw Unsupported("unsupported: symbolic commutant for " + to_string(m));
}

Form commutant_form(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg) {
  if (finite_scan(m, cfg)) return finite_commutant(m, s, cfg);
  switch (m.kind()) {
    case ModelExpr::Kind::Interval:
    case ModelExpr::Kind::Boolean: return {"whole algebra (commutative)", std::nullopt, {}};
    case ModelExpr::Kind::MatrixInterval: {
      auto [ns, commuting] = non_scalars(s);
      if (ns.empty()) return {"whole algebra", std::nullopt, {}};
      if (commuting) {
        return {"members of the form alpha id + beta X with X = " + to_string(ns.front()), std::nullopt, {}};
      }
      return {"scalar multiples q id", std::nullopt, {}};
    }
    case ModelExpr::Kind::HorizontalSum: {
      if (!has_product(m)) no_closed_form(m);
      const auto used = branches_used(s);
      if (used.empty()) return {"whole algebra", std::nullopt, {}};
      if (used.size() == 1) return {"{0, 1} and branch " + std::to_string(used.front()), std::nullopt, {}};
      return {"{0, 1}", std::vector<Elem>{Elem::zero(), Elem::one()}, {}};
    }
    case ModelExpr::Kind::DirectSum: {
      std::vector<Form> forms;
      std::vector<std::optional<std::vector<Elem>>> lists;
      for (std::size_t i = 0; i < m.parts().size(); ++i) {
        forms.push_back(commutant_form(m.parts()[i], project(s, i), cfg));
        lists.push_back(forms.back().all);
      }
      return {join_descriptions(forms), cartesian(lists), {}};
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return commutant_form(view, s, cfg);
      if (carrier_size(m)) return finite_commutant(m, s, cfg);
      no_closed_form(m);
    }
    case ModelExpr::Kind::Finite: break;
  }
  no_closed_form(m);
}

Form bicommutant_form(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg) {
  if (finite_scan(m, cfg)) return finite_bicommutant(m, s, cfg);
  switch (m.kind()) {
    case ModelExpr::Kind::Interval:
    case ModelExpr::Kind::Boolean: return {"whole algebra (commutative)", std::nullopt, {}};
    case ModelExpr::Kind::MatrixInterval: {
      auto [ns, commuting] = non_scalars(s);
      if (ns.empty()) {
        // commuting with both rank-one members forces a scalar matrix
        std::vector<Elem> tests{Elem::mat(Mat2{Rational(1, 2), Rational(1, 2), 0, 0}),
                                Elem::mat(Mat2{0, 0, Rational(1, 2), Rational(1, 2)})};
        return {"scalar multiples q id", std::nullopt, std::move(tests)};
      }
      if (commuting) {
        return {"members of the form alpha id + beta X with X = " + to_string(ns.front()), std::nullopt, {ns.front()}};
      }
      return {"whole algebra", std::nullopt, {}};
    }
    case ModelExpr::Kind::HorizontalSum: {
      if (!has_product(m)) no_closed_form(m);
      const auto used = branches_used(s);
      if (used.empty()) {
        std::vector<Elem> tests;
        for (std::size_t k = 0; k < m.parts().size(); ++k) tests.push_back(Elem::branch(k, Elem::rat(Rational(1, 2))));
        return {"{0, 1}", std::vector<Elem>{Elem::zero(), Elem::one()}, std::move(tests)};
      }
      if (used.size() == 1) {
        const std::size_t k = used.front();
        return {"{0, 1} and branch " + std::to_string(k), std::nullopt, {Elem::branch(k, Elem::rat(Rational(1, 2)))}};
      }
      return {"whole algebra", std::nullopt, {}};
    }
    case ModelExpr::Kind::DirectSum: {
      std::vector<Form> forms;
      std::vector<std::optional<std::vector<Elem>>> lists;
      std::vector<Elem> tests;
      for (std::size_t i = 0; i < m.parts().size(); ++i) {
        forms.push_back(bicommutant_form(m.parts()[i], project(s, i), cfg));
        lists.push_back(forms.back().all);
        for (const auto& t : forms.back().tests) tests.push_back(embed(m, i, t));
      }
      return {join_descriptions(forms), cartesian(lists), std::move(tests)};
    }
    case ModelExpr::Kind::Corner: {
      const ModelExpr view = corner_view(m);
      if (view.kind() != ModelExpr::Kind::Corner) return bicommutant_form(view, s, cfg);
      if (carrier_size(m)) return finite_bicommutant(m, s, cfg);
      no_closed_form(m);
    }
    case ModelExpr::Kind::Finite: break;
  }
  no_closed_form(m);
}

void require_members(const ModelExpr& m, const std::vector<Elem>& s) {
  for (const auto& x : s) {
    if (!membership(m, x)) throw InputError(to_string(x) + " is not a carrier member");
  }
}

// Representative members of a symbolic closure: the generators, one step of
// their products and complements, and the sampled carrier, all filtered.
std::vector<Elem> representatives(const ModelExpr& m, const std::vector<Elem>& s,
                                  const std::function<bool(const Elem&)>& contains, const SeaCheckConfig& cfg) {
  std::vector<Elem> candidates = elements_for(m, cfg).elems;
  for (const auto& x : s) {
    candidates.push_back(x);
    candidates.push_back(complement(m, x));
    for (const auto& y : s) candidates.push_back(seq_product(m, x, y));
  }
  std::vector<Elem> out;
  for (auto& x : candidates) {
    if (contains(x) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  }
  return out;
}

void verify_closure(const ModelExpr& m, SubalgebraClosure& c) {
  const bool has_units = c.contains(zero(m)) && c.contains(one(m));
  bool sum = has_units, comp = has_units, prod = has_units;
  for (const auto& x : c.members) {
    if (!c.contains(complement(m, x))) comp = false;
    for (const auto& y : c.members) {
      if (auto s = partial_sum(m, x, y); s && !c.contains(*s)) sum = false;
      if (!c.contains(seq_product(m, x, y))) prod = false;
    }
  }
  c.closed_under = {sum, comp, prod};
  c.sampled = !c.enumerated;
}

SubalgebraClosure finish(const ModelExpr& m, const std::vector<Elem>& gens, Form form,
                         std::function<bool(const Elem&)> contains, const SeaCheckConfig& cfg) {
  SubalgebraClosure c;
  c.generators = gens;
  c.description = std::move(form.description);
  c.contains = std::move(contains);
  if (form.all) {
    c.members = std::move(*form.all);
    c.enumerated = true;
  } else {
    c.members = representatives(m, gens, c.contains, cfg);
  }
  verify_closure(m, c);
  return c;
}

}  // namespace

SubalgebraClosure commutant(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  require_members(m, s);
  Form form = commutant_form(m, s, cfg);
  auto contains = [m, s](const Elem& x) { return commutes_with_all(m, x, s); };
  return finish(m, s, std::move(form), contains, cfg);
}

SubalgebraClosure bicommutant(const ModelExpr& m, const std::vector<Elem>& s, const SeaCheckConfig& cfg) {
  if (!has_product(m)) throw Unsupported("no sequential product attached");
  require_members(m, s);
  Form form = bicommutant_form(m, s, cfg);
  auto contains = [m, tests = form.tests](const Elem& x) { return commutes_with_all(m, x, tests); };
  return finish(m, s, std::move(form), contains, cfg);
}

SubalgebraClosure center(const ModelExpr& m, const SeaCheckConfig& cfg) {
  // Z(E) = E', and E = {}' so Z(E) = {}''
  SubalgebraClosure c = bicommutant(m, {}, cfg);
  if (c.enumerated) c.description = "enumerated center";
  return c;
}

}  // namespace sea
