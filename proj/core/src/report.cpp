#include "padx/report.hpp"

#include <algorithm>

namespace padx {

namespace {

Json str(const BigInt& n) { return to_decimal(n); }

template <class T, class F>
Json array_of(const T& xs, F f) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(f(x));
  return a;
}

Json opt_str(const std::optional<BigInt>& n) { return n ? Json(to_decimal(*n)) : Json(nullptr); }

}  // namespace

Json to_json(const ExtValuation& v) { return v.to_string(); }

Json to_json(const ClassifierOptions& box) {
  return {{"horizon", box.horizon},
          {"r_max", box.r_max},
          {"cap", str(box.cap)},
          {"threshold", box.threshold},
          {"index_limit", str(box.index_limit)}};
}

Json to_json(const ProductProfile& p) {
  Json j = {{"horizon", p.horizon},
            {"values", array_of(p.values, [](const ExtValuation& v) { return to_json(v); })},
            {"zero_hit", p.zero_hit}};
  j["zero_index"] = p.zero_index ? Json(*p.zero_index) : Json(nullptr);
  return j;
}

Json to_json(const TypeVerdict& v) {
  Json j = {{"verdict", category_name(v.category)}, {"horizon", v.box.horizon}};
  j["r"] = v.r >= 0 ? Json(v.r) : Json(nullptr);
  j["margins"] = array_of(v.margins, str);
  j["structural"] = array_of(v.structural, [](const StructuralMargin& s) {
    return Json{{"index", str(s.index)}, {"margin", opt_str(s.margin)}};
  });
  j["proof_tag"] = v.proof_tag ? Json(*v.proof_tag) : Json(nullptr);
  j["box"] = to_json(v.box);
  return j;
}

Json to_json(const TypeEstimate& e) {
  Json j = {{"horizon", e.horizon}};
  j["entries"] = array_of(e.entries, [](const TypeEstimate::Entry& x) {
    return Json{{"i", x.i}, {"v", to_json(x.v)}, {"ratio", x.ratio ? Json(to_string(*x.ratio)) : Json(nullptr)}};
  });
  j["radius_bound_exponent"] = e.radius_bound_exponent ? Json(to_string(*e.radius_bound_exponent)) : Json(nullptr);
  j["bound_is_partial"] = e.bound_is_partial;
  j["witness_r"] = e.witness_r ? Json(*e.witness_r) : Json(nullptr);
  j["box"] = to_json(e.box);
  return j;
}

Json to_json(const EquivalenceReport& e) {
  return {{"product", to_json(e.product)},
          {"difference_r", e.difference_r ? Json(*e.difference_r) : Json(nullptr)},
          {"agree", e.agree}};
}

Json to_json(const IdentityCheck& c) {
  auto q = [](const BigRational& x) { return to_string(x); };
  return {{"order", static_cast<long>(c.lhs.size()) - 1},
          {"lhs", array_of(c.lhs, q)},
          {"rhs", array_of(c.rhs, q)},
          {"residuals", array_of(c.residuals, q)},
          {"all_zero", c.all_zero()}};
}

Json to_json(const DivergenceTable& t) {
  Json j = {{"depth", t.depth}};
  j["rows"] = array_of(t.rows, [](const DivergenceTable::Row& r) {
    return Json{{"r", r.r}, {"j", r.j}, {"exponent", str(r.exponent)}};
  });
  j["strictly_decreasing"] = array_of(t.strictly_decreasing, [](const std::pair<long, bool>& x) {
    return Json{{"r", x.first}, {"decreasing", x.second}};
  });
  j["all_decreasing"] = t.all_decreasing();
  return j;
}

Json to_json(const LevelNorm& n) { return {{"level", n.level}, {"exponent", to_json(n.exponent)}}; }

Json to_json(const MembershipReport& m) {
  Json j = {{"finite", m.finite}, {"all_pass", m.all_pass()}};
  j["levels"] = array_of(m.levels, [](const MembershipReport::Level& l) {
    return Json{{"level", l.level}, {"passes", l.passes}, {"margins", array_of(l.margins, str)}};
  });
  return j;
}

Json to_json(const DHatMembershipReport& m) {
  Json j = {{"finite", m.finite}, {"all_pass", m.all_pass()}, {"passes_through", m.passes_through()}};
  j["levels"] = array_of(m.levels, [](const DHatMembershipReport::Level& l) {
    return Json{{"level", l.level}, {"passes", l.passes}, {"margins", array_of(l.margins, str)}};
  });
  return j;
}

Json to_json(const BFunctionData& b) {
  Json j;
  j["lambda"] = b.lambda ? Json(b.lambda->literal()) : Json(nullptr);
  j["roots"] = array_of(b.roots, [](const BFunctionData::Root& r) {
    return Json{{"root", r.value.literal()}, {"multiplicity", r.multiplicity}};
  });
  j["operator_bound"] = {{"exponent_at_level0", b.bound.exponent_at_level0}, {"order", b.bound.order}};
  j["generator_shift"] = str(b.generator_shift);
  return j;
}

Json to_json(const SufficientR& s) {
  Json j = {{"level", s.level}, {"j_max", s.j_max}};
  j["r"] = s.r ? Json(*s.r) : Json(nullptr);
  j["r_prime"] = s.r_prime;
  j["r_double_prime"] = s.r_double_prime ? Json(*s.r_double_prime) : Json(nullptr);
  j["validated"] = s.validated;
  j["min_validation_exponent"] =
      s.validation.empty() ? Json(nullptr) : str(*std::min_element(s.validation.begin(), s.validation.end()));
  j["failing_root"] = s.failing_root ? Json(*s.failing_root) : Json(nullptr);
  j["root_verdicts"] = array_of(s.root_verdicts, [](const TypeVerdict& v) { return to_json(v); });
  j["box"] = to_json(s.box);
  return j;
}

Json to_json(const ThetaPreimage& t) {
  Json j;
  j["operator"] = t.op.literal();
  j["coefficient_exponents"] = array_of(t.op.coefficients(), [](const LaurentElement& g) { return to_json(g.gauss_valuation()); });
  j["membership"] = t.membership ? to_json(*t.membership) : Json(nullptr);
  return j;
}

Json to_json(const ConstantReduction& c) {
  return {{"h", array_of(c.h, [](const DensePAdic& h) { return h.literal(); })},
          {"bound", array_of(c.bound, [](const ExtValuation& v) { return to_json(v); })},
          {"operator", c.op.literal()}};
}

Json to_json(const WitnessReport& w) {
  Json j = {{"verdict", verdict_name(w.verdict)}};
  j["steps"] = array_of(w.steps, [](const WitnessStep& s) {
    return Json{{"r", s.r},
                {"j", s.j},
                {"eps_exponent", str(s.eps_exponent)},
                {"i", str(s.i)},
                {"product_valuation", str(s.product_valuation)},
                {"margin", str(s.margin)},
                {"coefficient_exponent", str(s.coefficient_exponent)},
                {"g_exponent", str(s.g_exponent)}};
  });
  j["membership"] = to_json(w.membership);
  j["reason"] = w.reason;
  j["box"] = {{"r_max", w.r_max}, {"i_max", w.i_max}, {"cap", str(w.cap)}};
  return j;
}

Json to_json(const ProbeOptions& o) {
  return {{"classifier", to_json(o.classifier)},
          {"n_max", o.n_max},
          {"j_max", o.j_max},
          {"witness_r_max", o.witness_r_max},
          {"witness_i_max", o.witness_i_max}};
}

Json to_json(const ProbeVerdict& p) {
  Json j = {{"verdict", probe_kind_name(p.kind)}, {"conflict", p.conflict}};
  Json rs = Json::array();
  for (const auto& s : p.levels) rs.push_back({{"level", s.level}, {"r", s.r ? Json(*s.r) : Json(nullptr)}});
  j["r_per_level"] = rs;
  j["classification"] = to_json(p.classification);
  j["bfunction"] = p.bfunction ? to_json(*p.bfunction) : Json(nullptr);
  j["levels"] = array_of(p.levels, [](const SufficientR& s) { return to_json(s); });
  j["witness"] = to_json(p.witness);
  j["reason"] = p.reason;
  j["box"] = to_json(p.box);
  return j;
}

}  // namespace padx
