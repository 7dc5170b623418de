#include "padx/type_classifier.hpp"

#include <algorithm>
#include <stdexcept>

#include "padx/evidence.hpp"

namespace padx {

namespace {

bool proven_type_zero(const Scalar& lambda) {
  auto c = lambda.construction();
  return c && c->rfind("lebras:", 0) == 0;
}

std::optional<BigInt> certified_margin(long r, const BigInt& index, const ExtValuation& v) {
  if (!v.is_exact()) return std::nullopt;
  return BigInt(r * index - v.value());
}

void check_box(const ClassifierOptions& o) {
  if (o.horizon < 8) throw std::invalid_argument("insufficient horizon: tail-window rule needs horizon >= 8");
  if (o.r_max < 0) throw std::invalid_argument("r_max must be >= 0");
}

}  // namespace

ProductProfile product_profile(const Scalar& lambda, long horizon, const BigInt& cap) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  DifferenceValuator val(lambda, cap);
  ProductProfile out;
  out.horizon = horizon;
  out.values.reserve(static_cast<std::size_t>(horizon));
  ExtValuation acc = ExtValuation::exact(0);
  for (long j = 0; j < horizon; ++j) {
    ExtValuation v = val(BigInt(j));
    if (v.is_infinite() && !out.zero_hit) {
      out.zero_hit = true;
      out.zero_index = j;
    }
    acc = acc + v;
    out.values.push_back(acc);
  }
  return out;
}

std::vector<ExtValuation> product_valuations_at(const Scalar& lambda, std::span<const long> indices, const BigInt& cap) {
  std::vector<ExtValuation> out;
  if (indices.empty()) return out;
  DifferenceValuator val(lambda, cap);
  ExtValuation acc = ExtValuation::exact(0);
  std::size_t next = 0;
  for (long j = 0; next < indices.size(); ++j) {
    while (next < indices.size() && indices[next] == j) {
      out.push_back(acc);
      ++next;
    }
    if (next == indices.size()) break;
    if (indices[next] < j) throw std::invalid_argument("indices must be increasing and >= 1");
    acc = acc + val(BigInt(j));
  }
  return out;
}

std::vector<std::optional<BigInt>> product_margins(const ProductProfile& profile, long r) {
  std::vector<std::optional<BigInt>> m;
  m.reserve(profile.values.size());
  for (long i = 1; i <= profile.horizon; ++i) m.push_back(certified_margin(r, BigInt(i), profile.at(i)));
  return m;
}

std::string category_name(TypeVerdict::Category c) {
  switch (c) {
    case TypeVerdict::Category::PositiveInteger: return "PositiveInteger";
    case TypeVerdict::Category::PositiveWitness: return "PositiveWitness";
    case TypeVerdict::Category::NoWitnessUpTo: return "NoWitnessUpTo";
  }
  return {};
}

TypeVerdict classify_positive_type(const Scalar& lambda, const ClassifierOptions& options) {
  check_box(options);
  TypeVerdict verdict;
  verdict.box = options;
  if (proven_type_zero(lambda)) verdict.proof_tag = "ProvenTypeZeroByConstruction(" + *lambda.construction() + ")";

  if (lambda.is_nonnegative_integer()) {
    verdict.category = TypeVerdict::Category::PositiveInteger;
    return verdict;
  }
  ProductProfile profile = product_profile(lambda, options.horizon, options.cap);
  if (profile.zero_hit) {
    verdict.category = TypeVerdict::Category::PositiveInteger;
    return verdict;
  }

  std::vector<long> struct_idx;
  for (const BigInt& m : lambda.partial_sum_indices(options.index_limit)) struct_idx.push_back(m.get_si() + 1);
  std::vector<ExtValuation> struct_v = product_valuations_at(lambda, struct_idx, options.cap);

  for (long r = 0; r <= options.r_max; ++r) {
    auto margins = product_margins(profile, r);
    if (!tail_window_passes(margins, options.threshold)) continue;
    std::vector<StructuralMargin> sm;
    bool ok = true;
    for (std::size_t k = 0; k < struct_idx.size(); ++k) {
      auto m = certified_margin(r, BigInt(struct_idx[k]), struct_v[k]);
      ok = ok && m && *m > options.threshold;
      sm.push_back({BigInt(struct_idx[k]), m});
    }
    if (!ok) continue;
    verdict.category = TypeVerdict::Category::PositiveWitness;
    verdict.r = r;
    const std::size_t len = (margins.size() + 3) / 4;
    for (std::size_t i = margins.size() - len; i < margins.size(); ++i) verdict.margins.push_back(*margins[i]);
    verdict.structural = std::move(sm);
    return verdict;
  }
  verdict.category = TypeVerdict::Category::NoWitnessUpTo;
  // Report the structural margins at r_max: they show why the search failed.
  for (std::size_t k = 0; k < struct_idx.size(); ++k)
    verdict.structural.push_back({BigInt(struct_idx[k]), certified_margin(options.r_max, BigInt(struct_idx[k]), struct_v[k])});
  return verdict;
}

std::optional<long> difference_witness(const Scalar& lambda, const ClassifierOptions& options) {
  check_box(options);
  DifferenceValuator val(lambda, options.cap);
  std::vector<std::pair<long, ExtValuation>> window;
  for (long i = 1; i <= options.horizon; ++i) {
    ExtValuation v = val(BigInt(i));
    if (!v.is_infinite()) window.emplace_back(i, v);
  }
  std::vector<std::pair<BigInt, ExtValuation>> structural;
  for (const BigInt& m : lambda.partial_sum_indices(options.index_limit)) structural.emplace_back(m, val(m));

  for (long r = 0; r <= options.r_max; ++r) {
    std::vector<std::optional<BigInt>> margins;
    for (const auto& [i, v] : window) margins.push_back(certified_margin(r, BigInt(i), v));
    if (!tail_window_passes(margins, options.threshold)) continue;
    bool ok = std::all_of(structural.begin(), structural.end(), [&](const auto& s) {
      auto m = certified_margin(r, s.first, s.second);
      return m && *m > options.threshold;
    });
    if (ok) return r;
  }
  return std::nullopt;
}

TypeEstimate type_estimate(const Scalar& lambda, const ClassifierOptions& options) {
  check_box(options);
  TypeEstimate est;
  est.horizon = options.horizon;
  est.box = options;
  DifferenceValuator val(lambda, options.cap);
  for (long i = 1; i <= options.horizon; ++i) {
    ExtValuation v = val(BigInt(i));
    if (v.is_infinite()) continue;
    TypeEstimate::Entry e{i, v, std::nullopt};
    if (v.is_exact()) {
      BigRational q(v.value(), BigInt(i));
      q.canonicalize();
      e.ratio = q;
      if (!est.radius_bound_exponent || q > *est.radius_bound_exponent) est.radius_bound_exponent = q;
    } else {
      est.bound_is_partial = true;
    }
    if (est.radius_bound_exponent) est.running_max.push_back(*est.radius_bound_exponent);
    est.entries.push_back(std::move(e));
  }
  if (est.entries.empty()) throw std::invalid_argument("every index in the horizon is excluded");
  est.witness_r = difference_witness(lambda, options);
  return est;
}

EquivalenceReport equivalence_probe(const Scalar& lambda, const ClassifierOptions& options) {
  EquivalenceReport rep;
  rep.product = classify_positive_type(lambda, options);
  rep.difference_r = difference_witness(lambda, options);
  rep.agree = rep.product.positive() == rep.difference_r.has_value();
  return rep;
}

bool IdentityCheck::all_zero() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const BigRational& q) { return q == 0; });
}

IdentityCheck kedlaya_identity_check(const BigRational& lambda_in, long order) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  BigRational lambda = lambda_in;
  lambda.canonicalize();
  if (lambda.get_den() == 1 && lambda >= 0 && lambda <= order)
    throw std::domain_error("lambda hits a pole at i = " + lambda.get_num().get_str());

  IdentityCheck out;
  const auto n = static_cast<std::size_t>(order) + 1;
  // Left side: denominators lambda * prod_{k=1}^{i} (k - lambda).
  BigRational denom = lambda;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) denom *= BigRational(static_cast<long>(i)) - lambda;
    out.lhs.push_back(1 / denom);
  }
  // Right side: e^x times sum_i (-1)^i x^i / (i! (lambda - i)).
  std::vector<BigRational> inv_fact(n);
  BigInt f = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) f *= static_cast<unsigned long>(i);
    inv_fact[i] = BigRational(BigInt(1), f);
  }
  std::vector<BigRational> series(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigRational term = inv_fact[i] / (lambda - BigRational(static_cast<long>(i)));
    series[i] = (i % 2 == 0) ? term : BigRational(-term);
  }
  for (std::size_t k = 0; k < n; ++k) {
    BigRational c = 0;
    for (std::size_t i = 0; i <= k; ++i) c += inv_fact[k - i] * series[i];
    c.canonicalize();
    out.rhs.push_back(c);
    BigRational d = out.lhs[k] - c;
    d.canonicalize();
    out.residuals.push_back(d);
  }
  return out;
}

bool DivergenceTable::all_decreasing() const {
  return std::all_of(strictly_decreasing.begin(), strictly_decreasing.end(), [](const auto& e) { return e.second; });
}

std::size_t divergence_depth(const SparsePAdic& lambda) {
  std::size_t d = 0;
  while (d + 1 < lambda.depth() && lambda.support()[d + 1].materialized() && lambda.partial_sum(d + 1)) ++d;
  return d;
}

DivergenceTable lebras_divergence_check(const SparsePAdic& lambda, std::span<const long> r_values, std::size_t depth) {
  const std::size_t available = divergence_depth(lambda);
  if (depth > available)
    throw std::out_of_range("insufficient depth: requested " + std::to_string(depth) + ", materializable " +
                            std::to_string(available));
  DivergenceTable t;
  t.depth = depth;
  for (long r : r_values) {
    bool decreasing = true;
    std::optional<BigInt> prev;
    for (std::size_t j = 1; j <= depth; ++j) {
      BigInt e = r * *lambda.partial_sum(j) - lambda.support()[j].value();
      if (prev && !(e < *prev)) decreasing = false;
      prev = e;
      t.rows.push_back({r, j, e});
    }
    t.strictly_decreasing.emplace_back(r, decreasing);
  }
  return t;
}

Scalar shift(const Scalar& lambda, const BigInt& n, const BigInt& cap, const Config& cfg) {
  if (lambda.is_dense()) return Scalar(lambda.dense() - DensePAdic::from_integer(lambda.dense().config(), n));
  const SparsePAdic& s = lambda.sparse();
  if (s.is_zero()) return Scalar(DensePAdic::from_integer(cfg, -n));
  BigInt low = s.residue_below(cap) - n;
  std::optional<std::string> tag;
  if (s.construction()) tag = *s.construction() + " shifted by " + n.get_str();
  return Scalar(s.with_low_part(cap, low, tag));
}

}  // namespace padx
