// padx: command-line front end for the p-adic connection toolkit.
//
// Exit codes: 0 verdict produced, 2 inconclusive within the search box,
// 1 error (parse failures included).

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "padx/acceptance.hpp"
#include "padx/connection.hpp"
#include "padx/report.hpp"

namespace {

using padx::Json;

constexpr int kVerdict = 0;
constexpr int kError = 1;
constexpr int kInconclusive = 2;

struct RunConfig {
  unsigned long prime = 5;
  long precision = 64;
  std::optional<long> horizon;
  std::optional<long> r_max;
  long n_max = 4;
  long j_max = 64;
  long i_max = 256;
  long threshold = 8;
  std::string cap = "1048576";
  bool json = false;
  std::uint64_t seed = padx::acceptance::kDefaultSeed;

  padx::Config config() const { return padx::Config(prime, precision); }
  padx::ClassifierOptions classifier() const {
    padx::ClassifierOptions o;
    if (horizon) o.horizon = *horizon;
    if (r_max) o.r_max = *r_max;
    o.threshold = threshold;
    o.cap = padx::BigInt(cap);
    return o;
  }
};

struct Outcome {
  Json json;
  std::string text;
  int code = kVerdict;
};

Outcome error_outcome(const std::string& type, const std::string& message) {
  return {Json{{"error", {{"type", type}, {"message", message}}}}, "error: " + message, kError};
}

void emit(const Outcome& o, bool json) {
  if (json) {
    std::cout << o.json.dump(2) << "\n";
  } else if (o.code == kError) {
    std::cerr << o.text << "\n";
  } else {
    std::cout << o.text;
  }
}

std::vector<std::string> read_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open batch file " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
  }
  return out;
}

// Runs fn on every input across worker threads; results keep input order.
std::vector<Outcome> run_parallel(const std::vector<std::string>& inputs, const std::function<Outcome(const std::string&)>& fn) {
  std::vector<Outcome> out(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < inputs.size();) {
      try {
        out[k] = fn(inputs[k]);
      } catch (const std::exception& e) {
        out[k] = error_outcome("evaluation", inputs[k] + ": " + e.what());
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(inputs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

Outcome combine(const std::vector<std::string>& inputs, const std::vector<Outcome>& parts) {
  if (parts.size() == 1) return parts.front();
  Outcome all;
  all.json = Json{{"results", Json::array()}};
  bool error = false, inconclusive = false;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    Json item = parts[k].json;
    item["input"] = inputs[k];
    all.json["results"].push_back(std::move(item));
    all.text += parts[k].code == kError ? parts[k].text + "\n" : parts[k].text;
    error = error || parts[k].code == kError;
    inconclusive = inconclusive || parts[k].code == kInconclusive;
  }
  all.code = error ? kError : inconclusive ? kInconclusive : kVerdict;
  return all;
}

// ---- subcommands ----------------------------------------------------------------------

Outcome do_classify(const RunConfig& rc, const std::string& literal) {
  const padx::Config cfg = rc.config();
  padx::TypeVerdict v = padx::classify_positive_type(padx::parse_scalar(literal, cfg), rc.classifier());
  Outcome o;
  o.json = padx::to_json(v);
  o.json["lambda"] = literal;
  o.text = literal + ": " + padx::category_name(v.category);
  if (v.r >= 0) o.text += " r=" + std::to_string(v.r);
  if (v.proof_tag) o.text += " [" + *v.proof_tag + "]";
  o.text += " (horizon " + std::to_string(v.box.horizon) + ", r_max " + std::to_string(v.box.r_max) + ")\n";
  o.code = v.positive() || v.proof_tag ? kVerdict : kInconclusive;
  return o;
}

std::vector<long> parse_r_range(const std::string& range) {
  std::string s = range.rfind("r=", 0) == 0 ? range.substr(2) : range;
  auto dots = s.find("..");
  long lo = 0, hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stol(s);
    } else {
      lo = std::stol(s.substr(0, dots));
      hi = std::stol(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad r range '" + range + "', expected r=<lo>..<hi>");
  }
  if (lo > hi) throw std::invalid_argument("empty r range '" + range + "'");
  std::vector<long> out;
  for (long r = lo; r <= hi; ++r) out.push_back(r);
  return out;
}

Outcome do_lebras(const RunConfig& rc, long depth, const std::optional<std::string>& check) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  const padx::SparsePAdic lb = padx::SparsePAdic::le_bras(rc.prime, static_cast<std::size_t>(depth));
  Outcome o;
  o.json = {{"lambda", lb.literal()}, {"prime", rc.prime}, {"depth", depth}};
  Json support = Json::array();
  for (const auto& k : lb.support()) support.push_back(k.to_string());
  o.json["support"] = support;
  o.text = lb.literal() + " support " + support.dump() + "\n";
  Json subs = Json::array();
  for (std::size_t j = 1; j < lb.depth(); ++j) {
    padx::ExtValuation v = lb.sub_partial_sum(j).valuation();
    subs.push_back({{"j", j}, {"valuation", padx::to_json(v)}});
    o.text += "  v(lambda - m_" + std::to_string(j) + ") = " + v.to_string() + "\n";
  }
  o.json["sub_partial_sums"] = subs;
  if (check) {
    const std::vector<long> rs = parse_r_range(*check);
    const std::size_t d = std::min(padx::divergence_depth(lb), lb.depth() - 1);
    padx::DivergenceTable t = padx::lebras_divergence_check(lb, rs, d);
    o.json["divergence"] = padx::to_json(t);
    o.text += "  r  j  r*m_j - k_{j+1}\n";
    for (const auto& row : t.rows)
      o.text += "  " + std::to_string(row.r) + "  " + std::to_string(row.j) + "  " + padx::to_decimal(row.exponent) + "\n";
    o.text += std::string("  strictly decreasing in j: ") + (t.all_decreasing() ? "yes" : "no") + "\n";
    if (!t.all_decreasing()) o.code = kInconclusive;
  }
  return o;
}

padx::BigRational parse_rational(std::string s) {
  if (s.rfind("rat:", 0) == 0 || s.rfind("int:", 0) == 0) s = s.substr(4);
  padx::BigRational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Outcome do_identity(const std::string& lambda, long order) {
  padx::IdentityCheck c = padx::kedlaya_identity_check(parse_rational(lambda), order);
  Outcome o;
  o.json = padx::to_json(c);
  o.json["lambda"] = lambda;
  o.text = "order " + std::to_string(order) + ", lambda " + lambda + ": residuals " +
           (c.all_zero() ? "all zero" : "NOT all zero") + "\n";
  for (std::size_t n = 0; n < c.lhs.size(); ++n)
    o.text += "  " + std::to_string(n) + "  " + padx::to_string(c.lhs[n]) + "  residual " + padx::to_string(c.residuals[n]) + "\n";
  o.code = c.all_zero() ? kVerdict : kError;
  return o;
}

Outcome do_norms(const RunConfig& rc, const std::string& literal) {
  const padx::Config cfg = rc.config();
  Outcome o;
  Json levels = Json::array();
  if (literal.rfind("op:", 0) == 0) {
    padx::OperatorElement op = padx::parse_operator(literal, cfg);
    o.text = op.literal() + "\n";
    for (long n = 0; n <= rc.n_max; ++n) {
      levels.push_back(padx::to_json(padx::level_norm(op, n)));
      o.text += "  level " + std::to_string(n) + ": exponent " + padx::level_norm(op, n).exponent.to_string() + "\n";
    }
    o.json = {{"operator", op.literal()}, {"levels", levels}};
    try {
      padx::DHatMembershipReport m = padx::dhat_membership(op, rc.n_max);
      o.json["membership"] = padx::to_json(m);
      o.text += "  completion membership through level " + std::to_string(m.passes_through()) + "\n";
      if (!m.all_pass()) o.code = kInconclusive;
    } catch (const std::invalid_argument& e) {
      o.json["membership"] = nullptr;
      o.json["membership_note"] = e.what();
      o.code = kInconclusive;
    }
  } else {
    padx::LaurentElement a = padx::parse_laurent(literal, cfg);
    o.text = a.literal() + "\n";
    for (long n = 0; n <= rc.n_max; ++n) {
      padx::LevelNorm ln = a.level_norm(n);
      levels.push_back(padx::to_json(ln));
      o.text += "  level " + std::to_string(n) + ": exponent " + ln.exponent.to_string() + "\n";
    }
    padx::MembershipReport m = padx::membership_in_O_U(a, rc.n_max);
    o.json = {{"series", a.literal()}, {"tag", a.tag().to_string()}, {"levels", levels}, {"membership", padx::to_json(m)}};
    o.text += std::string("  membership trend: ") + (m.all_pass() ? "passes" : "fails") + "\n";
    if (!m.all_pass()) o.code = kInconclusive;
  }
  o.json["box"] = {{"n_max", rc.n_max}};
  return o;
}

padx::ProbeOptions probe_options(const RunConfig& rc) {
  padx::ProbeOptions p;
  p.classifier = rc.classifier();
  p.n_max = rc.n_max;
  p.j_max = rc.j_max;
  p.witness_r_max = rc.r_max.value_or(4);
  p.witness_i_max = rc.i_max;
  return p;
}

Outcome do_probe(const RunConfig& rc, const std::string& literal) {
  const padx::Config cfg = rc.config();
  padx::ProbeOptions opt = probe_options(rc);
  // the classifier keeps its own default r_max unless one was given
  if (!rc.r_max) opt.classifier.r_max = padx::ClassifierOptions{}.r_max;
  padx::ProbeVerdict v = padx::coadmissibility_probe(padx::parse_scalar(literal, cfg), cfg, opt);
  Outcome o;
  o.json = padx::to_json(v);
  o.json["lambda"] = literal;
  o.text = literal + ": " + padx::probe_kind_name(v.kind);
  if (v.kind == padx::ProbeVerdict::Kind::CoadmissibleEvidence) {
    o.text += " r(n) =";
    for (const auto& s : v.levels) o.text += " " + std::to_string(*s.r);
  }
  if (!v.reason.empty()) o.text += " (" + v.reason + ")";
  o.text += "\n";
  o.code = v.kind == padx::ProbeVerdict::Kind::Inconclusive ? kInconclusive : kVerdict;
  return o;
}

Outcome do_witness(const RunConfig& rc, const std::string& literal) {
  const padx::Config cfg = rc.config();
  const padx::Scalar lam = padx::parse_scalar(literal, cfg);
  padx::WitnessReport w = padx::divergence_witness(lam, cfg, rc.r_max.value_or(4), rc.i_max, padx::BigInt(rc.cap));
  Outcome o;
  o.json = padx::to_json(w);
  o.json["lambda"] = literal;
  o.text = literal + ": " + padx::verdict_name(w.verdict) + "\n";
  for (const auto& s : w.steps)
    o.text += "  r=" + std::to_string(s.r) + " j=" + std::to_string(s.j) + " i=" + padx::to_decimal(s.i) +
              " V_i=" + padx::to_decimal(s.product_valuation) + " g exponent " + padx::to_decimal(s.g_exponent) + "\n";
  if (!w.reason.empty()) o.text += "  " + w.reason + "\n";
  if (w.witnessed()) {
    const std::string err = padx::verify_witness(w, lam);
    o.json["recheck"] = err.empty() ? "ok" : err;
    o.text += "  recheck: " + (err.empty() ? std::string("ok") : err) + "\n";
  }
  o.code = w.witnessed() ? kVerdict : kInconclusive;
  return o;
}

Outcome do_preimage(const RunConfig& rc, const std::string& lambda, const std::string& target) {
  const padx::Config cfg = rc.config();
  const padx::Scalar lam = padx::parse_scalar(lambda, cfg);
  padx::LaurentElement t = padx::parse_laurent(target, cfg);
  padx::ThetaPreimage th = padx::theta_preimage(lam, t, rc.n_max);
  Outcome o;
  o.json = padx::to_json(th);
  o.json["lambda"] = lambda;
  o.json["target"] = t.literal();
  o.text = th.op.literal() + "\n";
  for (long s = 0; s <= th.op.order(); ++s)
    o.text += "  g_" + std::to_string(s) + " exponent " + th.op.coefficient(s).gauss_valuation().to_string() + "\n";
  if (th.membership) {
    o.text += "  completion membership through level " + std::to_string(th.membership->passes_through()) + "\n";
  }
  return o;
}

Outcome do_suite(const std::string& name, std::uint64_t seed) {
  if (name != "acceptance") throw std::invalid_argument("unknown suite '" + name + "'");
  Outcome o;
  o.json = {{"suite", name}, {"seed", seed}, {"criteria", Json::array()}};
  bool ok = true;
  for (const auto& c : padx::acceptance::run_all(seed)) {
    o.json["criteria"].push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    o.text += std::string(c.passed ? "PASS" : "FAIL") + "  " + std::to_string(c.id) + "  " + c.name + "  (" + c.detail + ")\n";
    ok = ok && c.passed;
  }
  o.json["all_passed"] = ok;
  o.code = ok ? kVerdict : kError;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padx: p-adic positive-type classification, operator norms and divergence witnesses"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  RunConfig rc;
  std::optional<std::string> suite;
  app.add_option("--prime", rc.prime, "Residue characteristic p")->capture_default_str();
  app.add_option("--precision", rc.precision, "Dense precision cap in p-adic digits")->capture_default_str();
  app.add_option("--horizon", rc.horizon, "Product horizon I for positive-type tests");
  app.add_option("--rmax", rc.r_max, "Largest r searched");
  app.add_option("--nmax", rc.n_max, "Largest annulus / operator level")->capture_default_str();
  app.add_option("--jmax", rc.j_max, "Validation horizon for sufficient radii")->capture_default_str();
  app.add_option("--imax", rc.i_max, "Index bound for the witness search")->capture_default_str();
  app.add_option("--threshold", rc.threshold, "Tail margin threshold")->capture_default_str();
  app.add_option("--cap", rc.cap, "Valuation cap B for root differences")->capture_default_str();
  app.add_option("--seed", rc.seed, "Seed for sampled suites")->capture_default_str();
  app.add_flag("--json", rc.json, "Emit one JSON object");
  app.add_option("--suite", suite, "Run a bundled suite (acceptance)");

  std::vector<std::string> inputs;
  std::optional<std::string> batch;
  auto add_inputs = [&](CLI::App* sub, const char* what) {
    sub->add_option("lambda", inputs, what);
    sub->add_option("--batch", batch, "File with one scalar literal per line");
  };
  auto* classify = app.add_subcommand("classify", "Positive-type test for scalars");
  add_inputs(classify, "Scalar literals (rat:a/b, int:n, sparse:[..], lebras:p,d, digits:v=..;[..])");
  auto* probe = app.add_subcommand("probe", "Coadmissibility evidence or divergence witness for x^lambda");
  add_inputs(probe, "Scalar literals");
  auto* witness = app.add_subcommand("witness", "Search for a divergence witness");
  add_inputs(witness, "Scalar literals");

  long depth = 3;
  std::optional<std::string> check;
  auto* lebras = app.add_subcommand("lebras", "Le Bras number valuations and divergence table");
  lebras->add_option("--depth", depth, "Number of tracked support exponents")->capture_default_str();
  lebras->add_option("--check-divergence", check, "r range, e.g. r=1..4");

  std::string lambda_text;
  long order = 10;
  auto* identity = app.add_subcommand("identity-check", "Exact check of the series identity");
  identity->add_option("--lambda", lambda_text, "Rational lambda, e.g. 1/2")->required();
  identity->add_option("--order", order, "Highest coefficient")->capture_default_str();

  std::string literal;
  auto* norms = app.add_subcommand("norms", "Level norms and membership for a series or operator");
  norms->add_option("literal", literal, "laurent:{...} or op:[...]")->required();

  std::string target;
  auto* preimage = app.add_subcommand("preimage", "Constant-coefficient preimage of a target series");
  preimage->add_option("--lambda", lambda_text, "Scalar literal")->required();
  preimage->add_option("target", target, "laurent:{-s: 'c', ...}")->required();

  const bool want_json = [&] {
    for (int i = 1; i < argc; ++i)
      if (std::string(argv[i]) == "--json") return true;
    return false;
  }();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_outcome("parse", e.what()), want_json);
    return kError;
  }

  Outcome out;
  try {
    if (suite) {
      out = do_suite(*suite, rc.seed);
    } else if (classify->parsed() || probe->parsed() || witness->parsed()) {
      if (batch) {
        auto more = read_batch(*batch);
        inputs.insert(inputs.end(), more.begin(), more.end());
      }
      if (inputs.empty()) throw std::invalid_argument("no scalar given");
      std::function<Outcome(const std::string&)> fn;
      if (classify->parsed()) fn = [&](const std::string& s) { return do_classify(rc, s); };
      if (probe->parsed()) fn = [&](const std::string& s) { return do_probe(rc, s); };
      if (witness->parsed()) fn = [&](const std::string& s) { return do_witness(rc, s); };
      out = combine(inputs, run_parallel(inputs, fn));
    } else if (lebras->parsed()) {
      out = do_lebras(rc, depth, check);
    } else if (identity->parsed()) {
      out = do_identity(lambda_text, order);
    } else if (norms->parsed()) {
      out = do_norms(rc, literal);
    } else if (preimage->parsed()) {
      out = do_preimage(rc, lambda_text, target);
    } else {
      std::cout << app.help();
      return kVerdict;
    }
  } catch (const std::exception& e) {
    out = error_outcome("evaluation", e.what());
  }
  emit(out, rc.json);
  return out.code;
}
