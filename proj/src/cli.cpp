// Copyright 2026 The lcmwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcmwit/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "lcmwit/bruteforce.hpp"
#include "lcmwit/certificate.hpp"
#include "lcmwit/config.hpp"
#include "lcmwit/construction.hpp"
#include "lcmwit/density.hpp"
#include "lcmwit/error.hpp"

namespace lcmwit::cli {

namespace {

using u64 = std::uint64_t;

u64 parse_u64(const std::string& text, const char* what) {
  const BigInt v = parse_decimal(text);
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw Error(ErrorKind::Parse, std::string(what) + " does not fit in 64 bits");
  }
  return to_u64(v);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw Error(ErrorKind::Parse, "empty rational list");
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

Json factored_entry(const FactoredValue& v) {
  Json j = factored_to_json(v);
  j["decimal"] = v.to_decimal();
  return j;
}

std::string ratio_decimal(const FactoredValue& a, const FactoredValue& b, int digits) {
  Rational r(a.to_integer(), b.to_integer());
  r.canonicalize();
  return format_significant(r, digits);
}

std::string verdict_text(const std::optional<bool>& v) {
  if (!v) return "undecided";
  return *v ? "holds" : "fails";
}

// The command being assembled: positional arguments plus a handler.
struct Context {
  Config config;
  std::ostream& out;
  std::ostream& err;
};

int cmd_lcm(Context& ctx, const std::string& n_text, const std::string& w_text) {
  const u64 n = parse_u64(n_text, "n"), width = parse_u64(w_text, "width");
  const FactoredValue v = lcm_range(n, width, ctx.config.lcm_feasibility_bound);
  switch (ctx.config.output_format) {
    case OutputFormat::Json:
      ctx.out << Json{{"n", n}, {"width", width}, {"lcm", factored_entry(v)}}.dump(2) << "\n";
      break;
    case OutputFormat::Csv:
      ctx.out << "n,width,lcm_decimal,factorization\n" << n << "," << width << "," << v.to_decimal() << ","
              << v.pretty() << "\n";
      break;
    case OutputFormat::Text:
      ctx.out << v.to_decimal() << "\n" << v.pretty() << "\n";
      break;
  }
  return kExitOk;
}

int cmd_compare(Context& ctx, const std::vector<std::string>& a) {
  const u64 a_lo = parse_u64(a[0], "a_lo"), a_hi = parse_u64(a[1], "a_hi");
  const u64 b_lo = parse_u64(a[2], "b_lo"), b_hi = parse_u64(a[3], "b_hi");
  if (a_hi < a_lo || b_hi < b_lo) throw Error(ErrorKind::Domain, "ranges must satisfy lo <= hi");
  const auto bound = ctx.config.lcm_feasibility_bound;
  const FactoredValue fa = lcm_range(a_lo, a_hi - a_lo + 1, bound);
  const FactoredValue fb = lcm_range(b_lo, b_hi - b_lo + 1, bound);
  const Ordering ord = cmp_factored(fa, fb);
  switch (ctx.config.output_format) {
    case OutputFormat::Json:
      ctx.out << Json{{"ordering", to_string(ord)},
                      {"a", {{"lo", a_lo}, {"hi", a_hi}, {"lcm", factored_entry(fa)}}},
                      {"b", {{"lo", b_lo}, {"hi", b_hi}, {"lcm", factored_entry(fb)}}}}
                     .dump(2)
              << "\n";
      break;
    case OutputFormat::Csv:
      ctx.out << "a_lo,a_hi,b_lo,b_hi,ordering,lcm_a_decimal,lcm_b_decimal\n"
              << a_lo << "," << a_hi << "," << b_lo << "," << b_hi << "," << to_string(ord) << ","
              << fa.to_decimal() << "," << fb.to_decimal() << "\n";
      break;
    case OutputFormat::Text:
      ctx.out << to_string(ord) << "\n"
              << "lcm{" << a_lo << ".." << a_hi << "} = " << fa.pretty() << "\n"
              << "lcm{" << b_lo << ".." << b_hi << "} = " << fb.pretty() << "\n";
      break;
  }
  return kExitOk;
}

int cmd_fchain(Context& ctx, const std::string& w_text, const std::string& n_text) {
  const auto chain = f_chain(parse_u64(w_text, "width"), parse_u64(n_text, "nmax"));
  auto rel = [](const FChainEntry& e) {
    return e.vs_previous ? std::string(to_string(*e.vs_previous)) : std::string("-");
  };
  switch (ctx.config.output_format) {
    case OutputFormat::Json: {
      Json arr = Json::array();
      for (const auto& e : chain) {
        arr.push_back({{"n", e.n}, {"f", factored_entry(e.value)}, {"vs_previous", rel(e)}});
      }
      ctx.out << arr.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      ctx.out << "n,f_decimal,vs_previous\n";
      for (const auto& e : chain) ctx.out << e.n << "," << e.value.to_decimal() << "," << rel(e) << "\n";
      break;
    case OutputFormat::Text:
      for (const auto& e : chain) {
        ctx.out << "f(" << e.n << ") = " << e.value.to_decimal() << " = " << e.value.pretty() << "  [" << rel(e)
                << " than f(" << (e.n > 1 ? e.n - 1 : 0) << ")]\n";
      }
      break;
  }
  return kExitOk;
}

BruteOptions brute_options(const Config& c) { return {c.parallel, c.shards, c.member_bound}; }

int cmd_search(Context& ctx, const std::vector<std::string>& a, const std::string& c_text) {
  const u64 k = parse_u64(a[0], "k"), extra = parse_u64(a[1], "extra");
  const u64 x_max = parse_u64(a[2], "xmax"), y_max = parse_u64(a[3], "ymax");
  const Rational C = parse_rational(c_text);
  const auto pairs = search_anomalies(k, extra, x_max, y_max, C, brute_options(ctx.config));
  if (ctx.config.output_format == OutputFormat::Json) {
    Json arr = Json::array();
    for (const auto& p : pairs) {
      arr.push_back({{"k", p.k},
                     {"x", p.x},
                     {"y", p.y},
                     {"extra", p.extra},
                     {"lcm_small", factored_entry(p.lcm_small)},
                     {"lcm_large", factored_entry(p.lcm_large)}});
    }
    ctx.out << arr.dump(2) << "\n";
  } else {
    ctx.out << "k,x,y,extra,lcm_small_decimal,lcm_large_decimal,ratio_decimal\n";
    for (const auto& p : pairs) {
      ctx.out << p.k << "," << p.x << "," << p.y << "," << p.extra << "," << p.lcm_small.to_decimal() << ","
              << p.lcm_large.to_decimal() << "," << ratio_decimal(p.lcm_small, p.lcm_large, 10) << "\n";
    }
  }
  ctx.err << pairs.size() << " pair(s)\n";
  return kExitOk;
}

int cmd_teaser(Context& ctx) {
  const TeaserAnswer t = answer_teaser();
  if (ctx.config.output_format == OutputFormat::Json) {
    ctx.out << Json{{"ordering", to_string(t.ordering)},
                    {"first", {{"lo", 676}, {"hi", 773}, {"lcm", factored_entry(t.first)}}},
                    {"second", {{"lo", 798}, {"hi", 903}, {"lcm", factored_entry(t.second)}}},
                    {"ratio", ratio_decimal(t.first, t.second, 10)}}
                   .dump(2)
            << "\n";
  } else {
    ctx.out << "lcm{676..773} vs lcm{798..903}: " << to_string(t.ordering) << "\n"
            << "ratio " << ratio_decimal(t.first, t.second, 10) << "\n"
            << "lcm{676..773} = " << t.first.pretty() << "\n"
            << "lcm{798..903} = " << t.second.pretty() << "\n";
  }
  return kExitOk;
}

int cmd_minimal(Context& ctx, const std::vector<std::string>& a) {
  const auto s = minimality_scan(parse_u64(a[0], "extra"), parse_u64(a[1], "kmax"), parse_u64(a[2], "xmax"),
                                 brute_options(ctx.config));
  if (ctx.config.output_format == OutputFormat::Json) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
      rows.push_back({{"k", r.k},
                      {"least_x", r.least ? Json(r.least->first) : Json(nullptr)},
                      {"y", r.least ? Json(r.least->second) : Json(nullptr)}});
    }
    ctx.out << Json{{"extra", s.extra},
                    {"k_max", s.k_max},
                    {"x_max", s.x_max},
                    {"least_k", s.least_k ? Json(*s.least_k) : Json(nullptr)},
                    {"rows", rows}}
                   .dump(2)
            << "\n";
  } else {
    ctx.out << "k,least_x,y\n";
    for (const auto& r : s.rows) {
      ctx.out << r.k << ",";
      if (r.least) ctx.out << r.least->first << "," << r.least->second << "\n";
      else ctx.out << "none,none\n";
    }
  }
  return kExitOk;
}

int cmd_construct(Context& ctx, const std::string& k_text, const std::string& c_text,
                  const std::string& eps_text, const std::string& out_path) {
  ConstructionConfig cc;
  cc.epsilon_start = eps_text.empty() ? ctx.config.epsilon_start : parse_rational(eps_text);
  cc.epsilon_cap = ctx.config.epsilon_cap;
  cc.search = {ctx.config.parallel, ctx.config.shards};
  const u64 k = parse_u64(k_text, "k");
  if (k > ctx.config.prime_table_limit) throw Error(ErrorKind::TableTooSmall, "k above prime_table_limit");
  const auto cert = construct_witness(k, parse_u64(c_text, "C"), cc);
  const std::string text = certificate_to_json(cert).dump(2) + "\n";
  if (out_path.empty()) {
    ctx.out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + out_path);
    f << text;
    ctx.out << "wrote " << out_path << "\n";
  }
  ctx.err << "k=" << cert.k << " C=" << cert.C << " eps=" << format_rational(cert.epsilon) << " ratio~"
          << format_significant(*cert.report.ratio, 12) << " (" << cert.y.get_str().size() << "-digit y)\n";
  return kExitOk;
}

int cmd_verify(Context& ctx, const std::string& path) {
  const WitnessCertificate cert = certificate_from_json(read_json_file(path));
  const CertificateCheck check = verify_certificate(cert, ctx.config.prime_table_limit);
  if (ctx.config.output_format == OutputFormat::Json) {
    Json j{{"accepted", check.accepted}, {"failures", check.failures}};
    if (check.report.ratio) j["ratio"] = format_significant(*check.report.ratio, 30);
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << (check.accepted ? "VERIFIED" : "REJECTED") << "\n";
    for (const auto& f : check.failures) ctx.out << "  - " << f << "\n";
    if (check.accepted) ctx.out << "ratio " << format_significant(*check.report.ratio, 30) << "\n";
  }
  return check.accepted ? kExitOk : kExitFalse;
}

CoveringInstance covering_from_json(const Json& j) {
  CoveringInstance inst;
  try {
    inst.primes = j.at("primes").get<std::vector<u64>>();
    inst.weights = j.at("weights").get<std::vector<u64>>();
    inst.admissible_sets = j.at("admissible_sets").get<std::vector<std::vector<u64>>>();
    inst.epsilon = parse_rational(j.at("epsilon").get<std::string>());
    inst.n = j.at("n").get<u64>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("covering instance: ") + e.what());
  }
  return inst;
}

int cmd_claim1(Context& ctx, const std::string& path) {
  const Json j = read_json_file(path);
  const CoveringInstance inst = covering_from_json(j);
  const auto violations = claim1_violations(inst, ctx.config.claim1_strict, ctx.config.covering_bound);
  const auto uncovered = claim1_first_uncovered(inst, ctx.config.covering_bound);
  std::optional<BigInt> found;
  if (j.contains("window_start")) {
    if (!j["window_start"].is_string()) throw Error(ErrorKind::Parse, "window_start must be a decimal string");
    try {
      found = claim1_find(inst, parse_decimal(j["window_start"].get<std::string>()));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ClaimCounterexample) throw;
    }
  }
  if (ctx.config.output_format == OutputFormat::Json) {
    Json out{{"hypotheses_hold", violations.empty()},
             {"violations", violations},
             {"all_windows_covered", !uncovered.has_value()},
             {"first_uncovered_start", uncovered ? Json(*uncovered) : Json(nullptr)}};
    if (j.contains("window_start")) out["least_representable"] = found ? Json(found->get_str()) : Json(nullptr);
    ctx.out << out.dump(2) << "\n";
  } else {
    ctx.out << "hypotheses: " << (violations.empty() ? "hold" : "violated") << "\n";
    for (const auto& v : violations) ctx.out << "  - " << v << "\n";
    ctx.out << "every window of " << inst.n << " consecutive integers covered: " << (uncovered ? "no" : "yes")
            << "\n";
    if (uncovered) ctx.out << "first uncovered window starts at " << *uncovered << " (mod P)\n";
    if (j.contains("window_start")) ctx.out << "least representable: " << (found ? found->get_str() : "none") << "\n";
  }
  return uncovered ? kExitFalse : kExitOk;
}

DensityOptions density_options(const Config& c, const std::string& method) {
  DensityOptions o;
  o.scan_budget = c.scan_budget;
  o.enumeration_budget = c.enumeration_budget;
  o.shards = c.shards;
  if (method == "auto") o.method = GapMethod::Auto;
  else if (method == "crt") o.method = GapMethod::CrtEnumeration;
  else if (method == "scan") o.method = GapMethod::ExhaustiveScan;
  else throw Error(ErrorKind::Parse, "unknown gap method '" + method + "' (auto|crt|scan)");
  return o;
}

Json density_json(const DensityReport& r) {
  Json primes = Json::array();
  for (const auto& d : r.per_prime) {
    primes.push_back({{"p", d.p},
                      {"interval_size", d.interval_size},
                      {"k_mod_p", d.k_mod_p},
                      {"interval_within_a_window", d.interval_within_a_window},
                      {"reflected_within_b_window", d.reflected_within_b_window}});
  }
  return Json{{"k", r.instance.k},
              {"delta", format_rational(r.instance.delta)},
              {"epsilon", format_rational(r.epsilon)},
              {"Mq", r.instance.Mq.get_str()},
              {"admissible_count", r.admissible_count.get_str()},
              {"window", r.window.get_str()},
              {"exhaustive", r.exhaustive},
              {"method", r.exhaustive ? std::string(to_string(r.method)) : std::string("prefix-scan")},
              {"max_gap", r.max_gap ? Json(std::to_string(*r.max_gap)) : Json(nullptr)},
              {"max_gap_lower_bound",
               r.max_gap_lower_bound ? Json(std::to_string(*r.max_gap_lower_bound)) : Json(nullptr)},
              {"verdict", r.verdict ? Json(*r.verdict) : Json(nullptr)},
              {"label", "finite-k evidence only"},
              {"primes", primes}};
}

void density_csv_row(std::ostream& out, const DensityReport& r) {
  out << r.instance.k << "," << format_rational(r.instance.delta) << "," << format_rational(r.epsilon) << ","
      << r.admissible_count.get_str() << ","
      << (r.max_gap ? std::to_string(*r.max_gap)
                    : (r.max_gap_lower_bound ? ">=" + std::to_string(*r.max_gap_lower_bound) : "?"))
      << "," << r.window.get_str() << "," << verdict_text(r.verdict) << "\n";
}

int cmd_probe(Context& ctx, const std::vector<std::string>& a, const std::string& method) {
  const u64 k = parse_u64(a[0], "k");
  if (k > ctx.config.prime_table_limit) throw Error(ErrorKind::TableTooSmall, "k above prime_table_limit");
  const auto eps = parse_rational_list(a[1]);
  const auto deltas = parse_rational_list(a[2]);
  const PrimeTable table(std::max<u64>(k, 2));
  const auto reports = probe_sweep(k, deltas, eps, table, density_options(ctx.config, method));
  if (ctx.config.output_format == OutputFormat::Json) {
    if (reports.size() == 1) {
      ctx.out << density_json(reports.front()).dump(2) << "\n";
    } else {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(density_json(r));
      ctx.out << arr.dump(2) << "\n";
    }
  } else if (ctx.config.output_format == OutputFormat::Csv || reports.size() > 1) {
    ctx.out << "k,delta,epsilon,admissible_count,max_gap,window,verdict\n";
    for (const auto& r : reports) density_csv_row(ctx.out, r);
  } else {
    const auto& r = reports.front();
    ctx.out << "k=" << k << " delta=" << format_rational(r.instance.delta) << " eps=" << format_rational(r.epsilon)
            << " (finite-k evidence only)\n"
            << "primes:";
    for (u64 p : r.instance.primes) ctx.out << " " << p;
    ctx.out << "\ninterval sizes:";
    for (u64 s : r.instance.interval_sizes) ctx.out << " " << s;
    ctx.out << "\nMq = " << r.instance.Mq.get_str() << "\nadmissible count = " << r.admissible_count.get_str()
            << "\n";
    if (r.max_gap) ctx.out << "max gap = " << *r.max_gap << " (" << to_string(r.method) << ", exhaustive)\n";
    else if (r.max_gap_lower_bound) ctx.out << "max gap >= " << *r.max_gap_lower_bound << " (prefix scan)\n";
    else ctx.out << "max gap unknown (over budget)\n";
    ctx.out << "window ceil(Mq^eps) = " << r.window.get_str() << "\nverdict: " << verdict_text(r.verdict) << "\n";
  }
  if (reports.size() == 1 && reports.front().verdict == false) return kExitFalse;
  return kExitOk;
}

std::string join(const std::vector<u64>& v) {
  std::string s;
  for (u64 p : v) s += (s.empty() ? "" : " ") + std::to_string(p);
  return s;
}

int cmd_badprimes(Context& ctx, const std::string& k_text, const std::string& d_text) {
  const u64 k = parse_u64(k_text, "k");
  if (k > ctx.config.prime_table_limit) throw Error(ErrorKind::TableTooSmall, "k above prime_table_limit");
  const PrimeTable table(std::max<u64>(k, 2));
  const auto s = bad_prime_stats(k, parse_rational(d_text), table);
  if (ctx.config.output_format == OutputFormat::Json) {
    ctx.out << Json{{"k", s.k},
                    {"delta", format_rational(s.delta)},
                    {"primes", s.primes},
                    {"bad_primes", s.bad_primes},
                    {"good_primes", s.good_primes},
                    {"fraction", format_rational(s.fraction)}}
                   .dump(2)
            << "\n";
  } else {
    ctx.out << "k=" << s.k << " delta=" << format_rational(s.delta) << "\n"
            << "bad: " << join(s.bad_primes) << "\n"
            << "good: " << join(s.good_primes) << "\n"
            << "fraction " << format_rational(s.fraction) << " = " << format_significant(s.fraction, 6) << "\n";
  }
  return kExitOk;
}

int cmd_goodk(Context& ctx, const std::string& K_text, const std::string& d_text) {
  const u64 K = parse_u64(K_text, "K");
  if (2 * K > ctx.config.prime_table_limit) throw Error(ErrorKind::TableTooSmall, "2K above prime_table_limit");
  const PrimeTable table(std::max<u64>(2 * K, 2));
  const auto g = select_good_k(K, parse_rational(d_text), table);
  std::ostringstream bound;
  bound.precision(10);
  bound << g.averaging_bound;
  if (ctx.config.output_format == OutputFormat::Json) {
    ctx.out << Json{{"K", g.K},
                    {"k", g.k},
                    {"delta", format_rational(g.stats.delta)},
                    {"fraction", format_rational(g.stats.fraction)},
                    {"average_fraction", format_rational(g.average_fraction)},
                    {"averaging_bound_7K^(-delta/2)", bound.str()},
                    {"within_averaging_bound", g.within_averaging_bound},
                    {"bad_primes", g.stats.bad_primes}}
                   .dump(2)
            << "\n";
  } else {
    ctx.out << "K=" << g.K << " best k=" << g.k << " fraction " << format_rational(g.stats.fraction)
            << " (average " << format_significant(g.average_fraction, 6) << ")\n"
            << "7K^(-delta/2) = " << bound.str() << "; within: " << (g.within_averaging_bound ? "yes" : "no")
            << " (asymptotic bound, reported only)\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lcmwit: witnesses and experiments for lcm anomalies of consecutive integers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, format, eps_start, eps_cap;
  u64 table_limit = 0, lcm_bound = 0, scan_budget = 0, enum_budget = 0, member_bound = 0;
  unsigned shards = 0;
  bool relaxed = false, serial = false;
  app.add_option("--config", config_path, "JSON defaults file (flags override it)");
  app.add_option("--format", format, "output format: text|json|csv");
  app.add_option("--shards", shards, "work partitions for parallel searches (results do not depend on it)");
  app.add_option("--table-limit", table_limit, "largest k the prime table may be built for");
  app.add_option("--lcm-bound", lcm_bound, "largest range member lcm/compare will factor");
  app.add_option("--member-bound", member_bound, "largest range member the brute-force searches touch");
  app.add_option("--scan-budget", scan_budget, "largest period walked by the density scan");
  app.add_option("--enum-budget", enum_budget, "largest admissible set the density enumeration materializes");
  app.add_option("--eps-start", eps_start, "initial epsilon for prime selection (a/b)");
  app.add_option("--eps-cap", eps_cap, "epsilon cap for prime selection (a/b)");
  app.add_flag("--claim1-relaxed", relaxed, "read the covering threshold as eps*sum(p) <= n");
  app.add_flag("--serial", serial, "use the serial reference kernels");

  std::vector<std::string> pos;
  std::string c_text = "1", eps_text, out_path, method = "auto";
  std::function<int(Context&)> handler;

  auto sub = [&](const char* name, const char* help, std::size_t n, const char* names) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("args", pos, names)->expected(static_cast<int>(n))->required();
    return s;
  };
  sub("lcm", "lcm of n..n+width-1", 2, "<n> <width>")->callback([&] {
    handler = [&](Context& c) { return cmd_lcm(c, pos[0], pos[1]); };
  });
  sub("compare", "compare lcm{a_lo..a_hi} with lcm{b_lo..b_hi}", 4, "<a_lo> <a_hi> <b_lo> <b_hi>")->callback([&] {
    handler = [&](Context& c) { return cmd_compare(c, pos); };
  });
  sub("fchain", "f(n) = lcm{n..n+width-1} for n = 1..nmax", 2, "<width> <nmax>")->callback([&] {
    handler = [&](Context& c) { return cmd_fchain(c, pos[0], pos[1]); };
  });
  auto* search = sub("search", "all anomalies lcm{x..x+k-1} > C lcm{y..y+k+extra-1}", 4, "<k> <extra> <xmax> <ymax>");
  search->add_option("--C", c_text, "ratio threshold a/b (default 1)");
  search->callback([&] { handler = [&](Context& c) { return cmd_search(c, pos, c_text); }; });
  app.add_subcommand("teaser", "compare lcm{676..773} with lcm{798..903}")->callback([&] {
    handler = [&](Context& c) { return cmd_teaser(c); };
  });
  sub("minimal", "least x per k admitting an anomaly", 3, "<extra> <kmax> <xmax>")->callback([&] {
    handler = [&](Context& c) { return cmd_minimal(c, pos); };
  });
  auto* construct = sub("construct", "build and certify a witness", 2, "<k> <C>");
  construct->add_option("--eps", eps_text, "initial epsilon a/b");
  construct->add_option("--out", out_path, "write the certificate here instead of stdout");
  construct->callback([&] {
    handler = [&](Context& c) { return cmd_construct(c, pos[0], pos[1], eps_text, out_path); };
  });
  sub("verify", "re-verify a certificate file", 1, "<certificate.json>")->callback([&] {
    handler = [&](Context& c) { return cmd_verify(c, pos[0]); };
  });
  sub("claim1", "check a covering instance", 1, "<instance.json>")->callback([&] {
    handler = [&](Context& c) { return cmd_claim1(c, pos[0]); };
  });
  auto* probe = sub("probe", "density probe; eps and delta accept comma lists", 3, "<k> <eps a/b> <delta a/b>");
  probe->add_option("--method", method, "auto|crt|scan");
  probe->callback([&] { handler = [&](Context& c) { return cmd_probe(c, pos, method); }; });
  sub("badprimes", "bad-prime fraction for k", 2, "<k> <delta>")->callback([&] {
    handler = [&](Context& c) { return cmd_badprimes(c, pos[0], pos[1]); };
  });
  sub("goodk", "k in [K, 2K) with the fewest bad primes", 2, "<K> <delta>")->callback([&] {
    handler = [&](Context& c) { return cmd_goodk(c, pos[0], pos[1]); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    Config config;
    if (!config_path.empty()) config = load_config_file(config_path, config);
    if (!format.empty()) config.output_format = parse_output_format(format);
    if (shards) config.shards = shards;
    if (table_limit) config.prime_table_limit = table_limit;
    if (lcm_bound) config.lcm_feasibility_bound = lcm_bound;
    if (member_bound) config.member_bound = member_bound;
    if (scan_budget) config.scan_budget = scan_budget;
    if (enum_budget) config.enumeration_budget = enum_budget;
    if (!eps_start.empty()) config.epsilon_start = parse_rational(eps_start);
    if (!eps_cap.empty()) config.epsilon_cap = parse_rational(eps_cap);
    if (relaxed) config.claim1_strict = false;
    if (serial) config.parallel = false;
    validate(config);
    Context ctx{config, out, err};
    return handler(ctx);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace lcmwit::cli
