// Command-line front end: datum loading, flag validation, command dispatch and
// table, JSON or DOT emission.
#pragma once

#include "iwk/emit.hpp"
#include "iwk/levi.hpp"
#include "iwk/oracles/suites.hpp"
#include "iwk/strata.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace iwk::cli {

using nlohmann::json;
using emit::Table;

struct Options {
  std::string datum;
  std::string format = "table";
  unsigned threads = 1;
  std::string mu, level = "iwahori", trans, fin, newton, from, to, suite;
};

/// A rendered command result; `dot` is set only for commands with a graph form.
struct Output {
  json doc;
  std::string text;
  std::optional<std::string> dot;
};

// --- flag parsing ------------------------------------------------------------

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.find_first_not_of(" \t") == std::string::npos) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    out.push_back(tok);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Int parse_int(const std::string& tok) {
  const bool ok = !tok.empty() && tok != "-" &&
                  tok.find_first_not_of("0123456789", tok[0] == '-' ? 1 : 0) == std::string::npos;
  if (!ok) throw Error("USAGE", "malformed integer '" + tok + "'");
  return Int(tok);
}

inline Rat parse_rat(const std::string& tok) {
  const auto slash = tok.find('/');
  if (slash == std::string::npos) return Rat(parse_int(tok));
  const Int den = parse_int(tok.substr(slash + 1));
  if (den.is_zero()) throw Error("USAGE", "zero denominator in '" + tok + "'");
  return Rat(parse_int(tok.substr(0, slash)), den);
}

inline std::vector<Int> parse_ints(const std::string& text, std::size_t arity, const std::string& what) {
  std::vector<Int> out;
  for (const auto& t : split_list(text)) out.push_back(parse_int(t));
  if (out.size() != arity)
    throw Error("USAGE", what + " '" + text + "' must have " + std::to_string(arity) + " coordinates");
  return out;
}

inline RatCoWeight parse_rats(const std::string& text, std::size_t arity, const std::string& what) {
  RatCoWeight out;
  for (const auto& t : split_list(text)) out.coords.push_back(parse_rat(t));
  if (out.coords.size() != arity)
    throw Error("USAGE", what + " '" + text + "' must have " + std::to_string(arity) + " coordinates");
  return out;
}

/// `iwahori`, `very-special`, or `K=<comma list of S-indices>`.
inline std::vector<int> parse_level(const DatumPtr& d, const std::string& text) {
  if (text == "iwahori") return {};
  if (text == "very-special") return find_very_special(d);
  if (text.rfind("K=", 0) != 0)
    throw Error("USAGE", "level '" + text + "' must be iwahori, very-special or K=<indices>");
  std::vector<int> K;
  const int n = static_cast<int>(d->generators().size());
  for (const auto& t : split_list(text.substr(2))) {
    const Int v = parse_int(t);
    if (v < 0 || v >= n) throw Error("USAGE", "level index " + t + " is outside S = {0.." + std::to_string(n - 1) + "}");
    K.push_back(static_cast<int>(v));
  }
  K = normalize_level(*d, std::move(K));
  check_level(*d, K);
  return K;
}

/// t^λ·s_{i1}···s_{ik} from a translation and a word in the finite simple reflections.
inline IwElement parse_element(const DatumPtr& d, const std::string& trans, const std::string& fin) {
  IwElement x = translation(d, parse_coweight(*d, trans));
  for (const auto& t : split_list(fin)) {
    const Int v = parse_int(t);
    if (v < 0 || v >= static_cast<long>(d->generators().size()) || d->generators()[static_cast<int>(v)].affine)
      throw Error("USAGE", "s" + t + " is not a finite simple reflection");
    x = right_mul_gen(x, static_cast<int>(v));
  }
  return x;
}

// --- row helpers ---------------------------------------------------------------

inline std::string rat_vec_str(const RatCoWeight& v) { return to_string(v); }

inline std::vector<std::string> element_row(const IwElement& x) {
  return {element_label(x), std::to_string(length(x)), emit::vec_str(omega_component(x)),
          emit::vec_str(x.trans().coords)};
}

inline const std::vector<std::string>& element_header() {
  static const std::vector<std::string> h{"element", "length", "omega_class", "translation"};
  return h;
}

inline json element_array(const std::vector<IwElement>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(element_to_json(x));
  return a;
}

inline json naturals_json(const std::vector<int>& v) {
  json a = json::array();
  for (int s : v) a.push_back(s);
  return a;
}

inline std::string pi1_m_str(const LeviDatum& L) { return L.pi1_M().describe(); }

// --- commands --------------------------------------------------------------------

inline Output cmd_presets() {
  Output o;
  o.doc = json::array();
  Table t{{"preset"}, {}};
  for (const auto& n : preset_names()) {
    o.doc.push_back(n);
    t.rows.push_back({n});
  }
  o.text = t.render();
  return o;
}

inline Output element_list(const std::vector<IwElement>& xs, const std::vector<int>& K, const DatumPtr& d) {
  Output o;
  o.doc = element_array(xs);
  Table t{element_header(), {}};
  const bool vs = !K.empty() && is_very_special(d, K);
  std::vector<Rat> vertex;
  if (vs) {
    t.header.push_back("avatar");
    vertex = level_vertex(*d, K);
  }
  for (const auto& x : xs) {
    auto row = element_row(x);
    if (vs) row.push_back(to_string(very_special_avatar(x, vertex)));
    t.rows.push_back(std::move(row));
  }
  o.text = t.render();
  return o;
}

inline Output cmd_tau(const DatumPtr& d, const CoWeight& mu) {
  const IwElement tau = tau_of(d, mu);
  Output o;
  o.doc = element_to_json(tau);
  o.text = Table{element_header(), {element_row(tau)}}.render();
  return o;
}

inline Output cmd_bgmu(const DatumPtr& d, const CoWeight& mu, unsigned threads) {
  Output o;
  o.doc = json::array();
  Table t{{"newton", "kottwitz", "basic", "witness"}, {}};
  for (const auto& e : b_g_mu(d, mu, threads)) {
    o.doc.push_back({{"kottwitz", emit::int_vec_json(e.invariants.kottwitz)},
                     {"newton", emit::rat_vec_json(e.invariants.newton)},
                     {"basic", e.invariants.is_basic},
                     {"witness", element_to_json(e.witness)}});
    t.rows.push_back({rat_vec_str(e.invariants.newton), emit::vec_str(e.invariants.kottwitz),
                      emit::bool_str(e.invariants.is_basic), element_label(e.witness)});
  }
  o.text = t.render();
  return o;
}

inline Output cmd_newton(const IwElement& x) {
  const NewtonData n = newton(x);
  const SigmaClassInvariants inv = invariants(x);
  const bool straight = is_straight(x);
  Output o;
  o.doc = {{"element", element_to_json(x)},        {"length", length(x)},
           {"nu", emit::rat_vec_json(n.nu)},       {"nu_dom", emit::rat_vec_json(n.nu_dom)},
           {"period", n.period},                   {"kottwitz", emit::int_vec_json(inv.kottwitz)},
           {"straight", straight},                 {"basic", inv.is_basic}};
  Table t{{"field", "value"}, {}};
  t.rows = {{"element", element_label(x)},
            {"length", std::to_string(length(x))},
            {"nu", rat_vec_str(n.nu)},
            {"nu_dom", rat_vec_str(n.nu_dom)},
            {"period", std::to_string(n.period)},
            {"kottwitz", emit::vec_str(inv.kottwitz)},
            {"straight", emit::bool_str(straight)},
            {"basic", emit::bool_str(inv.is_basic)}};
  o.text = t.render();
  return o;
}

inline Output cmd_straight(const DatumPtr& d, const CoWeight& mu, unsigned threads) {
  Output o;
  o.doc = json::array();
  Table t{{"element", "length", "newton", "kottwitz"}, {}};
  for (const auto& x : straight_elements(adm(d, mu, threads))) {
    const SigmaClassInvariants inv = invariants(x);
    o.doc.push_back({{"element", element_to_json(x)},
                     {"length", length(x)},
                     {"newton", emit::rat_vec_json(inv.newton)},
                     {"kottwitz", emit::int_vec_json(inv.kottwitz)}});
    t.rows.push_back({element_label(x), std::to_string(length(x)), rat_vec_str(inv.newton), emit::vec_str(inv.kottwitz)});
  }
  o.text = t.render();
  return o;
}

inline std::string poset_dot(const std::vector<IwElement>& nodes, std::vector<int> K, AdmKind kind,
                             const std::vector<bool>& filled, unsigned threads) {
  AdmissibleSet s;
  s.level = std::move(K);
  s.kind = kind;
  s.elements = nodes;
  const ClosurePoset p = closure_poset(s, threads);
  return emit::dot(p.nodes, p.covers, filled);
}

inline Output cmd_strata(const DatumPtr& d, const CoWeight& mu, const std::vector<int>& K, unsigned threads) {
  const auto rows = strata_table(d, mu, K, threads);
  Output o;
  o.doc = json::array();
  Table t{{"element", "length", "supp_sigma", "basic", "ekor", "kr", "omega_class"}, {}};
  std::vector<IwElement> nodes;
  std::vector<bool> basic;
  for (const auto& r : rows) {
    o.doc.push_back({{"element", element_to_json(r.element)},
                     {"length", r.length},
                     {"supp_sigma", naturals_json(r.supp_sigma)},
                     {"basic", r.basic},
                     {"ekor", r.is_ekor},
                     {"kr", r.is_kr},
                     {"omega_class", emit::int_vec_json(r.omega_class)}});
    t.rows.push_back({element_label(r.element), std::to_string(r.length), emit::set_str(r.supp_sigma),
                      emit::bool_str(r.basic), emit::bool_str(r.is_ekor), emit::bool_str(r.is_kr),
                      emit::vec_str(r.omega_class)});
    nodes.push_back(r.element);
    basic.push_back(r.basic);
  }
  o.text = t.render();
  o.dot = poset_dot(nodes, K, K.empty() ? AdmKind::iwahori : AdmKind::parahoric_double_coset, basic, threads);
  return o;
}

inline Output cmd_components(const DatumPtr& d, const CoWeight& mu, const std::vector<int>& K, unsigned threads) {
  const IwElement tau = tau_of(d, mu);
  const auto factors = affine_factors(*d);
  const auto compact = compact_type_factors(tau);
  const auto central = mu_central_factors(*d, mu);
  const FgAbelian fix = pi1_I_sigma(*d).group;
  Output o;
  o.doc = json::object();
  o.doc["pi1_sigma"] = fix.describe();
  o.doc["factors"] = json::array();
  Table ft{{"factor", "compact_type", "mu_central"}, {}};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    o.doc["factors"].push_back(
        {{"nodes", naturals_json(factors[i])}, {"compact_type", bool(compact[i])}, {"mu_central", bool(central[i])}});
    ft.rows.push_back({emit::set_str(factors[i]), emit::bool_str(compact[i]), emit::bool_str(central[i])});
  }
  o.doc["orbit_parahorics"] = json::array();
  Table pt{{"orbit", "finite"}, {}};
  for (const auto& p : sigma_orbit_parahorics(tau)) {
    o.doc["orbit_parahorics"].push_back({{"generators", naturals_json(p.generators)}, {"finite", p.finite}});
    pt.rows.push_back({emit::set_str(p.generators), emit::bool_str(p.finite)});
  }
  o.doc["classes"] = json::array();
  Table ct{{"newton", "kottwitz", "count", "status"}, {}};
  for (const auto& e : b_g_mu(d, mu, threads)) {
    const ComponentReport r = component_report(d, mu, e.invariants, K);
    json count = r.count ? detail::int_json(*r.count) : json(nullptr);
    o.doc["classes"].push_back({{"newton", emit::rat_vec_json(e.invariants.newton)},
                                {"kottwitz", emit::int_vec_json(e.invariants.kottwitz)},
                                {"count", count},
                                {"symbolic", r.symbolic},
                                {"status", r.status}});
    ct.rows.push_back({rat_vec_str(e.invariants.newton), emit::vec_str(e.invariants.kottwitz),
                       r.count ? r.count->str() : r.symbolic, r.status});
  }
  o.text = "pi1(G)_I^sigma: " + fix.describe() + "\n\n" + ft.render() + "\n" + pt.render() + "\n" + ct.render();
  return o;
}

inline Output cmd_levi(const DatumPtr& d, const CoWeight& mu, unsigned threads) {
  Output o;
  o.doc = json::array();
  Table t{{"newton", "kottwitz", "J", "pi1_M", "x", "mu_x", "weakly_dominant"}, {}};
  for (const auto& e : b_g_mu(d, mu, threads)) {
    const LeviDatum L = levi_of_newton(d, e.invariants.newton);
    json members = json::array();
    const auto I = i_mu_b_m(d, mu, e.invariants, L);
    for (const auto& x : I) {
      const CoWeight mx = minuscule_dominant_rep(L, x).mu;
      const bool wd = is_weakly_dominant(*d, mx);
      members.push_back({{"x", emit::int_vec_json(x)}, {"mu_x", emit::int_vec_json(mx.coords)}, {"weakly_dominant", wd}});
      t.rows.push_back({rat_vec_str(e.invariants.newton), emit::vec_str(e.invariants.kottwitz), "{" + join(L.J, ",") + "}",
                        pi1_m_str(L), emit::vec_str(x), emit::vec_str(mx.coords), emit::bool_str(wd)});
    }
    o.doc.push_back({{"newton", emit::rat_vec_json(e.invariants.newton)},
                     {"kottwitz", emit::int_vec_json(e.invariants.kottwitz)},
                     {"J", naturals_json(L.J)},
                     {"pi1_M", pi1_m_str(L)},
                     {"members", members}});
  }
  o.text = t.render();
  return o;
}

inline Output cmd_path(const DatumPtr& d, const CoWeight& mu, const Options& opt, unsigned threads) {
  if (opt.newton.empty()) throw Error("USAGE", "path requires --newton");
  const RatCoWeight nu = parse_rats(opt.newton, d->free_rank(), "Newton point");
  std::optional<SigmaClassInvariants> b;
  for (const auto& e : b_g_mu(d, mu, threads))
    if (e.invariants.newton == nu) b = e.invariants;
  if (!b) throw Error("INVARIANTS_NOT_IN_BGMU", "no class with Newton point " + to_string(nu) + " in B(G, μ)");
  const LeviDatum L = levi_of_newton(d, nu);
  const std::size_t dim = L.pi1_M().dim();
  std::vector<std::pair<std::vector<Int>, std::vector<Int>>> pairs;
  if (!opt.from.empty() || !opt.to.empty()) {
    if (opt.from.empty() || opt.to.empty()) throw Error("USAGE", "--from and --to must be given together");
    pairs.emplace_back(L.pi1_M().reduce(parse_ints(opt.from, dim, "class")),
                       L.pi1_M().reduce(parse_ints(opt.to, dim, "class")));
  } else {
    const auto I = i_mu_b_m(d, mu, *b, L);
    for (const auto& x : I)
      for (const auto& y : I)
        if (x != y) pairs.emplace_back(x, y);
  }
  Output o;
  o.doc = json::array();
  Table t{{"from", "to", "moves"}, {}};
  for (const auto& [x, y] : pairs) {
    const auto path = find_path(mu, L, x, y);
    json moves = nullptr;
    std::string desc = "none";
    if (path) {
      moves = json::array();
      std::vector<std::string> parts;
      for (const Move& m : *path) {
        json alpha = json::array();
        for (int c : d->roots()[m.alpha].coeffs) alpha.push_back(c);
        moves.push_back({{"alpha", alpha}, {"r", m.r}, {"from", emit::int_vec_json(m.from_x)},
                         {"to", emit::int_vec_json(m.to_x)}});
        parts.push_back("(" + join(d->roots()[m.alpha].coeffs, "") + "," + std::to_string(m.r) + ")");
      }
      desc = parts.empty() ? "trivial" : join(parts, " ");
    }
    o.doc.push_back({{"from", emit::int_vec_json(x)}, {"to", emit::int_vec_json(y)}, {"moves", moves}});
    t.rows.push_back({emit::vec_str(x), emit::vec_str(y), desc});
  }
  o.text = t.render();
  return o;
}

inline Output cmd_poset(const DatumPtr& d, const CoWeight& mu, const std::vector<int>& K, unsigned threads) {
  const AdmissibleSet A = K.empty() ? adm(d, mu, threads) : adm_K(d, mu, K, threads);
  const ClosurePoset p = closure_poset(A, threads);
  std::vector<bool> basic;
  for (const auto& x : p.nodes) basic.push_back(kr_basic_flag(x));
  Output o;
  o.doc = json::object();
  o.doc["nodes"] = element_array(p.nodes);
  o.doc["basic"] = json::array();
  for (bool b : basic) o.doc["basic"].push_back(b);
  o.doc["covers"] = json::array();
  std::vector<std::vector<std::string>> below(p.nodes.size());
  for (const auto& [lo, hi] : p.covers) {
    o.doc["covers"].push_back({lo, hi});
    below[hi].push_back(std::to_string(lo));
  }
  Table t{{"#", "element", "length", "basic", "covers"}, {}};
  for (std::size_t i = 0; i < p.nodes.size(); ++i)
    t.rows.push_back({std::to_string(i), element_label(p.nodes[i]), std::to_string(length(p.nodes[i])),
                      emit::bool_str(basic[i]), join(below[i], ",")});
  o.text = t.render();
  o.dot = emit::dot(p.nodes, p.covers, basic);
  return o;
}

/// Runs a suite on one datum, or on every criterion preset when none is given.
inline Output cmd_oracle(const std::optional<DatumPtr>& d, const std::string& suite) {
  if (suite.empty()) throw Error("USAGE", "oracle requires --suite (one of " + join(oracle::suite_names(), ", ") + ")");
  std::vector<DatumPtr> data;
  if (d)
    data.push_back(*d);
  else
    for (const auto& n : oracle::criterion_presets()) data.push_back(preset(n));
  oracle::Report total;
  for (const auto& dd : data) {
    const oracle::Report r = oracle::run_suite(suite, dd);
    total.checked += r.checked;
    total.mismatches.insert(total.mismatches.end(), r.mismatches.begin(), r.mismatches.end());
  }
  Output o;
  o.doc = {{"suite", suite}, {"checked", total.checked}, {"mismatches", json::array()}};
  Table t{{"input", "main", "oracle"}, {}};
  for (const auto& m : total.mismatches) {
    o.doc["mismatches"].push_back({{"input", m.input}, {"main", m.main_result}, {"oracle", m.oracle_result}});
    t.rows.push_back({m.input, m.main_result, m.oracle_result});
  }
  o.text = "suite " + suite + ": checked " + std::to_string(total.checked) + ", mismatches " +
           std::to_string(total.mismatches.size()) + "\n";
  if (!total.mismatches.empty()) o.text += t.render();
  return o;
}

// --- dispatch --------------------------------------------------------------------------

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"presets", "adm",  "adm-k", "ekor", "tau",  "bgmu",  "newton",
                                          "straight", "strata", "components", "levi", "path", "poset", "oracle"};
  return c;
}

inline bool needs_mu(const std::string& c) { return c != "presets" && c != "newton" && c != "oracle"; }

inline Output dispatch(const std::string& cmd, const Options& opt, std::ostream& err) {
  if (cmd == "presets") return cmd_presets();
  std::optional<DatumPtr> dp;
  if (!opt.datum.empty()) dp = build_datum(resolve_spec(opt.datum));
  if (cmd == "oracle") return cmd_oracle(dp, opt.suite);
  if (!dp) throw Error("USAGE", cmd + " requires --datum");
  const DatumPtr& d = *dp;
  const unsigned threads = std::max(1u, opt.threads);
  if (cmd == "newton") {
    if (opt.trans.empty()) throw Error("USAGE", "newton requires --trans");
    return cmd_newton(parse_element(d, opt.trans, opt.fin));
  }
  if (opt.mu.empty()) throw Error("USAGE", cmd + " requires --mu");
  const CoWeight mu = parse_coweight(*d, opt.mu);
  const std::vector<int> K = parse_level(d, opt.level);
  require_dominant(*d, mu);
  if (sigma_moves_mu(*d, mu)) err << "warning: σ moves μ̄ = " << to_string(mu) << "; results use μ̄ only\n";
  if (cmd == "adm") return element_list(adm(d, mu, threads).elements, {}, d);
  if (cmd == "adm-k") return element_list(adm_K(d, mu, K, threads).elements, K, d);
  if (cmd == "ekor") return element_list(k_adm(d, mu, K, threads).elements, {}, d);
  if (cmd == "tau") return cmd_tau(d, mu);
  if (cmd == "bgmu") return cmd_bgmu(d, mu, threads);
  if (cmd == "straight") return cmd_straight(d, mu, threads);
  if (cmd == "strata") return cmd_strata(d, mu, K, threads);
  if (cmd == "components") return cmd_components(d, mu, K, threads);
  if (cmd == "levi") return cmd_levi(d, mu, threads);
  if (cmd == "path") return cmd_path(d, mu, opt, threads);
  if (cmd == "poset") return cmd_poset(d, mu, K, threads);
  throw Error("USAGE", "unknown command " + cmd);
}

/// Parses argv, runs one command and writes its document to `out`; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options opt;
  CLI::App app{"Iwahori–Weyl group combinatorics with exact arithmetic", "iwk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--datum", opt.datum, "preset:NAME or path to a datum spec JSON file");
  app.add_option("--format", opt.format, "table, json or dot")->check(CLI::IsMember({"table", "json", "dot"}));
  app.add_option("--threads", opt.threads, "worker threads for internal fan-out")->check(CLI::Range(1u, 256u));

  const std::string level_help = "iwahori, very-special or K=<comma list of S-indices>";
  const std::string mu_help = "dominant coweight a,b,... with torsion after ';'";
  std::map<std::string, CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    subs[name] = s;
    return s;
  };
  add("presets", "list built-in presets");
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"adm", "Iwahori admissible set Adm(mu)"},
           {"tau", "length-zero element of Adm(mu)"},
           {"bgmu", "sigma-conjugacy classes B(G, mu)"},
           {"straight", "sigma-straight elements of Adm(mu)"},
           {"levi", "Levi data and I_{mu,b,M} per class of B(G, mu)"}})
    add(name, help)->add_option("--mu", opt.mu, mu_help)->required();
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"adm-k", "parahoric image Adm(mu)_K"},
           {"ekor", "EKOR index set ^K Adm(mu)"},
           {"strata", "KR and EKOR strata with basic-locus flags"},
           {"components", "connected-component predictions per class"},
           {"poset", "closure poset of Adm(mu) or Adm(mu)_K"}}) {
    CLI::App* s = add(name, help);
    s->add_option("--mu", opt.mu, mu_help)->required();
    s->add_option("--level", opt.level, level_help);
  }
  CLI::App* nw = add("newton", "Newton point and invariants of t^trans * w");
  nw->add_option("--trans", opt.trans, "translation part a,b,... with torsion after ';'")->required();
  nw->add_option("--fin", opt.fin, "finite part as a comma list of finite simple reflection indices");
  CLI::App* pa = add("path", "move paths between members of I_{mu,b,M}");
  pa->add_option("--mu", opt.mu, mu_help)->required();
  pa->add_option("--newton", opt.newton, "Newton point of b, e.g. 1/2,1/2")->required();
  pa->add_option("--from", opt.from, "source class in pi1(M)");
  pa->add_option("--to", opt.to, "target class in pi1(M)");
  add("oracle", "run a brute-force oracle suite")
      ->add_option("--suite", opt.suite, "one of " + join(oracle::suite_names(), ", "))
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "USAGE: " << e.what() << "\n";
    return 2;
  }

  std::string cmd;
  for (const auto& [name, s] : subs)
    if (s->parsed()) cmd = name;
  try {
    if (opt.format == "dot" && cmd != "poset" && cmd != "strata")
      throw Error("USAGE", "--format dot is only available for poset and strata");
    const Output o = dispatch(cmd, opt, err);
    if (opt.format == "json")
      out << o.doc.dump(2) << "\n";
    else if (opt.format == "dot")
      out << *o.dot;
    else
      out << o.text;
    if (cmd == "oracle" && !o.doc["mismatches"].empty()) {
      err << "ORACLE_MISMATCH: " << o.doc["mismatches"].size() << " mismatches\n";
      return 1;
    }
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == "USAGE" ? 2 : 1;
  } catch (const std::exception& e) {
    err << "INTERNAL: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace iwk::cli
