// Acceptance run: one PASS/FAIL line per criterion 1..10.
// Usage: acceptance <path to iwk binary>

#include "iwk/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace iwk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void check(bool cond, const std::string& what) {
    ++checked;
    if (!cond) {
      ok = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
  void merge(const oracle::Report& r) {
    checked += r.checked;
    for (const auto& m : r.mismatches) {
      ok = false;
      if (failures.size() < 5) failures.push_back(m.input + " main=" + m.main_result + " oracle=" + m.oracle_result);
    }
  }
};

int failed = 0;

void report(int n, Outcome o, double secs, double limit = 0) {
  if (limit > 0 && secs >= limit) o.check(false, "time " + std::to_string(secs) + " s exceeds " + std::to_string(limit) + " s");
  if (!o.ok) ++failed;
  std::printf("criterion %2d %s  checked=%zu  %.1f s\n", n, o.ok ? "PASS" : "FAIL", o.checked, secs);
  for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
}

struct Case {
  DatumPtr d;
  CoWeight mu;
  AdmissibleSet adm;
  ClosurePoset poset;
};

/// Every preset with every dominant μ of coordinates ≤ 2.
const std::vector<Case>& matrix() {
  static const std::vector<Case> cases = [] {
    std::vector<Case> out;
    for (const auto& n : preset_names()) {
      const DatumPtr d = preset(n);
      for (const auto& mu : oracle::dominant_matrix(*d, 2)) {
        AdmissibleSet a = adm(d, mu);
        ClosurePoset p = closure_poset(a);
        out.push_back({d, mu, std::move(a), std::move(p)});
      }
    }
    return out;
  }();
  return cases;
}

std::string where(const Case& c) { return c.d->name() + " mu=" + to_string(c.mu); }

void criterion1() {
  const auto t0 = Clock::now();
  Outcome o;
  for (const auto& n : oracle::criterion_presets()) o.merge(oracle::suite_length(preset(n), 5));
  report(1, o, seconds_since(t0), 60);
}

void criterion2() {
  const auto t0 = Clock::now();
  Outcome o;
  for (const auto& n : oracle::criterion_presets()) o.merge(oracle::suite_bruhat(preset(n), 4));
  report(2, o, seconds_since(t0));
}

void criterion3() {
  const auto t0 = Clock::now();
  Outcome o;
  for (const auto& c : matrix()) {
    const auto& xs = c.adm.elements;
    const std::set<IwElement> members(xs.begin(), xs.end());
    o.check(std::count_if(xs.begin(), xs.end(), [](const IwElement& x) { return length(x) == 0; }) == 1,
            where(c) + ": length-zero count");
    const auto cls = omega_component(xs.front());
    o.check(std::all_of(xs.begin(), xs.end(), [&](const IwElement& x) { return omega_component(x) == cls; }),
            where(c) + ": single Omega-class");
    bool closed = true;
    for (const auto& x : xs)
      for (const auto& y : coatoms(x)) closed = closed && members.count(y);
    o.check(closed, where(c) + ": downward closure");
    std::vector<bool> has_upper(xs.size(), false);
    for (const auto& [lo, hi] : c.poset.covers) has_upper[lo] = true;
    std::set<IwElement> maxima, expect;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!has_upper[i]) maxima.insert(c.poset.nodes[i]);
    for (const auto& l : weyl_orbit(*c.d, c.mu)) expect.insert(translation(c.d, l));
    o.check(maxima == expect, where(c) + ": maximal elements");
  }
  report(3, o, seconds_since(t0));
}

void criterion4() {
  const auto t0 = Clock::now();
  Outcome o;
  std::map<std::string, std::vector<int>> levels;
  for (const auto& c : matrix()) {
    auto it = levels.find(c.d->name());
    if (it == levels.end()) it = levels.emplace(c.d->name(), find_very_special(c.d)).first;
    const auto avatars = very_special_avatars(adm_K(c.d, c.mu, it->second));
    const std::set<CoWeight> ref = oracle::dominant_interval(c.d, c.mu);
    o.check(std::set<CoWeight>(avatars.begin(), avatars.end()) == ref && avatars.size() == ref.size(),
            where(c) + ": avatars " + std::to_string(avatars.size()) + " vs dominance " + std::to_string(ref.size()));
  }
  report(4, o, seconds_since(t0));
}

void criterion5() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto gl2 = preset("GL2");
  const CoWeight mu = parse_coweight(*gl2, "1,0");
  o.check(adm(gl2, mu).elements.size() == 3, "GL2 |adm| = 3");
  const auto b = b_g_mu(gl2, mu);
  std::set<RatCoWeight> nus;
  int basic = 0;
  for (const auto& e : b) {
    nus.insert(e.invariants.newton);
    basic += e.invariants.is_basic;
  }
  const RatCoWeight ord{{Rat(1), Rat(0)}}, bas{{Rat(1, 2), Rat(1, 2)}};
  o.check(b.size() == 2 && nus == std::set<RatCoWeight>{ord, bas}, "GL2 B(G,mu) Newton points");
  o.check(basic == 1, "GL2 exactly one basic class");
  const auto gsp4 = preset("GSp4");
  const CoWeight siegel = parse_coweight(*gsp4, "1,1,1");
  std::vector<IwElement> maxima;
  for (const auto& l : weyl_orbit(*gsp4, siegel)) maxima.push_back(IwElement(gsp4, l, 0));
  const std::size_t ref = oracle::down_set(maxima).size();
  const std::size_t main = adm(gsp4, siegel).elements.size();
  o.check(main == ref, "GSp4 Siegel |adm| = " + std::to_string(main) + ", oracle " + std::to_string(ref));
  std::printf("    GSp4 Siegel |adm| = %zu (oracle %zu)\n", main, ref);
  report(5, o, seconds_since(t0));
}

void criterion6() {
  const auto t0 = Clock::now();
  Outcome o;
  for (const auto& c : matrix()) {
    const auto a = b_g_mu_by_straight(c.d, c.mu);
    const auto b = b_g_mu_by_invariants(c.d, c.mu);
    std::set<SigmaClassInvariants> sa, sb(b.begin(), b.end());
    for (const auto& e : a) {
      sa.insert(e.invariants);
      o.check(Rat(length(e.witness)) == two_rho_pairing(*c.d, e.invariants.newton),
              where(c) + ": length of witness " + element_label(e.witness));
    }
    o.check(sa == sb, where(c) + ": routes differ");
    o.check(sa.size() == a.size() && sb.size() == b.size(), where(c) + ": repeated invariants");
  }
  report(6, o, seconds_since(t0));
}

void criterion7() {
  const auto t0 = Clock::now();
  Outcome o;
  for (const auto& c : matrix()) {
    const auto& p = c.poset;
    std::vector<bool> flag;
    for (const auto& x : p.nodes) flag.push_back(kr_basic_flag(x));
    for (const auto& [lo, hi] : p.covers)
      o.check(!flag[hi] || flag[lo], where(c) + ": basic flag not downward closed at " + element_label(p.nodes[lo]));
    o.check(kr_basic_flag(tau_of(c.d, c.mu)), where(c) + ": tau stratum not basic");
  }
  const auto gl2 = preset("GL2");
  const auto rows = adm(gl2, parse_coweight(*gl2, "1,0")).elements;
  const IwElement tau = tau_of(gl2, parse_coweight(*gl2, "1,0"));
  o.check(tau != identity(gl2), "GL2 tau nontrivial");
  int basic = 0;
  for (const auto& x : rows) basic += kr_basic_flag(x);
  o.check(rows.size() == 3 && basic == 1 && kr_basic_flag(tau), "GL2 exactly the tau stratum is basic");
  report(7, o, seconds_since(t0));
}

void criterion8() {
  const auto t0 = Clock::now();
  Outcome o;
  const std::map<std::string, std::string> expect{{"GL2", "Z"}, {"GL3", "Z"},  {"SL2", "0"},
                                                  {"SL3", "0"}, {"PGL2", "Z/2"}, {"ResE2-GL2", "Z"}};
  for (const auto& [n, s] : expect) {
    const auto d = preset(n);
    const std::string got = pi1_I_sigma(*d).group.describe();
    o.check(got == s, n + ": pi1_I^sigma = " + got + ", expected " + s);
    o.merge(oracle::suite_smith(d));
  }
  for (const auto& n : preset_names()) {
    const auto d = preset(n);
    const FgAbelian fix = pi1_I_sigma(*d).group;
    for (const auto& mu : oracle::dominant_matrix(*d, 1))
      for (const auto& e : b_g_mu(d, mu)) {
        const ComponentReport r = component_report(d, mu, e.invariants);
        if (r.count) o.check(fix.is_finite() && *r.count == fix.order(), n + " " + to_string(mu) + ": count");
        else o.check(!r.symbolic.empty(), n + " " + to_string(mu) + ": missing descriptor");
      }
  }
  report(8, o, seconds_since(t0));
}

void criterion9() {
  const auto t0 = Clock::now();
  Outcome o;
  std::map<std::pair<char, std::string>, std::size_t> failures;
  std::string current;
  auto check = [&](char part, bool cond, const std::string& what) {
    o.check(cond, std::string("(") + part + ") " + what);
    if (!cond) ++failures[{part, current}];
  };
  for (const auto& n : preset_names()) {
    const auto d = preset(n);
    current = n;
    for (std::size_t k = 0; k < d->roots().size(); ++k) {
      bool ok = true;
      try {
        const OrbitSize s = orbit_size(*d, static_cast<int>(k));
        ok = s.size == s.multiple * s.h;
      } catch (const Error&) {
        ok = false;
      }
      check('d', ok, n + ": root " + std::to_string(k));
    }
  }
  for (const auto& c : matrix()) {
    current = c.d->name();
    for (const auto& x : straight_elements(c.adm))
      check('a', short_element_check(x).ok, where(c) + ": " + element_label(x));
    for (const auto& e : b_g_mu(c.d, c.mu)) {
      const LeviDatum L = levi_of_newton(c.d, e.invariants.newton);
      const auto I = i_mu_b_m(c.d, c.mu, e.invariants, L);
      for (const auto& x : I) {
        const CoWeight mx = minuscule_dominant_rep(L, x).mu;
        check('c', is_weakly_dominant(*c.d, mx),
              where(c) + " nu=" + to_string(e.invariants.newton) + ": mu_x=" + to_string(mx) + " not weakly dominant");
      }
      for (const auto& x : I)
        for (const auto& y : I)
          check('b', find_path(c.mu, L, x, y).has_value(),
                where(c) + ": no path (" + join(x) + ") -> (" + join(y) + ")");
    }
  }
  for (const auto& [key, count] : failures)
    std::printf("    part (%c) on %s: %zu failures\n", key.first, key.second.c_str(), count);
  report(9, o, seconds_since(t0), 120);
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  if (status != 0) out += "<exit " + std::to_string(status) + ">";
  return out;
}

void criterion10(const std::string& iwk) {
  const auto t0 = Clock::now();
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> data{
      {"GL2", "1,0"}, {"GSp4", "1,1,1"}, {"ResE2-GL2", "1,0,1,0"}, {"U3-unram", "1,0,-1"}};
  for (const auto& [name, mu] : data) {
    const auto d = preset(name);
    const std::string base = "'" + iwk + "' --datum preset:" + name + " ";
    std::vector<std::pair<std::string, std::string>> cmds{
        {"adm", "adm --mu " + mu},
        {"adm-k", "adm-k --mu " + mu + " --level very-special"},
        {"ekor", "ekor --mu " + mu + " --level very-special"},
        {"tau", "tau --mu " + mu},
        {"bgmu", "bgmu --mu " + mu},
        {"straight", "straight --mu " + mu},
        {"strata", "strata --mu " + mu},
        {"components", "components --mu " + mu},
        {"levi", "levi --mu " + mu},
        {"poset", "poset --mu " + mu},
        {"newton", "newton --trans " + mu}};
    for (const auto& e : b_g_mu(d, parse_coweight(*d, mu))) {
      std::vector<std::string> parts;
      for (const Rat& r : e.invariants.newton.coords) parts.push_back(to_string(r));
      cmds.push_back({"path", "path --mu " + mu + " --newton " + join(parts, ",")});
    }
    for (const auto& [command, args] : cmds)
      for (const std::string fmt : {"json", "table"}) {
        const std::string a = capture(base + args + " --format " + fmt + " 2>/dev/null");
        const std::string b = capture(base + args + " --format " + fmt + " --threads 2 2>/dev/null");
        o.check(a == b && a.find("<exit") == std::string::npos, name + " " + args + " " + fmt + ": output differs");
        if (fmt == "json") {
          bool rt = false;
          try {
            rt = emit::round_trips(command, d, nlohmann::json::parse(a));
          } catch (const std::exception&) {
          }
          o.check(rt, name + " " + args + ": JSON does not round-trip");
        }
      }
    for (const std::string command : {"poset", "strata"}) {
      const std::string args = command + " --mu " + mu + " --format dot";
      o.check(capture(base + args) == capture(base + args), name + " " + args + ": output differs");
    }
  }
  const std::string p1 = capture("'" + iwk + "' presets --format json");
  o.check(p1 == capture("'" + iwk + "' presets --format json"), "presets output differs");
  o.check(emit::round_trips("presets", preset("GL2"), nlohmann::json::parse(p1)), "presets JSON");
  for (const std::string suite : {"finite", "smith"}) {
    const std::string cmd = "'" + iwk + "' --datum preset:GSp4 oracle --suite " + suite + " --format json";
    const std::string a = capture(cmd);
    o.check(a == capture(cmd), "oracle " + suite + " output differs");
    o.check(emit::round_trips("oracle", preset("GSp4"), nlohmann::json::parse(a)), "oracle JSON");
  }
  report(10, o, seconds_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to iwk>\n";
    return 2;
  }
  try {
    criterion1();
    criterion2();
    const auto t0 = Clock::now();
    matrix();
    std::printf("test matrix: %zu (preset, mu) cases built in %.1f s\n", matrix().size(), seconds_since(t0));
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10(argv[1]);
  } catch (const std::exception& e) {
    std::printf("aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
