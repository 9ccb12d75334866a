// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hurwitz/cli.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/lift.hpp"
#include "hurwitz/reduced.hpp"

using namespace hurwitz;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [miss: " << what << "]";
    }
  }
};

NielsenSpec spec(const FamilySpec& f, std::vector<std::string> labels, Equivalence e = Equivalence::Inner,
                 const std::string& T = "natural") {
  return NielsenSpec::make(make_group(f), std::move(labels), e, T);
}

std::vector<int> units(int m) {
  std::vector<int> u;
  for (int x = 1; x < m; ++x)
    if (gcd_int(x, m) == 1) u.push_back(x);
  return u;
}

bool is_square(int x, int p) {
  for (int y = 1; y < p; ++y)
    if (y * y % p == x % p) return true;
  return false;
}

std::string list(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

struct Comp {
  int degree = 0, genus = 0, oracle = 0;
  std::vector<CuspOrbit> cusps;
};

Comp component(const NielsenSpec& s, const BraidOrbit& o) {
  auto rc = reduce(s, o);
  auto ga = gamma_actions(s, rc);
  Comp c;
  c.cusps = cusps(s, rc, ga);
  auto g = reduced_genus(rc, ga, c.cusps);
  c.degree = g.degree;
  c.genus = g.genus;
  c.oracle = g.genus_oracle;
  return c;
}

// 1
void a4(Outcome& out) {
  auto s = spec(FamilySpec::affine2(2, 0, 3), {"C+", "C+", "C-", "C-"});
  auto idx = all_orbits(s);
  auto ctx = lift_context(s);
  auto tr = tower_lift(s, idx);
  out.need(idx.orbits.size() == 2, "two components");
  std::map<int, int> lift_by_degree;
  for (std::size_t i = 0; i < idx.orbits.size(); ++i) {
    auto c = component(s, idx.orbits[i]);
    const int v = orbit_lift(ctx, s, idx.orbits[i]);
    lift_by_degree[c.degree] = v;
    out.detail << " deg " << c.degree << " genus " << c.genus << " lift " << (sign_of(v) > 0 ? "+1" : "-1")
               << " cover-preimage " << tr.cover_preimage[i] << " level-1 orbits " << tr.above[i].size() << ";";
    out.need(c.genus == 0, "genus 0");
    if (obstructed(v)) {
      out.need(tr.cover_preimage[i] == 0, "obstructed component has empty preimage");
    } else {
      out.need(!tr.above[i].empty(), "unobstructed component lifts to (Z/4)^2 x| Z/3");
      out.need(tr.cover_preimage[i] > 0, "unobstructed component has a preimage");
    }
  }
  out.need(lift_by_degree.size() == 2 && lift_by_degree.count(9) && lift_by_degree.count(6), "degrees 9 and 6");
  std::set<int> vals;
  for (auto& [d, v] : lift_by_degree) vals.insert(v);
  out.need(vals == std::set<int>{0, 1}, "lifts 0 and 1");
}

// 2
void serre(Outcome& out) {
  for (int ell : {3, 5, 7}) {
    auto inner = spec(FamilySpec::affine2(ell, 0, 2), {"2", "2", "2", "2"}, Equivalence::Inner, "alpha-cosets");
    auto ctx = lift_context(inner);
    auto L = component_lattice(inner);
    auto absolute = inner.with_equivalence(Equivalence::Absolute);
    auto act = normalizer_action_on_lift(absolute, ctx, L);
    auto sweep = serre_sweep(ctx, inner);
    std::vector<int> vals = act.inner_values;
    std::sort(vals.begin(), vals.end());
    const auto u = units(ell);
    const int phi = static_cast<int>(u.size());
    out.detail << " l=" << ell << ": inner " << L.inner.orbits.size() << ", values " << list(vals) << ", absolute "
               << L.absolute.orbits.size() << ", a(a3'-a2') mismatches " << sweep.formula_mismatches << "/"
               << (sweep.tuples - sweep.nongenerating) << ";";
    out.need(static_cast<int>(L.inner.orbits.size()) == phi, "phi(l) inner orbits at l=" + std::to_string(ell));
    out.need(vals == u, "values bijective with units at l=" + std::to_string(ell));
    out.need(L.absolute.orbits.size() == 2, "2 absolute orbits at l=" + std::to_string(ell));
    if (L.absolute.orbits.size() == 2) {
      bool split = true;
      for (const auto& over : act.values_over) {
        std::set<bool> kinds;
        for (int v : over) kinds.insert(is_square(v, ell));
        split = split && kinds.size() == 1;
      }
      out.need(split, "squares/nonsquares split at l=" + std::to_string(ell));
    }
    out.need(sweep.formula_mismatches == 0, "a(a3'-a2') matches at l=" + std::to_string(ell));
  }
}

// 3
void di(Outcome& out) {
  std::map<int, std::vector<int>> expect{{5, {1, 4}}, {7, {0, 1, 2, 3, 4, 5, 6}}, {11, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}};
  for (auto& [ell, want] : expect) {
    auto s = spec(FamilySpec::affine2(ell, 0, 3), {"C+", "C+", "C-", "C-"});
    auto ctx = lift_context(s);
    auto w = di_sweep(ctx, s);
    out.detail << " l=" << ell << ": DI values " << list(w.values) << ";";
    out.need(w.values == want, "DI value set " + list(want) + " at l=" + std::to_string(ell));
  }
  {
    auto s = spec(FamilySpec::affine2(11, 0, 3), {"C+", "C+", "C-", "C-"});
    auto c = di_check(lift_context(s), s, 3, -1);
    out.detail << " (3,-1) at l=11: lift " << c.value << ";";
    out.need(c.generates && c.value == 0, "(3,-1) at l=11 has lift 0");
  }
  for (int ell : {5, 7}) {
    auto s = spec(FamilySpec::affine2(ell, 0, 3), {"C+", "C+", "C-", "C-"});
    int both = 0, total = 0;
    for (const auto& o : all_orbits(s).orbits)
      for (const auto& c : component(s, o).cusps) {
        ++total;
        both += c.has_hm && c.has_di;
      }
    out.detail << " l=" << ell << ": cusps with HM and DI " << both << "/" << total << ";";
    out.need(both == 0, "HM/DI exclusive at l=" + std::to_string(ell));
  }
}

// 4
void dihedral(Outcome& out) {
  for (int ell : {3, 5, 7})
    for (int k : {0, 1}) {
      int m = ell;
      for (int i = 0; i < k; ++i) m *= ell;
      auto a = spec(FamilySpec::dihedral(m), {"2", "2", "2", "2"}, Equivalence::Absolute, "involution-cosets");
      const auto n = all_orbits(a).orbits.size();
      const int g_abs = cover_genus(a);
      const int g_inn = cover_genus(a.with_equivalence(Equivalence::Inner), true);
      out.detail << " m=" << m << ": " << n << " orbit, g_abs " << g_abs << ", g_inn " << g_inn << ";";
      out.need(n == 1 && g_abs == 0 && g_inn == 1, "dihedral m=" + std::to_string(m));
    }
}

// 5
void a5(Outcome& out) {
  {
    auto s = spec(FamilySpec::alternating(5), {"3", "3", "3", "3"});
    auto idx = all_orbits(s);
    auto ctx = lift_context(s);
    const int v = idx.orbits.size() == 1 ? orbit_lift(ctx, s, idx.orbits[0]) : -1;
    out.detail << " 3^4: " << idx.orbits.size() << " orbit, lift " << v << ", genus " << cover_genus(s) << ";";
    out.need(idx.orbits.size() == 1 && v == 0 && cover_genus(s) == 0, "C_{3^4}");
  }
  {
    auto s = spec(FamilySpec::alternating(5), {"5+", "5-", "3"});
    auto ctx = lift_context(s);
    auto cl = enumerate(s);
    bool per_ordering = true;
    for (const auto& o : orderings(s)) per_ordering = per_ordering && enumerate_ordering(s, o).size() == 1;
    bool spin = true;
    for (const auto& t : cl) spin = spin && lift_invariant(ctx, s.G(), t) == 1;
    out.detail << " 5+5-3: " << cl.size() << " classes, " << orderings(s).size() << " orderings, genus "
               << cover_genus(s) << ";";
    out.need(cl.size() == 6 && per_ordering && spin && cover_genus(s) == 1, "C_{5+5-3}");
  }
}

// 6
void gates(Outcome& out) {
  auto& g = gate_stats();
  const long n0 = g.nielsen_preserved, l0 = g.lift_constant, c0 = g.cusp_predictions, m0 = g.cusp_prediction_misses,
             o0 = g.genus_oracles, t0 = g.tower_checks;
  auto j = [](const FamilySpec& f, std::vector<std::string> labels, const std::string& eq = "inner",
              const std::string& T = "natural") {
    return nlohmann::json{{"group", f.to_json()}, {"classes", labels}, {"equivalence", eq}, {"T", T}};
  };
  std::vector<nlohmann::json> suite{
      j(FamilySpec::affine2(2, 0, 3), {"C+", "C+", "C-", "C-"}),
      j(FamilySpec::alternating(4), {"3+", "3+", "3-", "3-"}),
      j(FamilySpec::affine2(5, 0, 3), {"C+", "C+", "C-", "C-"}),
      j(FamilySpec::affine2(7, 0, 3), {"C+", "C+", "C-", "C-"}),
      j(FamilySpec::affine2(3, 0, 2), {"2", "2", "2", "2"}, "inner", "alpha-cosets"),
      j(FamilySpec::affine2(5, 0, 2), {"2", "2", "2", "2"}, "inner", "alpha-cosets"),
      j(FamilySpec::affine2(7, 0, 2), {"2", "2", "2", "2"}, "inner", "alpha-cosets"),
      j(FamilySpec::dihedral(5), {"2", "2", "2", "2"}, "absolute", "involution-cosets"),
      j(FamilySpec::dihedral(9), {"2", "2", "2", "2"}, "inner", "involution-cosets"),
      j(FamilySpec::alternating(5), {"3", "3", "3", "3"}),
      j(FamilySpec::alternating(5), {"5+", "5-", "3"}),
  };
  int components = 0, genus_match = 0, aborted = 0;
  std::vector<std::string> misses;
  for (const auto& sp : suite) {
    RunConfig cfg;
    cfg.spec = sp;
    cfg.command = "report";
    auto r = run(cfg);
    if (r.exit_code != kExitOk) {
      ++aborted;
      out.detail << " abort " << sp["group"].dump() << ": " << r.error << ";";
      continue;
    }
    for (const auto& c : r.report["components"]) {
      if (!c.contains("genus")) continue;
      ++components;
      genus_match += c["genus"] == c["genus_oracle"];
      for (const auto& cu : c["cusps"])
        if (!cu["prediction_ok"].get<bool>())
          misses.push_back(FamilySpec::from_json(sp["group"]).name() + " " + cu["label"].get<std::string>());
    }
  }
  // tower gate on every family where both sides run
  for (const auto& sp : {suite[0], suite[4]}) {
    RunConfig cfg;
    cfg.spec = sp;
    cfg.command = "tower";
    auto r = run(cfg);
    if (r.exit_code != kExitOk) {
      ++aborted;
      out.detail << " tower abort: " << r.error << ";";
    }
  }
  const long cusp_total = g.cusp_predictions - c0, cusp_miss = g.cusp_prediction_misses - m0;
  out.detail << " nielsen checks " << (g.nielsen_preserved - n0) << ", lift-constant "
             << (g.lift_constant - l0) << " orbits, genus " << genus_match << "/" << components << " (oracle runs "
             << (g.genus_oracles - o0) << "), tower " << (g.tower_checks - t0) << " checks, cusp widths "
             << (cusp_total - cusp_miss) << "/" << cusp_total << " predicted;";
  for (const auto& m : misses) out.detail << " miss " << m << ";";
  out.need(aborted == 0, "no gate aborted");
  out.need(genus_match == components, "genus oracle on every component");
  out.need(g.tower_checks - t0 > 0, "tower gate ran");
  out.need(cusp_miss == 0, "cusp-width prediction on every cusp");
}

// 7
void wohlfahrt_check(Outcome& out) {
  auto s = spec(FamilySpec::affine2(2, 0, 3), {"C+", "C+", "C-", "C-"});
  for (const auto& o : all_orbits(s).orbits) {
    auto c = component(s, o);
    if (c.degree != 9) continue;
    auto w = wohlfahrt(c.degree, c.cusps);
    out.detail << " A4 degree 9: N " << w.N << ", |PSL2| " << w.psl << ", " << w.verdict << ";";
    out.need(w.N == 12 && w.psl == 576, "N = 12, 576");
    out.need(w.not_modular, "9 does not divide 576");
  }
  for (int m : {3, 5, 7, 9, 25, 49}) {
    auto d = spec(FamilySpec::dihedral(m), {"2", "2", "2", "2"}, Equivalence::Inner, "involution-cosets");
    for (const auto& o : all_orbits(d).orbits) {
      auto c = component(d, o);
      auto w = wohlfahrt(c.degree, c.cusps);
      out.need(w.verdict == "inconclusive", "dihedral m=" + std::to_string(m) + " inconclusive");
    }
  }
  out.detail << " dihedral m in {3,5,7,9,25,49}: checked;";
}

}  // namespace

int main() {
  struct Crit {
    int id;
    double limit;
    std::function<void(Outcome&)> f;
  };
  std::vector<Crit> crits{{1, 10, a4},      {2, 60, serre},   {3, 300, di},
                          {4, 30, dihedral}, {5, 10, a5},      {6, 600, gates},
                          {7, 60, wohlfahrt_check}};
  int failed = 0;
  for (auto& c : crits) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.f(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) {
      out.pass = false;
      out.detail << " [over time limit " << c.limit << " s]";
    }
    failed += !out.pass;
    std::printf("criterion %d: %s (%.2f s)%s\n", c.id, out.pass ? "PASS" : "FAIL", secs, out.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
