#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "hurwitz/errors.hpp"
#include "hurwitz/lift.hpp"

using namespace hurwitz;

namespace {

NielsenSpec make_spec(const FamilySpec& f, std::vector<std::string> labels, Equivalence e = Equivalence::Inner,
                      const std::string& T = "natural") {
  return NielsenSpec::make(make_group(f), std::move(labels), e, T);
}

NielsenSpec serre(int ell, Equivalence e = Equivalence::Inner) {
  return make_spec(FamilySpec::affine2(ell, 0, 2), {"2", "2", "2", "2"}, e, "alpha-cosets");
}

NielsenSpec a4() { return make_spec(FamilySpec::affine2(2, 0, 3), {"C+", "C+", "C-", "C-"}); }

int md(long long a, int m) { return static_cast<int>(((a % m) + m) % m); }

std::vector<int> units(int m) {
  std::vector<int> u;
  for (int x = 1; x < m; ++x)
    if (std::gcd(x, m) == 1) u.push_back(x);
  return u;
}

// Same-order preimage found by scanning all of E.
Elem scan_lift(const CentralExtension& ext, Elem g) {
  Elem found = -1;
  for (Elem e = 0; e < ext.E->size(); ++e)
    if (ext.proj[e] == g && ext.E->order(e) == ext.G->order(g)) {
      REQUIRE(found < 0);
      found = e;
    }
  return found;
}

int scan_lift_value(const LiftContext& ctx, const Tuple& t) {
  const auto& ext = *ctx.ext;
  Elem p = 0;
  for (Elem g : t) p = ext.E->mul(p, scan_lift(ext, g));
  return ext.central[p];
}

}  // namespace

TEST_CASE("lift invariant agrees with a scan of the cover") {
  for (auto s : {a4(), serre(3), serre(5)}) {
    auto ctx = lift_context(s);
    for (const auto& t : enumerate(s)) CHECK(lift_invariant(ctx, s.G(), t) == scan_lift_value(ctx, t));
  }
}

TEST_CASE("lift invariant is constant on braid orbits") {
  for (auto s : {a4(), serre(3), serre(5), serre(7), make_spec(FamilySpec::affine2(5, 0, 3), {"C+", "C+", "C-", "C-"}),
                 make_spec(FamilySpec::alternating(5), {"3", "3", "3", "3"}),
                 make_spec(FamilySpec::alternating(5), {"5+", "5-", "3"})}) {
    auto ctx = lift_context(s);
    for (const auto& o : all_orbits(s).orbits) {
      const int v = orbit_lift(ctx, s, o);
      for (const auto& t : o.members) CHECK(lift_invariant(ctx, s.G(), t) == v);
    }
  }
}

TEST_CASE("HM tuples have lift 0") {
  for (auto s : {a4(), make_spec(FamilySpec::affine2(7, 0, 3), {"C+", "C+", "C-", "C-"})}) {
    auto ctx = lift_context(s);
    int hm = 0;
    for (const auto& t : enumerate(s))
      if (hm_detect(s.G(), t)) {
        ++hm;
        CHECK(lift_invariant(ctx, s.G(), t) == 0);
      }
    CHECK(hm > 0);
  }
}

TEST_CASE("A4: lifts +1 on the 18-orbit and -1 on the 12-orbit") {
  auto s = a4();
  auto ctx = lift_context(s);
  CHECK(ctx.cover == "k22z3");
  CHECK(ctx.modulus == 2);
  std::map<std::size_t, int> by_size;
  for (const auto& o : all_orbits(s).orbits) by_size[o.size()] = sign_of(orbit_lift(ctx, s, o));
  CHECK(by_size[18] == 1);
  CHECK(by_size[12] == -1);
  CHECK(obstructed(1));
  CHECK_FALSE(obstructed(0));
}

TEST_CASE("Serre case lift values") {
  for (int ell : {3, 5, 7}) {
    CAPTURE(ell);
    auto s = serre(ell);
    auto ctx = lift_context(s);
    CHECK(ctx.modulus == ell);
    const int h = (ell + 1) / 2;  // 1/2 mod ell
    for (int a = 0; a < ell; ++a)
      for (int x = 0; x < ell; ++x)
        for (int y = 0; y < ell; ++y)
          CHECK(lift_invariant(ctx, s.G(), serre_tuple(s.G(), a, x, y)) == md(-1LL * a * (y - x) * h, ell));
    auto w = serre_sweep(ctx, s);
    CHECK(w.values == units(ell));
    // a(a3'-a2') agrees only up to the factor -1/2, which is 1 mod 3
    if (ell == 3) CHECK(w.formula_mismatches == 0);
    else CHECK(w.formula_mismatches > 0);
    // one inner orbit per unit
    std::vector<int> vals;
    for (const auto& o : all_orbits(s).orbits) vals.push_back(orbit_lift(ctx, s, o));
    std::sort(vals.begin(), vals.end());
    CHECK(vals == units(ell));
  }
}

TEST_CASE("Serre case: normalizer scales lift values by the determinant") {
  for (int ell : {3, 5}) {
    auto s = serre(ell, Equivalence::Absolute);
    auto ctx = lift_context(s);
    auto L = component_lattice(s);
    auto act = normalizer_action_on_lift(s, ctx, L);
    CHECK(act.values_over.size() == 1);
    CHECK(act.values_over[0] == units(ell));
    std::set<int> sc(act.scalars.begin(), act.scalars.end());
    const auto u = units(ell);
    CHECK(sc == std::set<int>(u.begin(), u.end()));
    CHECK(act.schur_separated);  // a single absolute orbit
  }
}

TEST_CASE("A4 absolute orbits are Schur separated") {
  auto s = make_spec(FamilySpec::affine2(2, 0, 3), {"C+", "C+", "C-", "C-"}, Equivalence::Absolute);
  auto ctx = lift_context(s);
  auto act = normalizer_action_on_lift(s, ctx, component_lattice(s));
  REQUIRE(act.values_over.size() == 2);
  CHECK(act.schur_separated);
  std::set<std::vector<int>> got(act.values_over.begin(), act.values_over.end());
  CHECK(got == std::set<std::vector<int>>{{0}, {1}});
}

TEST_CASE("DI lift values") {
  struct Case {
    int ell;
    std::vector<int> values;
    int nongen;
  };
  for (const auto& c : {Case{5, {1, 2, 3, 4}, 1}, Case{7, {1, 2, 3, 4, 5, 6}, 13}, Case{11, units(11), 1}}) {
    CAPTURE(c.ell);
    auto s = make_spec(FamilySpec::affine2(c.ell, 0, 3), {"C+", "C+", "C-", "C-"});
    auto ctx = lift_context(s);
    for (int m = 0; m < c.ell; ++m)
      for (int n = 0; n < c.ell; ++n) {
        auto t = di_tuple4(s.G(), m, n);
        REQUIRE_FALSE(t.empty());
        CHECK(lift_invariant(ctx, s.G(), t) == md(1LL * m * m - 1LL * m * n + 1LL * n * n, c.ell));
      }
    auto w = di_sweep(ctx, s);
    CHECK(w.values == c.values);
    CHECK(w.nongenerating == c.nongen);
    // failures to generate are the eigenlines (and 0), present only for ell = 1 mod 3
    CHECK(w.eigenline_nongenerating == w.nongenerating);
    if (c.ell % 3 != 1) CHECK(w.nongenerating == 1);
    CHECK(w.formula_mismatches > 0);
  }
}

TEST_CASE("DI element (3,-1) at ell = 11") {
  auto s = make_spec(FamilySpec::affine2(11, 0, 3), {"C+", "C+", "C-", "C-"});
  auto ctx = lift_context(s);
  auto c = di_check(ctx, s, 3, -1);
  CHECK(c.generates);
  CHECK(c.braided);
  CHECK(c.formula == 0);  // m^2 - n^2 - mn
  CHECK(c.value == 2);    // m^2 - mn + n^2
}

TEST_CASE("m^2 - n^2 - mn is not constant on alpha-conjugate parameters") {
  // (1,0) and A*(1,0) = (0,1) give conjugate DI tuples
  for (int ell : {5, 7, 11}) {
    CHECK(di_formula(1, 0, ell) != di_formula(0, 1, ell));
    CHECK(di_extension_value(1, 0, ell) == di_extension_value(0, 1, ell));
  }
}

TEST_CASE("A_n spin invariant") {
  auto A5 = make_spec(FamilySpec::alternating(5), {"3", "3", "3", "3"});
  auto ctx = lift_context(A5);
  CHECK(ctx.cover == "an_spin");
  for (const auto& o : all_orbits(A5).orbits) CHECK(orbit_lift(ctx, A5, o) == 0);
  auto B = make_spec(FamilySpec::alternating(5), {"5+", "5-", "3"});
  for (const auto& t : enumerate(B)) {
    CHECK(an_spin(B.G(), t) == 1);
    CHECK(mt_parity(B.G(), t) == 1);
  }
  // n-1 three-cycles: (n-1) mod 2
  auto A6 = make_spec(FamilySpec::alternating(6), {"3", "3", "3", "3", "3"});
  auto cl = enumerate(A6);
  REQUIRE_FALSE(cl.empty());
  CHECK(an_spin(A6.G(), cl.front()) == 1);
  CHECK(an_spin(A6.G(), cl.back()) == 1);
}

TEST_CASE("pure-cycle reduction keeps the spin invariant") {
  auto G = make_group(FamilySpec::alternating(6));
  auto s = NielsenSpec::make(G, {"3.3", "3.3", "3", "3"}, Equivalence::Inner);
  auto p = pure_cycle_reduce(s);
  auto cl = enumerate(s);
  REQUIRE_FALSE(cl.empty());
  for (std::size_t k = 0; k < cl.size(); k += 7) {
    const Tuple& t = cl[k];
    // split each 3.3 entry into its two (commuting) 3-cycles
    Tuple u;
    for (Elem g : t) {
      const auto& c = G->coords(g);
      std::vector<char> seen(6, 0);
      for (int i = 0; i < 6; ++i) {
        if (seen[i] || c[i] == i) continue;
        std::vector<int> img{0, 1, 2, 3, 4, 5};
        for (int j = i; !seen[j]; j = c[j]) {
          seen[j] = 1;
          img[j] = c[j];
        }
        u.push_back(G->find(img));
      }
    }
    REQUIRE(u.size() == 6);
    CHECK(product(*G, u) == 0);
    CHECK(is_nielsen(p, u));
    CHECK(an_spin(*G, u) == an_spin(*G, t));
  }
}

TEST_CASE("tower: A4 to (Z/4)^2 x| Z/3") {
  auto s = a4();
  auto idx = all_orbits(s);
  auto tr = tower_lift(s, idx);
  CHECK(tr.upper.G().spec().to_json() == FamilySpec::affine2(2, 1, 3).to_json());
  REQUIRE(tr.above.size() == 2);
  auto ctx = lift_context(s);
  for (std::size_t i = 0; i < idx.orbits.size(); ++i) {
    const int v = orbit_lift(ctx, s, idx.orbits[i]);
    // both orbits lift one level in the family
    CHECK(tr.above[i].size() == 2);
    for (int j : tr.above[i]) CHECK(tr.upper_values[j] % 2 == v);
    // the representation cover is where obstruction shows
    CHECK((tr.cover_preimage[i] == 0) == obstructed(v));
  }
  std::map<std::size_t, std::size_t> pre;
  for (std::size_t i = 0; i < idx.orbits.size(); ++i) pre[idx.orbits[i].size()] = tr.cover_preimage[i];
  CHECK(pre[12] == 0);
  CHECK(pre[18] == 18);
}

TEST_CASE("tower: Serre l = 3 lifts to level 1 compatibly") {
  auto s = serre(3);
  auto idx = all_orbits(s);
  auto tr = tower_lift(s, idx);
  CHECK(tr.upper.G().spec().to_json() == FamilySpec::affine2(3, 1, 2).to_json());
  for (std::size_t i = 0; i < idx.orbits.size(); ++i) {
    CHECK_FALSE(tr.above[i].empty());
    for (int j : tr.above[i]) CHECK(tr.upper_values[j] % 3 == tr.lower_values[i]);
  }
  for (auto c : tr.cover_preimage) CHECK(c == 0);
}

TEST_CASE("reduction map is a homomorphism") {
  auto up = make_group(FamilySpec::affine2(2, 1, 3));
  auto lo = make_group(FamilySpec::affine2(2, 0, 3));
  auto r = reduction_map(*up, *lo);
  for (Elem a = 0; a < up->size(); ++a)
    for (Elem b = 0; b < up->size(); ++b) CHECK(r[up->mul(a, b)] == lo->mul(r[a], r[b]));
  CHECK(next_level(FamilySpec::dihedral(5)).to_json() == FamilySpec::dihedral(25).to_json());
}

TEST_CASE("rational unions and moduli degree") {
  auto d = make_spec(FamilySpec::dihedral(7), {"2", "2", "2", "2"});
  CHECK(bcl_data(d).rational_union);
  auto a = make_spec(FamilySpec::alternating(5), {"5+", "5-", "3"});
  auto ba = bcl_data(a);
  CHECK(ba.rational_union);
  auto b1 = make_spec(FamilySpec::alternating(5), {"5+", "5+", "3"});
  CHECK_FALSE(bcl_data(b1).rational_union);
  for (int ell : {3, 5, 7}) {
    auto s = serre(ell);
    auto ctx = lift_context(s);
    auto b = bcl_data(s);
    for (const auto& o : all_orbits(s).orbits)
      CHECK(component_moduli_degree(b, ctx, orbit_lift(ctx, s, o)) == static_cast<int>(units(ell).size()));
  }
}

TEST_CASE("lift context errors") {
  CHECK_THROWS_AS(lift_context(make_group(FamilySpec::dihedral(5))), ConfigError);
  CHECK_THROWS_AS(lift_context(make_group(FamilySpec::alternating(5)), "heis2"), ConfigError);
  auto abs = serre(3, Equivalence::Absolute);
  auto ctx = lift_context(abs);
  auto idx = all_orbits(abs);
  CHECK_THROWS_AS(orbit_lift(ctx, abs, idx.orbits[0]), ConfigError);
}
