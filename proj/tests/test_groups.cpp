#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "hurwitz/errors.hpp"
#include "hurwitz/groups.hpp"

using namespace hurwitz;

namespace {

std::vector<FamilySpec> small_specs() {
  return {FamilySpec::alternating(4), FamilySpec::alternating(5), FamilySpec::symmetric(4),
          FamilySpec::dihedral(5),    FamilySpec::dihedral(9),     FamilySpec::affine2(3, 0, 2),
          FamilySpec::affine2(2, 0, 3), FamilySpec::affine2(2, 1, 3), FamilySpec::affine2(5, 0, 3),
          FamilySpec::heis2(3, 0),    FamilySpec::k22z3(2, 0),     FamilySpec::k22z3(3, 0)};
}

// Conjugacy class by brute force: {h g h^-1 : h in G}.
std::set<Elem> brute_class(const Group& G, Elem g) {
  std::set<Elem> s;
  for (Elem h = 0; h < G.size(); ++h) s.insert(G.mul(G.mul(h, g), G.inv(h)));
  return s;
}

// Subgroup generated, by repeated right multiplication.
std::set<Elem> brute_closure(const Group& G, const std::vector<Elem>& gens) {
  std::set<Elem> s{G.identity()};
  std::vector<Elem> todo{G.identity()};
  while (!todo.empty()) {
    Elem x = todo.back();
    todo.pop_back();
    for (Elem g : gens) {
      Elem y = G.mul(x, g);
      if (s.insert(y).second) todo.push_back(y);
    }
  }
  return s;
}

Elem perm(const Group& G, std::vector<int> images) { return G.find(images); }

}  // namespace

TEST_CASE("group axioms on small families") {
  for (const auto& fs : small_specs()) {
    auto G = make_group(fs);
    CAPTURE(fs.name());
    CHECK(static_cast<std::uint64_t>(G->size()) == fs.formula_order());
    const int n = G->size();
    for (Elem a = 0; a < n; ++a) {
      CHECK(G->mul(a, 0) == a);
      CHECK(G->mul(0, a) == a);
      CHECK(G->mul(a, G->inv(a)) == 0);
      CHECK(G->pow(a, G->order(a)) == 0);
    }
    const int step = n > 100 ? 7 : 1;
    for (Elem a = 0; a < n; a += step)
      for (Elem b = 0; b < n; b += step)
        for (Elem c = 0; c < n; c += step) REQUIRE(G->mul(G->mul(a, b), c) == G->mul(a, G->mul(b, c)));
  }
}

TEST_CASE("elements are sorted by coordinates") {
  for (const auto& fs : small_specs()) {
    auto G = make_group(fs);
    for (Elem a = 1; a < G->size(); ++a) CHECK(G->coords(a - 1) < G->coords(a));
    CHECK(G->find(G->coords(G->size() - 1)) == G->size() - 1);
  }
}

TEST_CASE("k22z3 order is 3 l^3 and matches the closure of its generators") {
  for (int ell : {2, 3, 5}) {
    auto G = make_group(FamilySpec::k22z3(ell, 0));
    CHECK(G->size() == 3 * ell * ell * ell);
    CHECK(brute_closure(*G, G->generators()).size() == static_cast<std::size_t>(G->size()));
  }
  CHECK(make_group(FamilySpec::k22z3(5, 0))->size() == 375);
}

TEST_CASE("k22z3(2,0) is SL(2,3): one involution, center of order 2") {
  auto G = make_group(FamilySpec::k22z3(2, 0));
  int inv = 0;
  for (Elem a = 1; a < G->size(); ++a) inv += G->order(a) == 2;
  CHECK(inv == 1);
  CHECK(G->center().size() == 2);
}

TEST_CASE("class sizes agree with brute-force conjugation") {
  for (const auto& fs : small_specs()) {
    auto G = make_group(fs);
    std::size_t total = 0;
    for (const auto& c : G->classes()) {
      auto b = brute_class(*G, c.rep);
      CHECK(std::vector<Elem>(b.begin(), b.end()) == c.members);
      CHECK(c.order == G->order(c.rep));
      total += c.members.size();
    }
    CHECK(total == static_cast<std::size_t>(G->size()));
  }
}

TEST_CASE("labelled classes") {
  auto A4 = make_group(FamilySpec::alternating(4));
  Elem c123 = perm(*A4, {1, 2, 0, 3});
  REQUIRE(c123 >= 0);
  CHECK(A4->conj_class(c123).members.size() == 4);

  auto G = make_group(FamilySpec::affine2(5, 0, 3));
  const auto& cp = G->classes()[G->class_index("C+")];
  CHECK(cp.members.size() == 25);
  CHECK(G->class_of(G->alpha()) == G->class_index("C+"));
  for (Elem g : cp.members) CHECK(G->coords(g)[0] == 1);
  CHECK(G->classes()[G->class_index("C-")].members.size() == 25);
  CHECK_THROWS_AS(G->class_index("nope"), ConfigError);

  auto A5 = make_group(FamilySpec::alternating(5));
  CHECK(A5->classes()[A5->class_index("5+")].members.size() == 12);
  CHECK(A5->classes()[A5->class_index("5-")].members.size() == 12);
  CHECK(A5->classes()[A5->class_index("3")].members.size() == 20);
}

TEST_CASE("generation") {
  auto A4 = make_group(FamilySpec::alternating(4));
  Elem a = perm(*A4, {1, 2, 0, 3}), b = perm(*A4, {1, 3, 2, 0});
  CHECK(brute_closure(*A4, {a, b}).size() == 12);
  CHECK(A4->generates({a, b}));
  CHECK_FALSE(A4->generates({a}));
  CHECK(A4->closure({a}).size() == 3);
}

TEST_CASE("alpha acts on V as A*") {
  auto G = make_group(FamilySpec::affine2(7, 0, 3));
  Elem al = G->alpha();
  for (int x = 0; x < 7; ++x)
    for (int y = 0; y < 7; ++y) {
      Elem v = G->find({0, x, y});
      // alpha^-1 v alpha = A* v with A*(x,y) = (-y, x-y)
      Elem w = G->mul(G->mul(G->inv(al), v), al);
      CHECK(G->coords(w) == std::vector<int>{0, mod(-y, 7), mod(x - y, 7)});
    }
  CHECK(G->order(al) == 3);
}

TEST_CASE("center and point stabilizers") {
  auto D5 = make_group(FamilySpec::dihedral(5));
  CHECK(D5->center().size() == 1);
  auto S = make_group(FamilySpec::affine2(5, 0, 2));
  CHECK(S->center().size() == 1);
  auto st = point_stabilizer(*S, "alpha-cosets");
  auto c = cen_in_Sn(*S, st);
  CHECK(c.quotient_order == 1);
  auto T = coset_rep(*S, st);
  CHECK(T.degree == 25);
  // the regular representation has no fixed points off the identity
  auto R = coset_rep(*D5, point_stabilizer(*D5, "regular"));
  CHECK(R.degree == 10);
  for (Elem g = 1; g < D5->size(); ++g) CHECK(R.cycles(g) < 10);
}

TEST_CASE("gl2 orders against an independent count") {
  for (int N = 2; N <= 12; ++N) {
    std::uint64_t gl = 0, sl = 0;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c)
          for (int d = 0; d < N; ++d) {
            int det = ((a * d - b * c) % N + N) % N;
            if (std::gcd(det, N) == 1) ++gl;
            if (det == 1 % N) ++sl;
          }
    const std::uint64_t pm = N == 2 ? 1 : 2;  // {I, -I}
    auto o = gl_orders(N);
    CAPTURE(N);
    CHECK(o.gl == gl);
    CHECK(o.sl == sl);
    CHECK(o.psl == sl / pm);
    auto br = gl_orders_brute(N);
    CHECK(br.psl == o.psl);
    CHECK(gl2_elements(N).size() == gl);
  }
  CHECK(gl_orders(2).gl == 6);
  CHECK(gl_orders(3).sl == 24);
  CHECK(gl_orders(12).psl == 576);
}

TEST_CASE("central extensions") {
  struct Case {
    std::string tag;
    FamilySpec base;
    int kernel;
  };
  std::vector<Case> cases{{"heis2", FamilySpec::affine2(3, 0, 2), 3},
                          {"heis2", FamilySpec::affine2(5, 0, 2), 5},
                          {"heis2", FamilySpec::affine2(7, 0, 2), 7},
                          {"k22z3", FamilySpec::affine2(2, 0, 3), 2},
                          {"k22z3", FamilySpec::affine2(5, 0, 3), 5},
                          {"k22z3", FamilySpec::affine2(7, 0, 3), 7}};
  for (const auto& cs : cases) {
    CAPTURE(cs.base.name());
    auto G = make_group(cs.base);
    auto ext = make_extension(cs.tag, G);
    const Group& E = *ext->E;
    CHECK(ext->kernel_order == cs.kernel);
    CHECK(E.size() == G->size() * cs.kernel);
    // proj is a homomorphism
    const int step = E.size() > 400 ? 5 : 1;
    for (Elem a = 0; a < E.size(); a += step)
      for (Elem b = 0; b < E.size(); b += step) REQUIRE(ext->proj[E.mul(a, b)] == G->mul(ext->proj[a], ext->proj[b]));
    // kernel is central and of the right size
    int ker = 0;
    for (Elem z = 0; z < E.size(); ++z) {
      if (ext->proj[z] != 0) {
        CHECK(ext->central[z] == -1);
        continue;
      }
      ++ker;
      CHECK(ext->central[z] >= 0);
      for (Elem e = 0; e < E.size(); e += step) CHECK(E.mul(z, e) == E.mul(e, z));
    }
    CHECK(ker == cs.kernel);
    // same-order lift of every element of order prime to the kernel
    for (Elem g = 0; g < G->size(); ++g) {
      if (std::gcd(G->order(g), cs.kernel) != 1) continue;
      Elem e = central_lift(*ext, g);
      CHECK(ext->proj[e] == g);
      CHECK(E.order(e) == G->order(g));
      // conjugation compatibility
      for (Elem h = 0; h < E.size(); h += 3 * step) CHECK(central_lift(*ext, ext->proj[E.conj(e, h)]) == E.conj(e, h));
    }
  }
}

TEST_CASE("bad parameters") {
  CHECK_THROWS_AS(make_group(FamilySpec::dihedral(2)), ConfigError);
  CHECK_THROWS_AS(make_group(FamilySpec::affine2(5, 0, 4)), ConfigError);
  CHECK_THROWS_AS(make_group(FamilySpec::alternating(12)), ConfigError);
  CHECK_THROWS_AS(make_group(FamilySpec::affine2(11, 1, 3)), BudgetError);
  CHECK_THROWS_AS(FamilySpec::from_json({{"family", "klein"}}), ConfigError);
  CHECK_THROWS_AS(FamilySpec::from_json({{"family", "dihedral"}}), ConfigError);
  CHECK_THROWS_AS(inv_mod(2, 4), ConfigError);
  CHECK(inv_mod(3, 7) == 5);
  auto fs = FamilySpec::affine2(3, 1, 2);
  auto back = FamilySpec::from_json(fs.to_json());
  CHECK(back.to_json() == fs.to_json());
}
