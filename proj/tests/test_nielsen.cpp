#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "hurwitz/errors.hpp"
#include "hurwitz/braid.hpp"

using namespace hurwitz;

namespace {

// Every tuple with entries in the labelled classes (any order), product one and
// generating, counted directly. Tuples with a given multiset of classes.
std::vector<Tuple> brute_tuples(const NielsenSpec& s) {
  const Group& G = s.G();
  std::vector<int> want = s.class_multiset;
  std::vector<Tuple> out;
  const int r = s.r();
  Tuple t(r);
  std::vector<Elem> pool;
  for (int c : std::set<int>(want.begin(), want.end()))
    for (Elem g : G.classes()[c].members) pool.push_back(g);
  std::function<void(int, Elem)> rec = [&](int i, Elem prod) {
    if (i == r - 1) {
      Elem last = G.inv(prod);
      std::vector<int> cl;
      t[i] = last;
      for (Elem g : t) cl.push_back(G.class_of(g));
      std::sort(cl.begin(), cl.end());
      if (cl == want && G.generates(t)) out.push_back(t);
      return;
    }
    for (Elem g : pool) {
      t[i] = g;
      rec(i + 1, G.mul(prod, g));
    }
  };
  rec(0, G.identity());
  return out;
}

// Inner classes = generating tuples / |Inn G|, since a generating tuple has
// centralizer Z(G).
std::size_t brute_inner_count(const NielsenSpec& s) {
  const Group& G = s.G();
  return brute_tuples(s).size() / (G.size() / G.center().size());
}

NielsenSpec a4() {
  return NielsenSpec::make(make_group(FamilySpec::alternating(4)), {"3+", "3+", "3-", "3-"}, Equivalence::Inner);
}

}  // namespace

TEST_CASE("product-one check by direct multiplication") {
  auto G = make_group(FamilySpec::alternating(4));
  // 0-based images: (123) -> (012), (124) -> (013)
  Elem a = G->find({1, 2, 0, 3}), ai = G->find({2, 0, 1, 3});
  Elem b = G->find({1, 3, 2, 0}), bi = G->find({3, 0, 2, 1});
  auto compose = [](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
    return r;
  };
  Tuple t{a, ai, b, bi};
  std::vector<int> p{0, 1, 2, 3};
  for (Elem e : t) p = compose(p, G->coords(e));
  CHECK(p == std::vector<int>{0, 1, 2, 3});
  CHECK(product(*G, t) == 0);
  auto s = a4();
  CHECK(is_nielsen(s, t));
  Tuple bad{a, a, b, bi};
  CHECK_FALSE(is_nielsen(s, bad));
}

TEST_CASE("A4 inner Nielsen class has 30 elements") {
  auto s = a4();
  auto cl = enumerate(s);
  CHECK(cl.size() == 30);
  CHECK(brute_inner_count(s) == 30);
  CHECK(enumerate_unpinned(s) == cl);
  // the same group realised as (Z/2)^2 x| Z/3
  auto t = NielsenSpec::make(make_group(FamilySpec::affine2(2, 0, 3)), {"C+", "C+", "C-", "C-"}, Equivalence::Inner);
  CHECK(enumerate(t).size() == 30);
}

TEST_CASE("enumeration agrees with brute force") {
  struct Case {
    FamilySpec f;
    std::vector<std::string> labels;
    std::size_t expect;
  };
  std::vector<Case> cases{
      {FamilySpec::alternating(4), {"3+", "3+", "3-", "3-"}, 30},
      {FamilySpec::alternating(5), {"5+", "5-", "3"}, 6},
      {FamilySpec::dihedral(5), {"2", "2", "2", "2"}, 12},
      {FamilySpec::dihedral(9), {"2", "2", "2", "2"}, 36},
      {FamilySpec::affine2(3, 0, 2), {"2", "2", "2", "2"}, 24},
      {FamilySpec::affine2(2, 0, 3), {"C+", "C-", "C+", "C-"}, 30},
  };
  for (const auto& c : cases) {
    auto s = NielsenSpec::make(make_group(c.f), c.labels, Equivalence::Inner);
    CAPTURE(c.f.name());
    auto cl = enumerate(s);
    CHECK(cl.size() == c.expect);
    CHECK(brute_inner_count(s) == c.expect);
    CHECK(enumerate_unpinned(s) == cl);
    CHECK(std::is_sorted(cl.begin(), cl.end()));
    for (const auto& t : cl) {
      CHECK(is_nielsen(s, t));
      CHECK(canonical_inner(s.G(), t) == t);
    }
  }
}

TEST_CASE("A5 with 5+ 5- 3: one class per ordering") {
  auto s = NielsenSpec::make(make_group(FamilySpec::alternating(5)), {"5+", "5-", "3"}, Equivalence::Inner);
  auto ords = orderings(s);
  CHECK(ords.size() == 6);
  for (const auto& o : ords) CHECK(enumerate_ordering(s, o).size() == 1);
  CHECK(enumerate(s).size() == 6);
}

TEST_CASE("A5 with four 3-cycles") {
  auto s = NielsenSpec::make(make_group(FamilySpec::alternating(5)), {"3", "3", "3", "3"}, Equivalence::Inner);
  auto cl = enumerate(s);
  CHECK(cl.size() == brute_inner_count(s));
  CHECK(cl.size() == 18);
  CHECK(cover_genus(s) == 0);
  auto a = s.with_equivalence(Equivalence::Absolute);
  REQUIRE(a.normalizer_available);
  std::set<Tuple> abs;
  for (const auto& t : cl) abs.insert(canonical_absolute(a, t));
  CHECK(enumerate(a).size() == abs.size());
  CHECK(abs.size() == 9);
}

TEST_CASE("canonical form: idempotent and constant on conjugates") {
  auto s = a4();
  const Group& G = s.G();
  auto cl = enumerate(s);
  for (const auto& t : cl) {
    CHECK(canonical_inner(G, canonical_inner(G, t)) == canonical_inner(G, t));
    for (Elem h = 0; h < G.size(); ++h) {
      Tuple c(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) c[i] = G.conj(t[i], h);
      CHECK(canonical_inner(G, c) == t);
    }
  }
  auto a = s.with_equivalence(Equivalence::Absolute);
  for (const auto& t : cl) {
    Tuple c = canonical_absolute(a, t);
    CHECK(canonical_absolute(a, c) == c);
    for (const auto& au : a.normalizer) CHECK(canonical_absolute(a, apply_automorphism(au, t)) == c);
  }
}

TEST_CASE("worker count does not change the enumeration") {
  auto s = NielsenSpec::make(make_group(FamilySpec::affine2(5, 0, 3)), {"C+", "C+", "C-", "C-"}, Equivalence::Inner);
  auto one = enumerate(s);
  s.jobs = 3;
  CHECK(enumerate(s) == one);
}

TEST_CASE("cover genus") {
  auto D = [](int m, Equivalence e, const std::string& T) {
    return NielsenSpec::make(make_group(FamilySpec::dihedral(m)), {"2", "2", "2", "2"}, e, T);
  };
  for (int m : {3, 5, 7, 9, 25, 49}) {
    CAPTURE(m);
    CHECK(cover_genus(D(m, Equivalence::Absolute, "involution-cosets")) == 0);
    CHECK(cover_genus(D(m, Equivalence::Inner, "involution-cosets"), true) == 1);
  }
  auto A5 = NielsenSpec::make(make_group(FamilySpec::alternating(5)), {"5+", "5-", "3"}, Equivalence::Inner);
  CHECK(cover_genus(A5) == 1);
}

TEST_CASE("HM and DI shapes") {
  auto s = a4();
  const Group& G = s.G();
  int hm = 0, di = 0;
  for (const auto& t : enumerate(s)) {
    bool h = hm_detect(G, t), d = di_detect(G, t);
    hm += h;
    di += d;
    if (h) CHECK(t[1] == G.inv(t[0]));
    CHECK_FALSE((h && d));
  }
  CHECK(hm > 0);
  CHECK(di > 0);
}

TEST_CASE("pure-cycle reduction") {
  auto G = make_group(FamilySpec::alternating(6));
  auto s = NielsenSpec::make(G, {"3.3", "3.3", "3", "3"}, Equivalence::Inner);
  auto p = pure_cycle_reduce(s);
  CHECK(p.r() == 6);
  CHECK(cover_genus(p) == cover_genus(s));
  for (const auto& l : p.labels) CHECK(l == "3");
  auto bad = NielsenSpec::make(G, {"2.2", "2.2", "3", "3"}, Equivalence::Inner);
  CHECK_THROWS_AS(pure_cycle_reduce(bad), ConfigError);
}

TEST_CASE("spec json") {
  nlohmann::json j{{"group", {{"family", "alternating"}, {"n", 5}}}, {"classes", {"3", "3", "3", "3"}}};
  auto s = NielsenSpec::from_json(j);
  CHECK(s.r() == 4);
  CHECK(s.equivalence == Equivalence::Inner);
  auto back = NielsenSpec::from_json(s.to_json());
  CHECK(back.to_json() == s.to_json());

  auto bad = j;
  bad["colour"] = "blue";
  CHECK_THROWS_AS(NielsenSpec::from_json(bad), ConfigError);
  bad = j;
  bad["equivalence"] = "outer";
  CHECK_THROWS_AS(NielsenSpec::from_json(bad), ConfigError);
  bad = j;
  bad["budget"] = 0;
  CHECK_THROWS_AS(NielsenSpec::from_json(bad), ConfigError);
  bad = j;
  bad["classes"] = {"3", "7"};
  CHECK_THROWS_AS(NielsenSpec::from_json(bad), ConfigError);
  bad = j;
  bad.erase("group");
  CHECK_THROWS_AS(NielsenSpec::from_json(bad), ConfigError);
  CHECK_THROWS_AS(NielsenSpec::from_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("budget") {
  auto s = NielsenSpec::make(make_group(FamilySpec::alternating(5)), {"3", "3", "3", "3"}, Equivalence::Inner);
  s.budget = 10;
  CHECK(raw_count(s) > 10);
  CHECK_THROWS_AS(enumerate(s), BudgetError);
  CHECK_THROWS_AS(NielsenSpec::from_json({{"group", {{"family", "alternating"}, {"n", 8}}}, {"classes", {"3", "3"}}}),
                  BudgetError);
}

TEST_CASE("tuple json") {
  auto s = a4();
  for (const auto& t : enumerate(s)) CHECK(tuple_from_json(s.G(), tuple_to_json(s.G(), t)) == t);
}
