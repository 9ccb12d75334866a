#include "hurwitz/reduced.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hurwitz/errors.hpp"

namespace hurwitz {

Tuple q_double_prime(const Group& G, int which, const Tuple& t) {
  if (t.size() != 4) throw ConfigError("reduced classes need r = 4");
  Tuple u = t;
  if (which & 1) u = sh(sh(u));
  if (which & 2) u = q_twist_inv(G, 3, q_twist(G, 1, u));
  return u;
}

int ReducedClass::find_class(const Tuple& t) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), t);
  return it != classes.end() && *it == t ? static_cast<int>(it - classes.begin()) : -1;
}

ReducedClass reduce(const NielsenSpec& spec, const BraidOrbit& orbit) {
  if (spec.r() != 4) throw ConfigError("reduced classes need r = 4");
  const Group& G = spec.G();
  ReducedClass rc;
  rc.classes = orbit.members;
  const int n = static_cast<int>(rc.classes.size());
  rc.reduced_of.assign(n, -1);
  std::vector<std::vector<int>> img(n, std::vector<int>(4));
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < 4; ++q) {
      int j = rc.find_class(canonical(spec, q_double_prime(G, q, rc.classes[i])));
      require(j >= 0, "Q'' image left the braid orbit");
      img[i][q] = j;
    }
  // Q'' acts through the Klein 4-group
  for (int i = 0; i < n; ++i) {
    require(img[i][0] == i, "Q'' identity moved a class");
    for (int a = 1; a < 4; ++a) {
      require(img[img[i][a]][a] == i, "Q'' element is not an involution on classes");
      for (int b = 1; b < 4; ++b) require(img[img[i][a]][b] == img[i][a ^ b], "Q'' is not a Klein 4-group action");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (rc.reduced_of[i] >= 0) continue;
    const int id = static_cast<int>(rc.reps.size());
    std::set<int> orb(img[i].begin(), img[i].end());
    for (int j : orb) rc.reduced_of[j] = id;
    rc.reps.push_back(rc.classes[*orb.begin()]);
    rc.qorbit_size.push_back(static_cast<int>(orb.size()));
  }
  return rc;
}

GammaActions gamma_actions(const NielsenSpec& spec, const ReducedClass& rc) {
  const int n = static_cast<int>(rc.classes.size());
  const int d = static_cast<int>(rc.reps.size());
  auto word = [&](const Tuple& t, std::initializer_list<int> gens) {
    Tuple u = t;
    for (int g : gens) u = braid_step(spec, u, g);
    return u;
  };
  GammaActions ga;
  ga.g0.assign(d, -1);
  ga.g1.assign(d, -1);
  ga.ginf.assign(d, -1);
  ga.shift.assign(d, -1);
  auto set = [&](std::vector<int>& perm, int from, const Tuple& to) {
    int j = rc.find_class(to);
    require(j >= 0, "braid image left the orbit");
    int target = rc.reduced_of[j];
    require(perm[from] < 0 || perm[from] == target, "braid action is not well defined on reduced classes");
    perm[from] = target;
  };
  for (int i = 0; i < n; ++i) {
    const Tuple& t = rc.classes[i];
    const int x = rc.reduced_of[i];
    set(ga.g0, x, word(t, {1, 2}));
    set(ga.g1, x, word(t, {1, 2, 1}));
    set(ga.ginf, x, word(t, {2}));
    set(ga.shift, x, word(t, {4}));
  }
  for (int x = 0; x < d; ++x) {
    require(ga.g0[ga.g0[ga.g0[x]]] == x, "gamma_0 does not have order dividing 3");
    require(ga.g1[ga.g1[x]] == x, "gamma_1 does not have order dividing 2");
    require(ga.ginf[ga.g1[ga.g0[x]]] == x, "gamma_0 gamma_1 gamma_inf != 1");
    require(ga.shift[ga.shift[x]] == x, "sh is not an involution on reduced classes");
  }
  return ga;
}

CuspPrediction predict_cusp(const Group& G, const Tuple& t) {
  const Elem g2 = t[1], g3 = t[2];
  if (g2 == g3) return {1, 1};
  const Elem g = G.mul(g2, g3);
  const int o = G.order(g);
  int central = 0;
  Elem p = G.identity();
  for (int k = 0; k < o; ++k, p = G.mul(p, g))
    if (G.mul(p, g2) == G.mul(g2, p) && G.mul(p, g3) == G.mul(g3, p)) ++central;
  CuspPrediction c;
  c.u = o / central;
  c.v = 2 * c.u;
  if (c.u % 2 == 1) {
    const Elem y = G.pow(G.mul(g3, g2), (c.u - 1) / 2);
    if (G.order(G.mul(y, g3)) == 2) c.v = c.u;
  }
  return c;
}

int cycle_count(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int c = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (int j = static_cast<int>(i); !seen[j]; j = perm[j]) seen[j] = 1;
  }
  return c;
}

int fixed_points(const std::vector<int>& perm) {
  int f = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) f += perm[i] == static_cast<int>(i);
  return f;
}

std::vector<CuspOrbit> cusps(const NielsenSpec& spec, const ReducedClass& rc, const GammaActions& ga) {
  const Group& G = spec.G();
  const int d = static_cast<int>(rc.reps.size());
  std::vector<std::vector<int>> classes_of(d);
  for (std::size_t i = 0; i < rc.classes.size(); ++i) classes_of[rc.reduced_of[i]].push_back(static_cast<int>(i));

  std::vector<CuspOrbit> out;
  std::vector<char> seen(d, 0);
  for (int x = 0; x < d; ++x) {
    if (seen[x]) continue;
    CuspOrbit c;
    for (int y = x; !seen[y]; y = ga.ginf[y]) {
      seen[y] = 1;
      c.members.push_back(y);
    }
    std::sort(c.members.begin(), c.members.end());
    c.width = static_cast<int>(c.members.size());
    c.rep = rc.reps[c.members.front()];
    c.middle_order = G.order(G.mul(c.rep[1], c.rep[2]));

    // unreduced q2-orbit of rep
    std::set<Tuple> O;
    Tuple t = c.rep;
    do {
      O.insert(t);
      t = braid_step(spec, t, 2);
    } while (!O.count(t));
    require(t == c.rep, "q2 does not act as a permutation");
    c.q2_length = static_cast<int>(O.size());
    int stab_g = 0, stab_O = 0;
    for (int q = 0; q < 4; ++q) {
      Tuple img = canonical(spec, q_double_prime(G, q, c.rep));
      stab_g += img == c.rep;
      stab_O += O.count(img) ? 1 : 0;
    }
    require(stab_O % stab_g == 0, "Q'' stabilizers are not nested");
    c.f = stab_O / stab_g;

    const auto pred = predict_cusp(G, c.rep);
    c.u = pred.u;
    c.v = pred.v;
    require(c.q2_length % c.f == 0 && c.q2_length / c.f == c.width, "reduced cusp width != v/f");
    if (spec.equivalence == Equivalence::Inner) {
      c.prediction_ok = c.v == c.q2_length;
      ++gate_stats().cusp_predictions;
      if (!c.prediction_ok) ++gate_stats().cusp_prediction_misses;
    }

    for (int y : c.members)
      for (int i : classes_of[y]) {
        c.has_hm = c.has_hm || hm_detect(G, rc.classes[i]);
        c.has_di = c.has_di || di_detect(G, rc.classes[i]);
      }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CuspOrbit& a, const CuspOrbit& b) { return a.rep < b.rep; });
  std::map<std::pair<int, int>, int> counter;
  for (auto& c : out) {
    int a = counter[{c.middle_order, c.width}]++;
    c.label = "O(" + std::to_string(c.middle_order) + "," + std::to_string(c.width) + ";" + std::to_string(a) + ")";
  }
  return out;
}

GenusReport reduced_genus(const ReducedClass& rc, const GammaActions& ga, const std::vector<CuspOrbit>& cs) {
  GenusReport g;
  const int d = static_cast<int>(rc.reps.size());
  g.degree = d;
  g.fixed_g0 = fixed_points(ga.g0);
  g.fixed_g1 = fixed_points(ga.g1);
  require((d - g.fixed_g0) % 3 == 0 && (d - g.fixed_g1) % 2 == 0, "elliptic contributions are not integral");
  long long rhs = 2LL * (d - g.fixed_g0) / 3 + (d - g.fixed_g1) / 2;
  for (const auto& c : cs) rhs += c.q2_length / c.f - 1;
  require(rhs % 2 == 0, "reduced genus is not integral");
  g.genus = static_cast<int>(rhs / 2 - d + 1);

  // Euler characteristic of the cover of P^1 branched over 0, 1, infinity
  long long ram = 0;
  for (const auto* p : {&ga.g0, &ga.g1, &ga.ginf}) ram += d - cycle_count(*p);
  require(ram % 2 == 0, "branch cycles give a non-integral genus");
  g.genus_oracle = static_cast<int>((ram - 2LL * d + 2) / 2);
  require(g.genus == g.genus_oracle, "genus formula disagrees with the Euler characteristic oracle");
  require(g.genus >= 0, "negative reduced genus");
  ++gate_stats().genus_oracles;
  return g;
}

ShIncidence sh_incidence(const GammaActions& ga, const std::vector<CuspOrbit>& cs) {
  const int d = static_cast<int>(ga.shift.size());
  std::vector<int> cusp_of(d, -1);
  for (std::size_t c = 0; c < cs.size(); ++c)
    for (int x : cs[c].members) cusp_of[x] = static_cast<int>(c);
  ShIncidence M;
  const std::size_t k = cs.size();
  M.m.assign(k, std::vector<int>(k, 0));
  for (const auto& c : cs) M.labels.push_back(c.label);
  for (int x = 0; x < d; ++x) ++M.m[cusp_of[ga.shift[x]]][cusp_of[x]];
  for (std::size_t i = 0; i < k; ++i) {
    int row = 0;
    for (std::size_t j = 0; j < k; ++j) {
      require(M.m[i][j] == M.m[j][i], "sh-incidence matrix is not symmetric");
      row += M.m[i][j];
    }
    require(row == cs[i].width, "sh-incidence row sum differs from cusp width");
  }
  return M;
}

ModuliReport moduli_checks(const NielsenSpec& spec, const ReducedClass& rc, const GammaActions& ga) {
  ModuliReport m;
  m.fine_inner = spec.G().center().size() == 1;
  m.fine_abs = cen_in_Sn(spec.G(), spec.rep.stabilizer).quotient_order == 1;
  m.bfine = std::all_of(rc.qorbit_size.begin(), rc.qorbit_size.end(), [](int s) { return s == 4; });
  m.fixed_g0 = fixed_points(ga.g0);
  m.fixed_g1 = fixed_points(ga.g1);
  m.reduced_fine = m.bfine && m.fixed_g0 == 0 && m.fixed_g1 == 0;
  return m;
}

WohlfahrtReport wohlfahrt(int degree, const std::vector<CuspOrbit>& cs) {
  WohlfahrtReport w;
  w.degree = degree;
  for (const auto& c : cs) w.N = std::lcm(w.N, c.width);
  w.psl = w.N >= 2 ? gl_orders(w.N).psl : 1;
  w.not_modular = w.psl % static_cast<std::uint64_t>(degree) != 0;
  w.verdict = w.not_modular ? "not modular" : "inconclusive";
  return w;
}

}  // namespace hurwitz
