#include "hurwitz/lift.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hurwitz/errors.hpp"

namespace hurwitz {

LiftContext lift_context(GroupPtr G, const std::string& cover) {
  const auto& s = G->spec();
  std::string c = cover;
  if (c == "auto") {
    if (s.family == Family::Affine2) c = s.order == 2 ? "heis2" : "k22z3";
    else if (s.family == Family::Alternating) c = "an_spin";
    else throw ConfigError("no lift cover for " + s.name());
  }
  LiftContext ctx;
  ctx.cover = c;
  if (c == "an_spin") {
    if (s.family != Family::Alternating || s.n < 4) throw ConfigError("an_spin needs alternating(n), n >= 4");
    ctx.modulus = 2;
  } else {
    ctx.ext = make_extension(c, G);
    ctx.modulus = ctx.ext->kernel_order;
  }
  return ctx;
}

LiftContext lift_context(const NielsenSpec& spec) { return lift_context(spec.group, spec.cover); }

int an_spin(const Group& G, const Tuple& t) {
  int s = 0;
  for (Elem g : t)
    for (int u : G.cycle_type(g)) {
      if (u % 2 == 0) throw ConfigError("an_spin needs odd-order entries");
      s += (u * u - 1) / 8;
    }
  return s % 2;
}

int mt_parity(const Group& G, const Tuple& t) {
  int s = 0;
  for (Elem g : t) {
    const int o = G.order(g);
    if (o % 2 == 0) throw ConfigError("mt_parity needs odd-order entries");
    s += static_cast<int>((static_cast<long long>(o) * o - 1) / 8 % 2);
  }
  return s % 2;
}

int lift_invariant(const LiftContext& ctx, const Group& G, const Tuple& t) {
  if (ctx.cover == "an_spin") return an_spin(G, t);
  const auto& ext = *ctx.ext;
  require(ext.G.get() == &G || ext.G->spec().to_json() == G.spec().to_json(), "lift context built for another group");
  Elem p = ext.E->identity();
  for (Elem g : t) p = ext.E->mul(p, central_lift(ext, g));
  require(ext.central[p] >= 0, "product of lifts is not central");
  return ext.central[p];
}

int orbit_lift(const LiftContext& ctx, const NielsenSpec& spec, const BraidOrbit& orbit) {
  if (spec.equivalence != Equivalence::Inner) throw ConfigError("orbit lift values need inner classes");
  const int v = lift_invariant(ctx, spec.G(), orbit.seed);
  for (const auto& m : orbit.members)
    require(lift_invariant(ctx, spec.G(), m) == v, "lift invariant is not constant on a braid orbit");
  ++gate_stats().lift_constant;
  return v;
}

int sign_of(int value) { return value == 0 ? 1 : -1; }

// ---------------------------------------------------------------- closed forms

Tuple serre_tuple(const Group& G, int a, int a2p, int a3p) {
  const int N = G.spec().modulus();
  auto e = [&](int x, int y) {
    Elem g = G.find({1, mod(x, N), mod(y, N)});
    require(g >= 0, "serre entry outside the group");
    return g;
  };
  return {e(0, 0), e(a, a2p), e(a, a3p), e(0, a3p - a2p)};
}

int serre_formula(int a, int a2p, int a3p, int N) { return mod(static_cast<long long>(a) * (a3p - a2p), N); }

int serre_extension_value(int a, int a2p, int a3p, int N) {
  return mod(-static_cast<long long>(a) * (a3p - a2p) % N * inv_mod(2, N), N);
}

int di_formula(int m2, int n2, int N) {
  return mod(1LL * m2 * m2 - 1LL * n2 * n2 - 1LL * m2 * n2, N);
}

int di_extension_value(int m2, int n2, int N) {
  return mod(1LL * m2 * m2 - 1LL * m2 * n2 + 1LL * n2 * n2, N);
}

namespace {

Elem translation(const Group& G, int m, int n) {
  const int N = G.spec().modulus();
  return G.find({0, mod(m, N), mod(n, N)});
}

}  // namespace

Tuple di_tuple3(const Group& G, int m2, int n2) {
  const auto& s = G.spec();
  if (s.family != Family::Affine2 || s.order != 3) throw ConfigError("DI tuples live in affine2(ell,k,3)");
  const int N = s.modulus();
  const Elem ai = G.inv(G.alpha());
  const Elem g2 = G.conj(ai, translation(G, m2, n2));
  const Elem need = G.inv(G.mul(ai, g2));
  // product-one fixes v3; search rather than trust a formula
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      Elem g3 = G.conj(ai, translation(G, m, n));
      if (g3 == need) return {ai, g2, g3};
    }
  return {};
}

Tuple di_tuple4(const Group& G, int m2, int n2) {
  Tuple t3 = di_tuple3(G, m2, n2);
  if (t3.empty()) return {};
  const Elem a = G.alpha();
  return {a, G.conj(t3[1], a), a, t3[2]};
}

bool on_eigenline(const Group& G, int m, int n) {
  const int ell = G.spec().ell;
  m = mod(m, ell);
  n = mod(n, ell);
  if (m == 0 && n == 0) return true;
  // A*(x,y) = (-y, x-y); eigenvector iff det[v, A*v] = 0 mod ell
  const long long ax = -n, ay = m - n;
  return mod(1LL * m * ay - 1LL * n * ax, ell) == 0;
}

DICheck di_check(const LiftContext& ctx, const NielsenSpec& spec4, int m2, int n2) {
  const Group& G = spec4.G();
  DICheck c;
  c.formula = di_formula(m2, n2, ctx.modulus);
  Tuple t4 = di_tuple4(G, m2, n2);
  require(!t4.empty(), "no DI completion for (m2,n2)");
  require(di_detect(G, t4), "constructed tuple is not DI");
  c.generates = G.generates(t4);
  Tuple t3 = di_tuple3(G, m2, n2);
  c.value = lift_invariant(ctx, G, t4);
  require(c.value == di_extension_value(m2, n2, ctx.modulus), "DI lift value differs from m^2 - mn + n^2");
  if (!c.generates) return c;
  require(is_nielsen(spec4, t4), "DI tuple outside the Nielsen class");
  // q2^-1 gives (g1, g1, g1^-1 g2 g1, g4); merging g1 g1 = alpha^-1 gives the 3-tuple
  Tuple b = q_twist_inv(G, 2, t4);
  require(b[0] == b[1] && G.mul(b[0], b[1]) == t3[0] && b[2] == t3[1] && b[3] == t3[2],
          "q2^-1 does not braid the DI tuple to the 3-tuple");
  require(lift_invariant(ctx, G, b) == c.value, "lift changed under q2^-1");
  require(lift_invariant(ctx, G, t3) == c.value, "merged 3-tuple has another lift value");
  c.braided = true;
  return c;
}

ClosedFormSweep serre_sweep(const LiftContext& ctx, const NielsenSpec& spec) {
  const Group& G = spec.G();
  const int N = ctx.modulus;
  ClosedFormSweep w;
  std::set<int> vals;
  for (int a = 0; a < N; ++a)
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y) {
        Tuple t = serre_tuple(G, a, x, y);
        ++w.tuples;
        const int v = lift_invariant(ctx, G, t);
        require(v == serre_extension_value(a, x, y, N), "Serre lift value differs from -a(a3'-a2')/2");
        if (!is_nielsen(spec, t)) {
          ++w.nongenerating;
          continue;
        }
        vals.insert(v);
        w.formula_mismatches += v != serre_formula(a, x, y, N);
      }
  w.values.assign(vals.begin(), vals.end());
  return w;
}

ClosedFormSweep di_sweep(const LiftContext& ctx, const NielsenSpec& spec4) {
  const Group& G = spec4.G();
  const int N = ctx.modulus;
  ClosedFormSweep w;
  std::set<int> vals;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      DICheck c = di_check(ctx, spec4, m, n);
      ++w.tuples;
      if (!c.generates) {
        ++w.nongenerating;
        w.eigenline_nongenerating += on_eigenline(G, m, n);
        continue;
      }
      vals.insert(c.value);
      w.formula_mismatches += c.value != c.formula;
    }
  w.values.assign(vals.begin(), vals.end());
  return w;
}

// ---------------------------------------------------------------- normalizer

LiftAction normalizer_action_on_lift(const NielsenSpec& spec, const LiftContext& ctx, const ComponentLattice& L) {
  const NielsenSpec inner = spec.with_equivalence(Equivalence::Inner);
  LiftAction a;
  for (const auto& o : L.inner.orbits) a.inner_values.push_back(orbit_lift(ctx, inner, o));
  a.values_over.assign(L.absolute.orbits.size(), {});
  for (std::size_t i = 0; i < L.inner.orbits.size(); ++i) a.values_over[L.inner_to_absolute[i]].push_back(a.inner_values[i]);
  for (auto& s : a.values_over) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  const int m = ctx.modulus;
  const NielsenSpec absolute = spec.with_equivalence(Equivalence::Absolute);
  for (const auto& phi : absolute.normalizer) {
    std::map<int, int> img;
    bool ok = true;
    for (std::size_t i = 0; i < L.inner.orbits.size(); ++i) {
      const int j = L.inner.find(canonical_inner(inner.G(), apply_automorphism(phi, L.inner.orbits[i].seed)));
      require(j >= 0, "normalizer image is not an inner orbit");
      auto [it, fresh] = img.emplace(a.inner_values[i], a.inner_values[j]);
      ok = ok && (fresh || it->second == a.inner_values[j]);
    }
    require(ok, "normalizer action on lift values is not well defined");
    int found = -1;
    for (int b = 1; b < m && found < 0; ++b) {
      if (gcd_int(b, m) != 1) continue;
      if (std::all_of(img.begin(), img.end(), [&](auto& p) { return mod(1LL * b * p.first, m) == p.second; })) found = b;
    }
    a.scalars.push_back(found);
  }
  a.schur_separated = true;
  for (std::size_t x = 0; x < a.values_over.size(); ++x)
    for (std::size_t y = x + 1; y < a.values_over.size(); ++y)
      for (int v : a.values_over[x])
        if (std::binary_search(a.values_over[y].begin(), a.values_over[y].end(), v)) a.schur_separated = false;
  return a;
}

// ---------------------------------------------------------------- towers

namespace {
int smallest_prime(int m) {
  for (int p = 2; p * p <= m; ++p)
    if (m % p == 0) return p;
  return m;
}
}  // namespace

FamilySpec next_level(const FamilySpec& f) {
  switch (f.family) {
    case Family::Affine2: return FamilySpec::affine2(f.ell, f.k + 1, f.order);
    case Family::Heis2: return FamilySpec::heis2(f.ell, f.k + 1);
    case Family::K22Z3: return FamilySpec::k22z3(f.ell, f.k + 1);
    case Family::Dihedral: return FamilySpec::dihedral(f.n * smallest_prime(f.n));
    default: throw ConfigError("no tower for " + f.name());
  }
}

std::vector<Elem> reduction_map(const Group& upper, const Group& lower) {
  const auto& u = upper.spec();
  const auto& l = lower.spec();
  if (u.family != l.family || u.modulus() % l.modulus() != 0) throw ConfigError("groups are not tower levels");
  const int N = l.modulus();
  std::vector<Elem> r(upper.size());
  for (Elem g = 0; g < upper.size(); ++g) {
    std::vector<int> c = upper.coords(g);
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = mod(c[i], N);
    r[g] = lower.find(c);
    require(r[g] >= 0, "reduction left the lower group");
  }
  for (Elem g = 0; g < upper.size(); ++g)
    for (Elem x : upper.generators())
      require(r[upper.mul(g, x)] == lower.mul(r[g], r[x]), "reduction is not a homomorphism");
  return r;
}

TowerResult tower_lift(const NielsenSpec& lower, const OrbitIndex& lower_orbits) {
  if (lower.equivalence != Equivalence::Inner) throw ConfigError("tower lifting runs on inner classes");
  TowerResult res;
  GroupPtr up = make_group(next_level(lower.G().spec()));
  res.upper = NielsenSpec::make(up, lower.labels, Equivalence::Inner, lower.T);
  res.upper.budget = lower.budget;
  res.upper.jobs = lower.jobs;
  res.upper.cover = lower.cover;
  const auto red = reduction_map(*up, lower.G());
  res.upper_orbits = all_orbits(res.upper);
  res.above.assign(lower_orbits.orbits.size(), {});
  for (std::size_t i = 0; i < res.upper_orbits.orbits.size(); ++i) {
    int below = -1;
    for (const auto& t : res.upper_orbits.orbits[i].members) {
      Tuple d(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) d[j] = red[t[j]];
      require(is_nielsen(lower, d), "reduced tuple left the lower Nielsen class");
      const int o = lower_orbits.find(canonical_inner(lower.G(), d));
      require(o >= 0, "reduced tuple has no lower orbit");
      require(below < 0 || below == o, "upper orbit maps to two lower orbits");
      below = o;
    }
    res.above[below].push_back(static_cast<int>(i));
  }
  bool has_cover = true, has_upper = true;
  LiftContext lc, uc;
  try {
    lc = lift_context(lower);
  } catch (const ConfigError&) {
    has_cover = false;
  }
  try {
    uc = lift_context(res.upper);
  } catch (const ConfigError&) {
    has_upper = false;
  } catch (const BudgetError&) {
    has_upper = false;  // cover above the size limit
  }
  if (has_cover) {
    for (const auto& o : lower_orbits.orbits) res.lower_values.push_back(orbit_lift(lc, lower, o));
  }
  if (has_cover && has_upper) {
    for (const auto& o : res.upper_orbits.orbits) res.upper_values.push_back(orbit_lift(uc, res.upper, o));
    for (std::size_t i = 0; i < res.above.size(); ++i)
      for (int j : res.above[i])
        require(mod(res.upper_values[j], lc.modulus) == res.lower_values[i], "upper lift value does not reduce to the lower one");
  }
  if (has_cover && lc.ext && lc.ext->E->size() <= 2048) {
    res.cover_preimage = cover_preimage(lower, lower_orbits, lc);
    require(res.lower_values.size() == res.cover_preimage.size(), "cover preimage size mismatch");
  }
  return res;
}

std::vector<std::size_t> cover_preimage(const NielsenSpec& lower, const OrbitIndex& lower_orbits, const LiftContext& ctx) {
  if (!ctx.ext) throw ConfigError("cover preimage needs an explicit extension");
  const auto& ext = *ctx.ext;
  const Group& G = lower.G();
  std::vector<std::string> labels;
  for (const auto& lab : lower.labels) {
    const Elem rep = G.classes()[G.class_index(lab)].rep;
    labels.push_back(ext.E->conj_class(central_lift(ext, rep)).label);
  }
  NielsenSpec up = NielsenSpec::make(ext.E, labels, Equivalence::Inner, "regular");
  up.budget = lower.budget;
  up.jobs = lower.jobs;
  std::vector<std::size_t> count(lower_orbits.orbits.size(), 0);
  for (const auto& t : enumerate(up)) {
    Tuple d(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) d[j] = ext.proj[t[j]];
    require(is_nielsen(lower, d), "projected tuple left the Nielsen class");
    const int o = lower_orbits.find(canonical_inner(G, d));
    require(o >= 0, "projected tuple has no orbit");
    ++count[o];
  }
  for (std::size_t i = 0; i < count.size(); ++i) {
    const int v = orbit_lift(ctx, lower, lower_orbits.orbits[i]);
    require((count[i] == 0) == obstructed(v), "obstructed differs from empty preimage in the representation cover");
  }
  ++gate_stats().tower_checks;
  return count;
}

// ---------------------------------------------------------------- BCL

namespace {

std::vector<int> powered_multiset(const Group& G, const std::vector<int>& ms, int u) {
  std::vector<int> out;
  for (int c : ms) out.push_back(G.class_of(G.pow(G.classes()[c].rep, u)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BCLData bcl_data(const NielsenSpec& spec) {
  const Group& G = spec.G();
  BCLData b;
  for (int c : spec.class_multiset) b.N_C = std::lcm(b.N_C, G.classes()[c].order);
  for (int u = 1; u <= b.N_C; ++u)
    if (gcd_int(u, b.N_C) == 1) b.units.push_back(u % b.N_C == 0 ? b.N_C : u);
  if (b.N_C == 1) b.units = {1};
  std::vector<Automorphism> auts;
  try {
    auts = normalizer_gens(G, {}, spec.rep.stabilizer);
    b.abs_available = true;
  } catch (const ConfigError&) {
    b.abs_available = false;
  }
  for (int u : b.units) {
    const auto pm = powered_multiset(G, spec.class_multiset, u);
    if (pm == spec.class_multiset) b.M_inn.push_back(u);
    if (!b.abs_available) continue;
    for (const auto& a : auts) {
      std::vector<int> img;
      for (int c : pm) img.push_back(G.class_of(a(G.classes()[c].rep)));
      std::sort(img.begin(), img.end());
      if (img == spec.class_multiset) {
        b.M_abs.push_back(u);
        break;
      }
    }
  }
  if (!b.abs_available) b.M_abs = b.M_inn;
  require(std::includes(b.M_abs.begin(), b.M_abs.end(), b.M_inn.begin(), b.M_inn.end()), "M_inn is not inside M_abs");
  b.rational_union = b.M_inn.size() == b.units.size();
  b.inner_degree = static_cast<int>(b.units.size() / b.M_inn.size());
  b.abs_degree = static_cast<int>(b.units.size() / b.M_abs.size());
  return b;
}

int component_moduli_degree(const BCLData& b, const LiftContext& ctx, int value) {
  const int m = ctx.modulus;
  const int L = std::lcm(b.N_C, m);
  std::set<int> orbit;
  for (int u = 1; u <= L; ++u) {
    if (gcd_int(u, L) != 1) continue;
    const int r = u % b.N_C == 0 ? b.N_C : u % b.N_C;
    if (!std::binary_search(b.M_inn.begin(), b.M_inn.end(), r)) continue;
    orbit.insert(mod(1LL * u * value, m));
  }
  return static_cast<int>(orbit.size());
}

}  // namespace hurwitz
