#include "hurwitz/braid.hpp"

#include <algorithm>
#include <set>

#include "hurwitz/errors.hpp"

namespace hurwitz {

GateStats& gate_stats() {
  static GateStats s;
  return s;
}

Tuple q_twist(const Group& G, int i, const Tuple& t) {
  if (i < 1 || i >= static_cast<int>(t.size())) throw ConfigError("twist index out of range");
  Tuple u = t;
  u[i - 1] = G.conj(t[i], t[i - 1]);
  u[i] = t[i - 1];
  return u;
}

Tuple q_twist_inv(const Group& G, int i, const Tuple& t) {
  if (i < 1 || i >= static_cast<int>(t.size())) throw ConfigError("twist index out of range");
  Tuple u = t;
  u[i - 1] = t[i];
  u[i] = G.conj(t[i - 1], G.inv(t[i]));
  return u;
}

Tuple sh(const Tuple& t) {
  Tuple u(t.begin() + 1, t.end());
  u.push_back(t.front());
  return u;
}

int OrbitIndex::find(const Tuple& t) const {
  auto it = where.find(t);
  return it == where.end() ? -1 : it->second;
}

Tuple braid_step(const NielsenSpec& spec, const Tuple& t, int generator) {
  const Tuple u = generator == spec.r() ? sh(t) : q_twist(spec.G(), generator, t);
  require(is_nielsen(spec, u), "braid generator left the Nielsen class");
  ++gate_stats().nielsen_preserved;
  return canonical(spec, u);
}

BraidOrbit orbit(const NielsenSpec& spec, const Tuple& seed) {
  std::set<Tuple> seen{canonical(spec, seed)};
  std::vector<Tuple> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Tuple> next;
    for (const auto& t : frontier)
      for (int g = 1; g <= spec.r(); ++g) {
        Tuple u = braid_step(spec, t, g);
        if (seen.insert(u).second) next.push_back(std::move(u));
      }
    frontier = std::move(next);
  }
  BraidOrbit o;
  o.members.assign(seen.begin(), seen.end());
  o.seed = o.members.front();
  return o;
}

OrbitIndex all_orbits(const NielsenSpec& spec, const std::vector<Tuple>& classes) {
  OrbitIndex idx;
  for (const auto& t : classes) {
    if (idx.where.count(t)) continue;
    BraidOrbit o = orbit(spec, t);
    const int id = static_cast<int>(idx.orbits.size());
    for (const auto& m : o.members) {
      auto [it, fresh] = idx.where.emplace(m, id);
      require(fresh, "braid orbits overlap");
    }
    idx.orbits.push_back(std::move(o));
  }
  require(idx.where.size() == classes.size(), "braid orbits do not partition the Nielsen class");
  // sorted by seed already, since classes is sorted and seeds are orbit minima
  return idx;
}

OrbitIndex all_orbits(const NielsenSpec& spec) { return all_orbits(spec, enumerate(spec)); }

Tuple apply_automorphism(const Automorphism& a, const Tuple& t) {
  Tuple u(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) u[i] = a(t[i]);
  return u;
}

bool braidable(const NielsenSpec& inner_spec, const BraidOrbit& orbit, const Automorphism& a) {
  const Tuple img = canonical_inner(inner_spec.G(), apply_automorphism(a, orbit.seed));
  return std::binary_search(orbit.members.begin(), orbit.members.end(), img);
}

ComponentLattice component_lattice(const NielsenSpec& spec, const std::vector<Tuple>& inner_classes) {
  const NielsenSpec inner = spec.with_equivalence(Equivalence::Inner);
  const NielsenSpec absolute = spec.with_equivalence(Equivalence::Absolute);
  ComponentLattice L;
  L.inner = all_orbits(inner, inner_classes);

  std::vector<Tuple> abs_classes;
  for (const auto& t : inner_classes) abs_classes.push_back(canonical_absolute(absolute, t));
  std::sort(abs_classes.begin(), abs_classes.end());
  abs_classes.erase(std::unique(abs_classes.begin(), abs_classes.end()), abs_classes.end());
  L.absolute = all_orbits(absolute, abs_classes);

  L.normalizer_cosets = static_cast<int>(absolute.normalizer.size());
  L.v.assign(L.absolute.orbits.size(), 0);
  L.braidable_cosets.assign(L.absolute.orbits.size(), -1);
  for (const auto& o : L.inner.orbits) {
    const int a = L.absolute.find(canonical_absolute(absolute, o.seed));
    require(a >= 0, "inner orbit has no absolute orbit below it");
    // every member must land in the same absolute orbit
    for (const auto& m : o.members)
      require(L.absolute.find(canonical_absolute(absolute, m)) == a, "inner orbit straddles absolute orbits");
    L.inner_to_absolute.push_back(a);
    ++L.v[a];
  }
  for (std::size_t a = 0; a < L.absolute.orbits.size(); ++a) {
    const int i = static_cast<int>(std::find(L.inner_to_absolute.begin(), L.inner_to_absolute.end(), static_cast<int>(a)) -
                                   L.inner_to_absolute.begin());
    int br = 0;
    std::set<int> images;
    for (const auto& phi : absolute.normalizer) {
      if (braidable(inner, L.inner.orbits[i], phi)) ++br;
      images.insert(L.inner.find(canonical_inner(inner.G(), apply_automorphism(phi, L.inner.orbits[i].seed))));
    }
    L.braidable_cosets[a] = br;
    require(static_cast<int>(images.size()) == L.v[a], "normalizer images miss inner orbits above an absolute orbit");
    require(L.v[a] * br == L.normalizer_cosets, "v * |N^br/Inn| != |N_T/Inn|");
  }
  return L;
}

ComponentLattice component_lattice(const NielsenSpec& spec) {
  return component_lattice(spec, enumerate(spec.with_equivalence(Equivalence::Inner)));
}

}  // namespace hurwitz
