#pragma once

#include <atomic>
#include <unordered_map>
#include <vector>

#include "hurwitz/nielsen.hpp"

namespace hurwitz {

// Counters for the property gates that run inside every computation.
struct GateStats {
  std::atomic<long> nielsen_preserved{0};
  std::atomic<long> lift_constant{0};
  std::atomic<long> cusp_predictions{0};
  std::atomic<long> cusp_prediction_misses{0};
  std::atomic<long> genus_oracles{0};
  std::atomic<long> tower_checks{0};
};
GateStats& gate_stats();

// q_i: (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i), i is 1-based.
Tuple q_twist(const Group& G, int i, const Tuple& t);
Tuple q_twist_inv(const Group& G, int i, const Tuple& t);
Tuple sh(const Tuple& t);

struct BraidOrbit {
  std::vector<Tuple> members;  // sorted canonical tuples
  Tuple seed;                  // smallest member
  std::size_t size() const { return members.size(); }
};

struct OrbitIndex {
  std::vector<BraidOrbit> orbits;  // sorted by seed
  std::unordered_map<Tuple, int, TupleHash> where;
  int find(const Tuple& canonical_tuple) const;
};

// Applies a braid generator to a canonical tuple, re-verifies the Nielsen
// predicate (gate) and re-canonicalizes.
Tuple braid_step(const NielsenSpec& spec, const Tuple& t, int generator);  // 1..r-1 = q_i, r = sh

BraidOrbit orbit(const NielsenSpec& spec, const Tuple& seed);
OrbitIndex all_orbits(const NielsenSpec& spec, const std::vector<Tuple>& classes);
OrbitIndex all_orbits(const NielsenSpec& spec);

Tuple apply_automorphism(const Automorphism& a, const Tuple& t);

// Inner orbit test: is (seed)a braid-equivalent to seed?
bool braidable(const NielsenSpec& inner_spec, const BraidOrbit& orbit, const Automorphism& a);

struct ComponentLattice {
  OrbitIndex inner;
  OrbitIndex absolute;
  std::vector<int> inner_to_absolute;
  std::vector<int> v;                 // inner orbits above each absolute orbit
  std::vector<int> braidable_cosets;  // |N^br/Inn| for each absolute orbit
  int normalizer_cosets = 1;          // |N_T/Inn|
};

ComponentLattice component_lattice(const NielsenSpec& spec);
ComponentLattice component_lattice(const NielsenSpec& spec, const std::vector<Tuple>& inner_classes);

}  // namespace hurwitz
