#pragma once

#include <string>
#include <vector>

#include "hurwitz/braid.hpp"

namespace hurwitz {

// Q'' = {id, sh^2, q1 q3^-1, sh^2 q1 q3^-1} acting on r = 4 tuples.
Tuple q_double_prime(const Group& G, int which, const Tuple& t);

struct ReducedClass {
  std::vector<Tuple> classes;     // sorted canonical members of the braid orbit
  std::vector<int> reduced_of;    // class index -> reduced index
  std::vector<Tuple> reps;        // smallest member of each Q''-orbit, sorted
  std::vector<int> qorbit_size;
  int find_class(const Tuple& t) const;  // -1 when absent
};

ReducedClass reduce(const NielsenSpec& spec, const BraidOrbit& orbit);

// Permutations of reduced indices; x -> perm[x] is the right action.
struct GammaActions {
  std::vector<int> g0, g1, ginf, shift;
};

GammaActions gamma_actions(const NielsenSpec& spec, const ReducedClass& rc);

struct CuspPrediction {
  int u = 1;
  int v = 1;
};
// Orbit type of the q2-orbit of t on inner classes.
CuspPrediction predict_cusp(const Group& G, const Tuple& t);

struct CuspOrbit {
  std::vector<int> members;  // reduced indices, sorted
  Tuple rep;
  int width = 0;             // gamma_inf orbit length
  int u = 1, v = 1;          // predicted orbit type
  int q2_length = 0;         // unreduced q2-orbit length of rep
  int f = 1;                 // reduced orbit factor
  int middle_order = 1;
  bool prediction_ok = true;  // v == q2_length (inner classes only)
  bool has_hm = false, has_di = false;
  std::string label;
};

std::vector<CuspOrbit> cusps(const NielsenSpec& spec, const ReducedClass& rc, const GammaActions& ga);

struct GenusReport {
  int degree = 0;
  int genus = 0;
  int genus_oracle = 0;
  int fixed_g0 = 0, fixed_g1 = 0;
};

GenusReport reduced_genus(const ReducedClass& rc, const GammaActions& ga, const std::vector<CuspOrbit>& cs);

struct ShIncidence {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> m;
};

ShIncidence sh_incidence(const GammaActions& ga, const std::vector<CuspOrbit>& cs);

struct ModuliReport {
  bool fine_inner = false;
  bool fine_abs = false;
  bool bfine = false;
  bool reduced_fine = false;
  int fixed_g0 = 0, fixed_g1 = 0;
};

ModuliReport moduli_checks(const NielsenSpec& spec, const ReducedClass& rc, const GammaActions& ga);

struct WohlfahrtReport {
  int N = 1;
  int degree = 0;
  std::uint64_t psl = 1;
  bool not_modular = false;
  std::string verdict;
};

WohlfahrtReport wohlfahrt(int degree, const std::vector<CuspOrbit>& cs);

int cycle_count(const std::vector<int>& perm);
int fixed_points(const std::vector<int>& perm);

}  // namespace hurwitz
