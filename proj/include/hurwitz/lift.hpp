#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hurwitz/braid.hpp"

namespace hurwitz {

// Where lift values live: the kernel of an explicit central extension, or
// Z/2 for the spin cover of A_n (closed formula, no extension built).
struct LiftContext {
  std::string cover;  // heis2 | k22z3 | an_spin
  std::shared_ptr<const CentralExtension> ext;
  int modulus = 2;
};

// cover "auto" picks heis2 for affine2(.,.,2), k22z3 for affine2(.,.,3) and
// an_spin for alternating groups.
LiftContext lift_context(GroupPtr G, const std::string& cover = "auto");
LiftContext lift_context(const NielsenSpec& spec);

// Additive residue mod ctx.modulus.
int lift_invariant(const LiftContext& ctx, const Group& G, const Tuple& t);
int an_spin(const Group& G, const Tuple& t);
int mt_parity(const Group& G, const Tuple& t);

// Value on a braid orbit; throws ConsistencyError unless constant.
int orbit_lift(const LiftContext& ctx, const NielsenSpec& spec, const BraidOrbit& orbit);

// Z/2 values shown as +1 / -1.
int sign_of(int value);

// Serre case tuple (1,a_i,a_i') with a = (0,a,a,0), a' = (0,a2',a3',a3'-a2').
Tuple serre_tuple(const Group& G, int a, int a2p, int a3p);
int serre_formula(int a, int a2p, int a3p, int N);          // a(a3'-a2')
int serre_extension_value(int a, int a2p, int a3p, int N);  // -a(a3'-a2')/2, what the product of lifts gives

// DI tuples in affine2(ell,k,3). t_v = (0,m,n), _v g = t_v g t_v^-1.
Tuple di_tuple3(const Group& G, int m2, int n2);  // (alpha^-1, _v2 alpha^-1, _v3 alpha^-1), empty if no v3
Tuple di_tuple4(const Group& G, int m2, int n2);  // (g1,g2,g1,g4) whose q2^-1 image gives di_tuple3 after merging
int di_formula(int m2, int n2, int N);            // m2^2 - n2^2 - m2 n2
int di_extension_value(int m2, int n2, int N);    // m2^2 - m2 n2 + n2^2, what the product of lifts gives

struct DICheck {
  bool generates = false;
  int value = 0;    // extension arithmetic on the 4-tuple
  int formula = 0;  // di_formula
  bool braided = false;  // q2^-1 of the 4-tuple was checked against the 3-tuple
};
DICheck di_check(const LiftContext& ctx, const NielsenSpec& spec4, int m2, int n2);

// Runs a closed form over every admissible parameter. Tuples whose lift value
// differs from the extension closed form raise ConsistencyError; mismatches
// against the published form are only counted.
struct ClosedFormSweep {
  int tuples = 0;
  int nongenerating = 0;
  int eigenline_nongenerating = 0;
  int formula_mismatches = 0;
  std::vector<int> values;  // sorted distinct lift values over generating tuples
};
ClosedFormSweep serre_sweep(const LiftContext& ctx, const NielsenSpec& spec);
ClosedFormSweep di_sweep(const LiftContext& ctx, const NielsenSpec& spec4);

// alpha-eigenline test for (m,n) (mod ell).
bool on_eigenline(const Group& G, int m, int n);

struct LiftAction {
  std::vector<int> inner_values;               // per inner orbit
  std::vector<std::vector<int>> values_over;   // per absolute orbit, sorted distinct
  std::vector<int> scalars;                    // per normalizer coset rep, b with s -> b s; -1 if none
  bool schur_separated = false;
};
LiftAction normalizer_action_on_lift(const NielsenSpec& spec, const LiftContext& ctx, const ComponentLattice& L);

inline bool obstructed(int lift_value) { return lift_value != 0; }

// Level k -> k+1 within a family (affine2 k+1, dihedral m -> m p).
FamilySpec next_level(const FamilySpec& f);
std::vector<Elem> reduction_map(const Group& upper, const Group& lower);

struct TowerResult {
  NielsenSpec upper;
  OrbitIndex upper_orbits;
  std::vector<std::vector<int>> above;  // lower orbit -> upper orbits over it
  std::vector<int> lower_values, upper_values;  // lift values, empty when no cover
  // Nielsen tuples of the representation cover E over each lower orbit
  // (inner classes of E); empty vector when E was not enumerated.
  std::vector<std::size_t> cover_preimage;
};
TowerResult tower_lift(const NielsenSpec& lower, const OrbitIndex& lower_orbits);

// Inner Nielsen classes of E (classes of same-order lifts) counted over each
// lower orbit. Empty preimage must match a nonzero lift value.
std::vector<std::size_t> cover_preimage(const NielsenSpec& lower, const OrbitIndex& lower_orbits, const LiftContext& ctx);

struct BCLData {
  int N_C = 1;
  std::vector<int> units, M_inn, M_abs;
  bool abs_available = false;
  bool rational_union = false;
  int inner_degree = 1, abs_degree = 1;
};
BCLData bcl_data(const NielsenSpec& spec);

// Orbit of s under s -> u s, u running over units whose class action fixes C.
int component_moduli_degree(const BCLData& b, const LiftContext& ctx, int value);

}  // namespace hurwitz
