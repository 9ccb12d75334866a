#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace hurwitz {

enum class Family { Alternating, Symmetric, Dihedral, Affine2, Heis2, K22Z3 };

struct FamilySpec {
  Family family = Family::Alternating;
  int n = 0;      // degree for alternating/symmetric, m for dihedral
  int ell = 0;
  int k = 0;
  int order = 0;  // affine2 only: 2 or 3

  static FamilySpec alternating(int n);
  static FamilySpec symmetric(int n);
  static FamilySpec dihedral(int m);
  static FamilySpec affine2(int ell, int k, int order);
  static FamilySpec heis2(int ell, int k);
  static FamilySpec k22z3(int ell, int k);

  static FamilySpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::string name() const;
  int modulus() const;  // ell^(k+1), or m for dihedral
  std::uint64_t formula_order() const;
};

using Elem = int;

struct ConjClass {
  Elem rep = 0;
  std::vector<Elem> members;  // sorted
  int order = 1;
  std::string label;
};

struct Automorphism {
  std::vector<Elem> map;
  std::string name;
  Elem operator()(Elem g) const { return map[g]; }
};

// Right-coset permutation representation G -> S_n.
struct PermRep {
  int degree = 0;
  std::vector<Elem> stabilizer;           // G(1), sorted
  std::vector<std::vector<int>> image;    // image[g][point]
  int cycles(Elem g) const;
  int index(Elem g) const { return degree - cycles(g); }
};

// A finite group from one of the parametric families. Elements are indices
// into a list sorted lexicographically by serialized coordinates, so index
// order is the element total order. Immutable after construction.
class Group {
 public:
  static constexpr std::size_t kDefaultLimit = 10000;

  explicit Group(const FamilySpec& spec, std::size_t limit = kDefaultLimit);

  const FamilySpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(coords_.size()); }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const { return inv_[a]; }
  int order(Elem a) const { return order_[a]; }
  Elem pow(Elem a, long long e) const;
  Elem conj(Elem g, Elem h) const { return mul(mul(h, g), inv(h)); }  // h g h^-1

  const std::vector<int>& coords(Elem a) const { return coords_[a]; }
  Elem find(const std::vector<int>& c) const;  // -1 when absent
  std::string str(Elem a) const;
  const std::vector<Elem>& generators() const { return gens_; }

  const std::vector<ConjClass>& classes() const { return classes_; }
  int class_of(Elem g) const { return class_of_[g]; }
  int class_index(const std::string& label) const;  // throws ConfigError
  const ConjClass& conj_class(Elem g) const { return classes_[class_of_[g]]; }

  // Some h with h g h^-1 = min of the class of g.
  Elem to_class_min(Elem g) const { return to_min_[g]; }
  const std::vector<Elem>& centralizer_of_min(int cls) const { return cen_min_[cls]; }

  std::vector<Elem> closure(const std::vector<Elem>& gens) const;
  bool generates(const std::vector<Elem>& elems) const;
  std::vector<Elem> center() const;

  // Family-specific helpers.
  std::vector<int> cycle_type(Elem g) const;  // permutation families only
  Elem alpha() const;                          // the complement generator (affine2)

  std::vector<int> mul_coords(const std::vector<int>& a, const std::vector<int>& b) const;

 private:
  void build_elements(std::size_t limit);
  void build_classes();
  void assign_labels();
  std::uint64_t pack(const std::vector<int>& c) const;
  std::vector<int> k22_mul(const std::vector<int>& a, const std::vector<int>& b) const;
  std::vector<int> k22_alpha(const std::vector<int>& h) const;
  void check_k22_alpha() const;

  FamilySpec spec_;
  int N_ = 1;
  int eps_ = 0;  // k22 carry: xdot^N = w^eps
  std::vector<std::array<int, 3>> alpha_k_;  // alpha on K, indexed (m*N+n)*N+u
  std::vector<std::vector<int>> coords_;
  std::unordered_map<std::uint64_t, Elem> index_;
  std::vector<std::uint16_t> table_;
  std::vector<Elem> inv_;
  std::vector<int> order_;
  std::vector<Elem> gens_;
  std::vector<ConjClass> classes_;
  std::vector<int> class_of_;
  std::vector<Elem> to_min_;
  std::vector<std::vector<Elem>> cen_min_;
};

using GroupPtr = std::shared_ptr<const Group>;

GroupPtr make_group(const FamilySpec& spec, std::size_t limit = Group::kDefaultLimit);

ConjClass conj_class(const Group& G, Elem g);

bool generates(const Group& G, const std::vector<Elem>& elems);

// T on right cosets of the family's default point stabilizer ("natural") or the
// trivial subgroup ("regular").
PermRep coset_rep(const Group& G, const std::vector<Elem>& stabilizer);
std::vector<Elem> point_stabilizer(const Group& G, const std::string& T);

std::vector<Elem> center(const Group& G);

struct CenInSn {
  std::vector<Elem> normalizer;  // N_G(G(1))
  int quotient_order = 1;        // |N_G(G(1))/G(1)|
  std::vector<Elem> coset_reps;
};
CenInSn cen_in_Sn(const Group& G, const std::vector<Elem>& stabilizer);

// Coset representatives of N_{S_n}(G,C)/Inn(G), identity first.
std::vector<Automorphism> normalizer_gens(const Group& G, const std::vector<std::string>& labels,
                                          const std::vector<Elem>& stabilizer);

bool is_automorphism(const Group& G, const Automorphism& a);

// Central extension 1 -> Z/m -> E -> G -> 1 with an explicit section of the
// kernel coordinate.
struct CentralExtension {
  std::string tag;
  GroupPtr E;
  GroupPtr G;
  std::vector<Elem> proj;               // E -> G
  std::vector<std::vector<Elem>> fiber; // G -> E
  int kernel_order = 1;
  std::vector<int> central;             // central coordinate for kernel elements, else -1
};

std::shared_ptr<const CentralExtension> make_extension(const std::string& tag, GroupPtr G);

Elem central_lift(const CentralExtension& ext, Elem g);

struct GLOrders {
  std::uint64_t gl = 0, sl = 0, psl = 0;
};
GLOrders gl_orders(int N);
GLOrders gl_orders_brute(int N);

// 2x2 matrices over Z/N, row-major {a,b,c,d}.
std::vector<std::array<int, 4>> gl2_elements(int N);

int mod(long long a, int m);
int inv_mod(int a, int m);  // throws ConfigError when not a unit
int gcd_int(int a, int b);

}  // namespace hurwitz
