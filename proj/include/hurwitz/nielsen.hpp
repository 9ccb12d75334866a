#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hurwitz/groups.hpp"

namespace hurwitz {

using Tuple = std::vector<Elem>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Elem e : t) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    return h;
  }
};

enum class Equivalence { Inner, Absolute };

std::string to_string(Equivalence e);

// (G, C, T) with an equivalence. Labels give the class multiset; tuples in the
// Nielsen class may carry them in any order.
struct NielsenSpec {
  GroupPtr group;
  std::vector<std::string> labels;
  Equivalence equivalence = Equivalence::Inner;
  std::string T = "natural";
  std::string cover = "auto";
  std::size_t budget = 100000000;
  int jobs = 1;

  std::vector<int> class_multiset;        // sorted class ids
  PermRep rep;
  std::vector<Automorphism> normalizer;   // coset reps of N/Inn preserving the multiset, identity first
  bool normalizer_available = false;
  bool normalizer_loaded = false;         // computed on demand (absolute mode)
  std::string normalizer_error;

  int r() const { return static_cast<int>(labels.size()); }
  const Group& G() const { return *group; }

  static NielsenSpec make(GroupPtr group, std::vector<std::string> labels, Equivalence eq,
                          const std::string& T = "natural");
  static NielsenSpec from_json(const nlohmann::json& j, std::size_t group_limit = Group::kDefaultLimit);
  nlohmann::json to_json() const;
  NielsenSpec with_equivalence(Equivalence eq) const;
  void load_normalizer();
};

Elem product(const Group& G, const Tuple& t);
std::vector<int> class_sequence(const Group& G, const Tuple& t);
bool is_nielsen(const NielsenSpec& spec, const Tuple& t);

Tuple canonical_inner(const Group& G, const Tuple& t);
Tuple canonical_absolute(const NielsenSpec& spec, const Tuple& t);
Tuple canonical(const NielsenSpec& spec, const Tuple& t);

// Distinct orderings of the class multiset, lexicographic.
std::vector<std::vector<int>> orderings(const NielsenSpec& spec);

// Tuples visited by the pinned enumeration.
std::size_t raw_count(const NielsenSpec& spec);

// Sorted canonical representatives of the whole Nielsen class.
std::vector<Tuple> enumerate(const NielsenSpec& spec);
std::vector<Tuple> enumerate_ordering(const NielsenSpec& spec, const std::vector<int>& ordering);
// Oracle: no pinning, every entry but the last runs over its class.
std::vector<Tuple> enumerate_unpinned(const NielsenSpec& spec);

// Riemann-Hurwitz genus of the cover; galois uses the regular representation.
int cover_genus(const NielsenSpec& spec, bool galois = false);

bool hm_detect(const Group& G, const Tuple& t);
bool di_detect(const Group& G, const Tuple& t);          // (g1,g2,g1,g4)
bool di_cusp_shape(const Group& G, const Tuple& t);      // (x,y,y,z), y not an involution

NielsenSpec pure_cycle_reduce(const NielsenSpec& spec);

nlohmann::json tuple_to_json(const Group& G, const Tuple& t);
Tuple tuple_from_json(const Group& G, const nlohmann::json& j);

}  // namespace hurwitz
