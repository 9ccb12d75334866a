#include "hurwitz/nielsen.hpp"

#include <algorithm>
#include <thread>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::string to_string(Equivalence e) { return e == Equivalence::Inner ? "inner" : "absolute"; }

NielsenSpec NielsenSpec::make(GroupPtr group, std::vector<std::string> labels, Equivalence eq, const std::string& T) {
  NielsenSpec s;
  s.group = std::move(group);
  s.labels = std::move(labels);
  s.equivalence = eq;
  s.T = T;
  if (s.r() < 3) throw ConfigError("need at least 3 classes");
  for (const auto& l : s.labels) s.class_multiset.push_back(s.group->class_index(l));
  std::sort(s.class_multiset.begin(), s.class_multiset.end());
  s.rep = coset_rep(*s.group, point_stabilizer(*s.group, T));
  if (eq == Equivalence::Absolute) {
    s.load_normalizer();
    if (!s.normalizer_available) throw ConfigError(s.normalizer_error);
  }
  return s;
}

void NielsenSpec::load_normalizer() {
  if (normalizer_loaded) return;
  normalizer_loaded = true;
  try {
    normalizer = normalizer_gens(*group, labels, rep.stabilizer);
    normalizer_available = true;
  } catch (const ConfigError& e) {
    normalizer_error = e.what();
  }
}

NielsenSpec NielsenSpec::with_equivalence(Equivalence eq) const {
  NielsenSpec s = *this;
  s.equivalence = eq;
  if (eq == Equivalence::Absolute) {
    s.load_normalizer();
    if (!s.normalizer_available) throw ConfigError(s.normalizer_error);
  }
  return s;
}

NielsenSpec NielsenSpec::from_json(const nlohmann::json& j, std::size_t group_limit) {
  if (!j.is_object()) throw ConfigError("spec must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::vector<std::string> known{"group", "classes", "equivalence", "T", "cover", "budget", "jobs"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ConfigError("unknown spec key \"" + it.key() + "\"");
  }
  if (!j.contains("group")) throw ConfigError("spec missing \"group\"");
  if (!j.contains("classes") || !j["classes"].is_array()) throw ConfigError("spec needs a \"classes\" array");
  std::vector<std::string> labels;
  for (const auto& c : j["classes"]) {
    if (!c.is_string()) throw ConfigError("class labels must be strings");
    labels.push_back(c.get<std::string>());
  }
  Equivalence eq = Equivalence::Inner;
  if (j.contains("equivalence")) {
    if (!j["equivalence"].is_string()) throw ConfigError("\"equivalence\" must be a string");
    const std::string e = j["equivalence"];
    if (e == "absolute") eq = Equivalence::Absolute;
    else if (e != "inner") throw ConfigError("equivalence must be inner or absolute");
  }
  std::string T = "natural";
  if (j.contains("T")) {
    if (!j["T"].is_string()) throw ConfigError("\"T\" must be a string");
    T = j["T"];
  }
  auto G = make_group(FamilySpec::from_json(j["group"]), group_limit);
  NielsenSpec s = make(G, labels, eq, T);
  if (j.contains("cover")) {
    if (!j["cover"].is_string()) throw ConfigError("\"cover\" must be a string");
    s.cover = j["cover"];
  }
  if (j.contains("budget")) {
    if (!j["budget"].is_number_integer() || j["budget"].get<long long>() <= 0) throw ConfigError("budget must be positive");
    s.budget = j["budget"].get<std::size_t>();
  }
  if (j.contains("jobs")) {
    if (!j["jobs"].is_number_integer() || j["jobs"].get<int>() <= 0) throw ConfigError("jobs must be positive");
    s.jobs = j["jobs"];
  }
  return s;
}

nlohmann::json NielsenSpec::to_json() const {
  return {{"group", group->spec().to_json()}, {"classes", labels}, {"equivalence", to_string(equivalence)},
          {"T", T}, {"cover", cover}};
}

Elem product(const Group& G, const Tuple& t) {
  Elem p = G.identity();
  for (Elem e : t) p = G.mul(p, e);
  return p;
}

std::vector<int> class_sequence(const Group& G, const Tuple& t) {
  std::vector<int> c;
  for (Elem e : t) c.push_back(G.class_of(e));
  return c;
}

bool is_nielsen(const NielsenSpec& spec, const Tuple& t) {
  const Group& G = spec.G();
  if (static_cast<int>(t.size()) != spec.r()) return false;
  for (Elem e : t)
    if (e < 0 || e >= G.size()) return false;
  if (product(G, t) != G.identity()) return false;
  auto cs = class_sequence(G, t);
  std::sort(cs.begin(), cs.end());
  if (cs != spec.class_multiset) return false;
  return G.generates(t);
}

Tuple canonical_inner(const Group& G, const Tuple& t) {
  const std::size_t r = t.size();
  const Elem h = G.to_class_min(t[0]);
  Tuple base(r);
  for (std::size_t i = 0; i < r; ++i) base[i] = G.conj(t[i], h);
  Tuple best = base, cur(r);
  cur[0] = base[0];
  for (Elem c : G.centralizer_of_min(G.class_of(t[0]))) {
    if (c == G.identity()) continue;
    bool better = false;
    std::size_t i = 1;
    for (; i < r; ++i) {
      cur[i] = G.conj(base[i], c);
      if (cur[i] != best[i]) {
        better = cur[i] < best[i];
        break;
      }
    }
    if (!better) continue;
    for (std::size_t j = i + 1; j < r; ++j) cur[j] = G.conj(base[j], c);
    best = cur;
  }
  return best;
}

Tuple canonical_absolute(const NielsenSpec& spec, const Tuple& t) {
  if (!spec.normalizer_available) throw ConfigError(spec.normalizer_error);
  Tuple best;
  Tuple img(t.size());
  for (const auto& a : spec.normalizer) {
    for (std::size_t i = 0; i < t.size(); ++i) img[i] = a(t[i]);
    Tuple c = canonical_inner(spec.G(), img);
    if (best.empty() || c < best) best = std::move(c);
  }
  return best;
}

Tuple canonical(const NielsenSpec& spec, const Tuple& t) {
  return spec.equivalence == Equivalence::Inner ? canonical_inner(spec.G(), t) : canonical_absolute(spec, t);
}

std::vector<std::vector<int>> orderings(const NielsenSpec& spec) {
  std::vector<std::vector<int>> out;
  std::vector<int> p = spec.class_multiset;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::size_t raw_count(const NielsenSpec& spec) {
  const Group& G = spec.G();
  std::size_t total = 0;
  for (const auto& o : orderings(spec)) {
    std::size_t c = 1;
    for (std::size_t i = 1; i + 1 < o.size(); ++i) {
      c *= G.classes()[o[i]].members.size();
      if (c > spec.budget) return c;
    }
    total += c;
    if (total > spec.budget) return total;
  }
  return total;
}

namespace {

void check_budget(const NielsenSpec& spec, std::size_t raw) {
  if (raw > spec.budget)
    throw BudgetError("enumeration needs " + std::to_string(raw) + " raw tuples, budget is " +
                      std::to_string(spec.budget));
}

// Fill positions [pos, r-1) and close with the last entry.
void extend(const NielsenSpec& spec, const std::vector<int>& ord, Tuple& t, std::size_t pos, Elem prefix,
            std::vector<Tuple>& out) {
  const Group& G = spec.G();
  const std::size_t r = t.size();
  if (pos + 1 == r) {
    Elem last = G.inv(prefix);
    if (G.class_of(last) != ord[r - 1]) return;
    t[r - 1] = last;
    if (!G.generates(t)) return;
    out.push_back(canonical(spec, t));
    return;
  }
  for (Elem g : G.classes()[ord[pos]].members) {
    t[pos] = g;
    extend(spec, ord, t, pos + 1, G.mul(prefix, g), out);
  }
}

void finish(std::vector<Tuple>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Tuple> enumerate_ordering(const NielsenSpec& spec, const std::vector<int>& ord) {
  const Group& G = spec.G();
  const std::size_t r = ord.size();
  const Elem pin = G.classes()[ord[0]].rep;
  const auto& second = G.classes()[ord[1]].members;
  const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(second.size())));
  std::vector<std::vector<Tuple>> parts(jobs);
  auto work = [&](int w) {
    Tuple t(r);
    t[0] = pin;
    for (std::size_t k = w; k < second.size(); k += jobs) {
      t[1] = second[k];
      extend(spec, ord, t, 2, G.mul(pin, second[k]), parts[w]);
    }
  };
  if (r == 2) throw ConfigError("need at least 3 classes");
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::vector<Tuple> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  finish(out);
  return out;
}

std::vector<Tuple> enumerate(const NielsenSpec& spec) {
  check_budget(spec, raw_count(spec));
  std::vector<Tuple> out;
  for (const auto& o : orderings(spec)) {
    auto part = enumerate_ordering(spec, o);
    out.insert(out.end(), part.begin(), part.end());
  }
  finish(out);
  return out;
}

std::vector<Tuple> enumerate_unpinned(const NielsenSpec& spec) {
  const Group& G = spec.G();
  std::vector<Tuple> out;
  for (const auto& o : orderings(spec)) {
    std::size_t raw = 1;
    for (std::size_t i = 0; i + 1 < o.size(); ++i) raw *= G.classes()[o[i]].members.size();
    check_budget(spec, raw);
    Tuple t(o.size());
    for (Elem g : G.classes()[o[0]].members) {
      t[0] = g;
      extend(spec, o, t, 1, g, out);
    }
  }
  finish(out);
  return out;
}

int cover_genus(const NielsenSpec& spec, bool galois) {
  const Group& G = spec.G();
  const int n = galois ? G.size() : spec.rep.degree;
  long long sum = 0;
  for (const auto& l : spec.labels) {
    Elem g = G.classes()[G.class_index(l)].rep;
    sum += galois ? G.size() - G.size() / G.order(g) : spec.rep.index(g);
  }
  if (sum % 2) throw ConsistencyError("odd index sum " + std::to_string(sum));
  long long g = sum / 2 - n + 1;
  if (g < 0) throw ConsistencyError("negative genus " + std::to_string(g));
  return static_cast<int>(g);
}

bool hm_detect(const Group& G, const Tuple& t) {
  if (t.size() % 2) return false;
  for (std::size_t i = 0; i < t.size(); i += 2)
    if (t[i + 1] != G.inv(t[i])) return false;
  return true;
}

bool di_detect(const Group&, const Tuple& t) { return t.size() == 4 && t[0] == t[2]; }

bool di_cusp_shape(const Group& G, const Tuple& t) { return t.size() == 4 && t[1] == t[2] && G.order(t[1]) > 2; }

NielsenSpec pure_cycle_reduce(const NielsenSpec& spec) {
  const Group& G = spec.G();
  if (G.spec().family != Family::Alternating) throw ConfigError("pure-cycle reduction needs an alternating group");
  const int n = G.spec().n;
  std::vector<std::string> labels;
  for (const auto& l : spec.labels) {
    const auto& c = G.coords(G.classes()[G.class_index(l)].rep);
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
      if (seen[i] || c[i] == i) continue;
      std::vector<int> p(n);
      for (int x = 0; x < n; ++x) p[x] = x;
      int len = 0;
      for (int j = i; !seen[j]; j = c[j]) {
        seen[j] = 1;
        p[j] = c[j];
        ++len;
      }
      if (len % 2 == 0) throw ConfigError("class " + l + " has an even-length cycle");
      labels.push_back(G.conj_class(G.find(p)).label);
    }
  }
  NielsenSpec out = NielsenSpec::make(spec.group, labels, spec.equivalence, spec.T);
  out.cover = spec.cover;
  out.budget = spec.budget;
  out.jobs = spec.jobs;
  require(cover_genus(out) == cover_genus(spec), "pure-cycle reduction changed the genus");
  return out;
}

nlohmann::json tuple_to_json(const Group& G, const Tuple& t) {
  nlohmann::json j = nlohmann::json::array();
  for (Elem e : t) j.push_back(G.coords(e));
  return j;
}

Tuple tuple_from_json(const Group& G, const nlohmann::json& j) {
  Tuple t;
  for (const auto& c : j) {
    Elem e = G.find(c.get<std::vector<int>>());
    if (e < 0) throw ConfigError("tuple entry outside group");
    t.push_back(e);
  }
  return t;
}

}  // namespace hurwitz
