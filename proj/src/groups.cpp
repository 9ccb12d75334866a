#include "hurwitz/groups.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hurwitz/errors.hpp"

namespace hurwitz {

int mod(long long a, int m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

int inv_mod(int a, int m) {
  a = mod(a, m);
  long long t = 0, nt = 1, r = m, nr = a;
  while (nr != 0) {
    long long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw ConfigError("not invertible: " + std::to_string(a) + " mod " + std::to_string(m));
  return mod(t, m);
}

static int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// ---------------------------------------------------------------- FamilySpec

FamilySpec FamilySpec::alternating(int n) { FamilySpec s; s.family = Family::Alternating; s.n = n; return s; }
FamilySpec FamilySpec::symmetric(int n) { FamilySpec s; s.family = Family::Symmetric; s.n = n; return s; }
FamilySpec FamilySpec::dihedral(int m) { FamilySpec s; s.family = Family::Dihedral; s.n = m; return s; }
FamilySpec FamilySpec::affine2(int ell, int k, int order) {
  FamilySpec s; s.family = Family::Affine2; s.ell = ell; s.k = k; s.order = order; return s;
}
FamilySpec FamilySpec::heis2(int ell, int k) { FamilySpec s; s.family = Family::Heis2; s.ell = ell; s.k = k; return s; }
FamilySpec FamilySpec::k22z3(int ell, int k) { FamilySpec s; s.family = Family::K22Z3; s.ell = ell; s.k = k; return s; }

static bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FamilySpec FamilySpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw ConfigError("group spec needs a \"family\" string");
  const std::string f = j["family"];
  auto geti = [&](const char* key, int dflt, bool needed) {
    if (!j.contains(key)) {
      if (needed) throw ConfigError(std::string("group spec missing \"") + key + "\"");
      return dflt;
    }
    if (!j[key].is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
    return j[key].get<int>();
  };
  FamilySpec s;
  if (f == "alternating" || f == "symmetric") {
    s = f == "alternating" ? alternating(geti("n", 0, true)) : symmetric(geti("n", 0, true));
    if (s.n < 2 || s.n > 10) throw ConfigError("degree n must be in [2,10]");
  } else if (f == "dihedral") {
    s = dihedral(geti("m", 0, true));
    if (s.n < 3) throw ConfigError("dihedral needs m >= 3");
  } else if (f == "affine2" || f == "heis2" || f == "k22z3") {
    int ell = geti("ell", 0, true), k = geti("k", 0, false);
    if (!is_prime(ell)) throw ConfigError("ell must be prime");
    if (k < 0) throw ConfigError("k must be >= 0");
    if (f == "affine2") {
      int o = geti("order", 0, true);
      if (o != 2 && o != 3) throw ConfigError("affine2 order must be 2 or 3");
      s = affine2(ell, k, o);
    } else if (f == "heis2") {
      s = heis2(ell, k);
    } else {
      s = k22z3(ell, k);
    }
  } else {
    throw ConfigError("unsupported family: " + f);
  }
  return s;
}

nlohmann::json FamilySpec::to_json() const {
  switch (family) {
    case Family::Alternating: return {{"family", "alternating"}, {"n", n}};
    case Family::Symmetric: return {{"family", "symmetric"}, {"n", n}};
    case Family::Dihedral: return {{"family", "dihedral"}, {"m", n}};
    case Family::Affine2: return {{"family", "affine2"}, {"ell", ell}, {"k", k}, {"order", order}};
    case Family::Heis2: return {{"family", "heis2"}, {"ell", ell}, {"k", k}};
    case Family::K22Z3: return {{"family", "k22z3"}, {"ell", ell}, {"k", k}};
  }
  return {};
}

std::string FamilySpec::name() const {
  std::ostringstream os;
  switch (family) {
    case Family::Alternating: os << "alternating(" << n << ")"; break;
    case Family::Symmetric: os << "symmetric(" << n << ")"; break;
    case Family::Dihedral: os << "dihedral(" << n << ")"; break;
    case Family::Affine2: os << "affine2(" << ell << "," << k << "," << order << ")"; break;
    case Family::Heis2: os << "heis2(" << ell << "," << k << ")"; break;
    case Family::K22Z3: os << "k22z3(" << ell << "," << k << ")"; break;
  }
  return os.str();
}

int FamilySpec::modulus() const {
  switch (family) {
    case Family::Alternating:
    case Family::Symmetric: return 1;
    case Family::Dihedral: return n;
    default: return ipow(ell, k + 1);
  }
}

std::uint64_t FamilySpec::formula_order() const {
  auto fact = [](int m) { std::uint64_t r = 1; for (int i = 2; i <= m; ++i) r *= i; return r; };
  std::uint64_t N = static_cast<std::uint64_t>(modulus());
  switch (family) {
    case Family::Alternating: return n < 2 ? 1 : fact(n) / 2;
    case Family::Symmetric: return fact(n);
    case Family::Dihedral: return 2 * N;
    case Family::Affine2: return static_cast<std::uint64_t>(order) * N * N;
    case Family::Heis2: return 2 * N * N * N;
    case Family::K22Z3: return 3 * N * N * N;
  }
  return 0;
}

// ---------------------------------------------------------------- Group

namespace {

std::vector<int> astar_apply(int p, int x, int y, int N) {
  // A* = [[0,-1],[1,-1]] on column vectors; A*(x,y) = (-y, x-y).
  for (int i = 0; i < mod(p, 3); ++i) {
    int nx = mod(-y, N), ny = mod(x - y, N);
    x = nx;
    y = ny;
  }
  return {x, y};
}

}  // namespace

std::uint64_t Group::pack(const std::vector<int>& c) const {
  std::uint64_t base = static_cast<std::uint64_t>(std::max({N_, spec_.n, 4}));
  std::uint64_t key = 0;
  for (int x : c) key = key * base + static_cast<std::uint64_t>(x);
  return key;
}

std::vector<int> Group::k22_mul(const std::vector<int>& a, const std::vector<int>& b) const {
  // (m,n,u) = xdot^m ydot^n w^u ; ydot^n xdot^m = xdot^m ydot^n w^{nm}; xdot^N = ydot^N = w^eps
  int N = N_;
  int carry = (a[0] + b[0] >= N ? 1 : 0) + (a[1] + b[1] >= N ? 1 : 0);
  long long u = static_cast<long long>(a[2]) + b[2] + static_cast<long long>(a[1]) * b[0] + static_cast<long long>(eps_) * carry;
  return {mod(a[0] + b[0], N), mod(a[1] + b[1], N), mod(u, N)};
}

namespace {
std::vector<int> k22_pow(const std::vector<int>& h, long long e,
                         const std::function<std::vector<int>(const std::vector<int>&, const std::vector<int>&)>& mul) {
  std::vector<int> r{0, 0, 0}, b = h;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}
}  // namespace

std::vector<int> Group::k22_alpha(const std::vector<int>& h) const {
  if (!alpha_k_.empty()) {
    const auto& a = alpha_k_[(static_cast<std::size_t>(h[0]) * N_ + h[1]) * N_ + h[2]];
    return {a[0], a[1], a[2]};
  }
  // alpha: xdot -> ydot, ydot -> (xdot ydot)^-1, w -> w
  auto mul = [this](const std::vector<int>& a, const std::vector<int>& b) { return k22_mul(a, b); };
  const long long period = static_cast<long long>(N_) * N_ * N_;
  std::vector<int> xy = mul({1, 0, 0}, {0, 1, 0});
  std::vector<int> xy_inv = k22_pow(xy, period - 1, mul);
  std::vector<int> r = k22_pow({0, 1, 0}, h[0], mul);
  r = mul(r, k22_pow(xy_inv, h[1], mul));
  return mul(r, {0, 0, h[2]});
}

void Group::check_k22_alpha() const {
  auto mul = [this](const std::vector<int>& a, const std::vector<int>& b) { return k22_mul(a, b); };
  const std::vector<std::vector<int>> gens{{1, 0, 0}, {0, 1, 0}};
  for (int m = 0; m < N_; ++m)
    for (int n = 0; n < N_; ++n)
      for (int u = 0; u < N_; ++u) {
        std::vector<int> h{m, n, u};
        for (const auto& g : gens)
          if (k22_alpha(mul(h, g)) != mul(k22_alpha(h), k22_alpha(g)))
            throw ConsistencyError("k22 alpha is not a homomorphism for " + spec_.name());
        if (k22_alpha(k22_alpha(k22_alpha(h))) != h)
          throw ConsistencyError("k22 alpha does not have order 3 for " + spec_.name());
      }
}

std::vector<int> Group::mul_coords(const std::vector<int>& a, const std::vector<int>& b) const {
  const int N = N_;
  switch (spec_.family) {
    case Family::Alternating:
    case Family::Symmetric: {
      std::vector<int> r(a.size());
      for (std::size_t x = 0; x < a.size(); ++x) r[x] = b[a[x]];
      return r;
    }
    case Family::Dihedral: {
      int s = b[0] ? -1 : 1;
      return {(a[0] + b[0]) % 2, mod(static_cast<long long>(s) * a[1] + b[1], N)};
    }
    case Family::Affine2: {
      int o = spec_.order;
      std::vector<int> v;
      if (o == 2)
        v = b[0] ? std::vector<int>{mod(-a[1], N), mod(-a[2], N)} : std::vector<int>{a[1], a[2]};
      else
        v = astar_apply(b[0], a[1], a[2], N);
      return {(a[0] + b[0]) % o, mod(v[0] + b[1], N), mod(v[1] + b[2], N)};
    }
    case Family::Heis2: {
      int a1 = a[1], a2 = a[2];
      if (b[0]) { a1 = mod(-a1, N); a2 = mod(-a2, N); }
      long long w = static_cast<long long>(a[3]) + b[3] + static_cast<long long>(a1) * b[2];
      return {(a[0] + b[0]) % 2, mod(a1 + b[1], N), mod(a2 + b[2], N), mod(w, N)};
    }
    case Family::K22Z3: {
      std::vector<int> h{a[1], a[2], a[3]};
      for (int i = 0; i < b[0]; ++i) h = k22_alpha(h);
      std::vector<int> r = k22_mul(h, {b[1], b[2], b[3]});
      return {(a[0] + b[0]) % 3, r[0], r[1], r[2]};
    }
  }
  return {};
}

void Group::build_elements(std::size_t limit) {
  const std::uint64_t expect = spec_.formula_order();
  if (expect > limit)
    throw BudgetError(spec_.name() + " has order " + std::to_string(expect) + " above the size limit " +
                      std::to_string(limit));
  const int N = N_;
  switch (spec_.family) {
    case Family::Alternating:
    case Family::Symmetric: {
      std::vector<int> p(spec_.n);
      std::iota(p.begin(), p.end(), 0);
      do {
        if (spec_.family == Family::Alternating) {
          int inv = 0;
          for (int i = 0; i < spec_.n; ++i)
            for (int j = i + 1; j < spec_.n; ++j) inv += p[i] > p[j];
          if (inv % 2) continue;
        }
        coords_.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      break;
    }
    case Family::Dihedral:
      for (int s = 0; s < 2; ++s)
        for (int v = 0; v < N; ++v) coords_.push_back({s, v});
      break;
    case Family::Affine2:
      for (int s = 0; s < spec_.order; ++s)
        for (int x = 0; x < N; ++x)
          for (int y = 0; y < N; ++y) coords_.push_back({s, x, y});
      break;
    case Family::Heis2:
    case Family::K22Z3: {
      int top = spec_.family == Family::Heis2 ? 2 : 3;
      for (int s = 0; s < top; ++s)
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b)
            for (int w = 0; w < N; ++w) coords_.push_back({s, a, b, w});
      break;
    }
  }
  require(coords_.size() == expect, "element count differs from family formula for " + spec_.name());
}

Group::Group(const FamilySpec& spec, std::size_t limit) : spec_(spec) {
  if ((spec_.family == Family::Alternating || spec_.family == Family::Symmetric) && (spec_.n < 2 || spec_.n > 10))
    throw ConfigError("degree must be in [2,10]");
  if (spec_.family == Family::Dihedral && spec_.n < 3) throw ConfigError("dihedral needs m >= 3");
  if (spec_.family == Family::Affine2 || spec_.family == Family::Heis2 || spec_.family == Family::K22Z3) {
    if (!is_prime(spec_.ell) || spec_.k < 0) throw ConfigError("bad ell/k for " + spec_.name());
    if (spec_.family == Family::Affine2 && spec_.order != 2 && spec_.order != 3)
      throw ConfigError("affine2 order must be 2 or 3");
  }
  if (spec_.family == Family::Heis2 && spec_.ell == 2)
    throw ConfigError("heis2 needs ell != 2 (w = aa'/2)");
  N_ = std::max(1, spec_.modulus());
  if (spec_.family == Family::K22Z3) {
    if (N_ % 2 == 0) {
      long long half = static_cast<long long>(N_) * (N_ - 1) / 2;
      eps_ = mod(-static_cast<long long>(inv_mod(3, N_)) * mod(half, N_), N_);
    }
    if (spec_.formula_order() <= limit) {
      check_k22_alpha();
      std::vector<std::array<int, 3>> table;
      for (int m = 0; m < N_; ++m)
        for (int n = 0; n < N_; ++n)
          for (int u = 0; u < N_; ++u) {
            auto a = k22_alpha({m, n, u});
            table.push_back({a[0], a[1], a[2]});
          }
      alpha_k_ = std::move(table);
    }
  }
  build_elements(limit);
  for (std::size_t i = 0; i < coords_.size(); ++i) index_.emplace(pack(coords_[i]), static_cast<Elem>(i));

  const int n = size();
  if (n <= 2048) {
    table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Elem c = find(mul_coords(coords_[a], coords_[b]));
        require(c >= 0, "product left the group");
        table_[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(c);
      }
  }
  require(coords_[0] == mul_coords(coords_[0], coords_[0]), "index 0 is not the identity");

  order_.assign(n, 0);
  inv_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    int o = 1;
    Elem x = a;
    while (x != 0) {
      x = mul(x, a);
      ++o;
      require(o <= n, "element order exceeds group order");
    }
    order_[a] = o;
    inv_[a] = pow(a, o - 1);
  }

  std::vector<std::vector<int>> gc;
  switch (spec_.family) {
    case Family::Alternating:
    case Family::Symmetric: {
      int m = spec_.n;
      auto cyc = [&](int from, int to) {
        std::vector<int> p(m);
        std::iota(p.begin(), p.end(), 0);
        for (int i = from; i < to; ++i) p[i] = i + 1;
        p[to] = from;
        return p;
      };
      if (spec_.family == Family::Symmetric) {
        gc.push_back(cyc(0, 1));
        gc.push_back(cyc(0, m - 1));
      } else if (m >= 3) {
        gc.push_back(cyc(0, 2));
        gc.push_back(m % 2 ? cyc(0, m - 1) : cyc(1, m - 1));
      }
      break;
    }
    case Family::Dihedral: gc = {{1, 0}, {0, 1}}; break;
    case Family::Affine2: gc = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; break;
    case Family::Heis2:
    case Family::K22Z3: gc = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}; break;
  }
  for (auto& c : gc) {
    Elem e = find(c);
    require(e >= 0, "generator missing");
    if (e != 0) gens_.push_back(e);
  }
  require(static_cast<int>(closure(gens_).size()) == n, "family generators do not generate " + spec_.name());
  build_classes();
  assign_labels();
}

Elem Group::find(const std::vector<int>& c) const {
  auto it = index_.find(pack(c));
  if (it == index_.end() || coords_[it->second] != c) return -1;
  return it->second;
}

Elem Group::mul(Elem a, Elem b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * coords_.size() + b];
  return find(mul_coords(coords_[a], coords_[b]));
}

Elem Group::pow(Elem a, long long e) const {
  if (e < 0) {
    a = inv_.empty() ? a : inv_[a];
    e = -e;
  }
  Elem r = 0, b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::string Group::str(Elem a) const {
  const auto& c = coords_[a];
  std::ostringstream os;
  if (spec_.family == Family::Alternating || spec_.family == Family::Symmetric) {
    std::vector<char> seen(c.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (seen[i] || c[i] == static_cast<int>(i)) continue;
      os << "(";
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = 1;
        os << (first ? "" : " ") << j + 1;
        first = false;
        j = c[j];
      }
      os << ")";
      any = true;
    }
    if (!any) os << "()";
    return os.str();
  }
  os << "[" << c[0] << "|";
  for (std::size_t i = 1; i < c.size(); ++i) os << (i > 1 ? "," : "") << c[i];
  os << "]";
  return os.str();
}

std::vector<Elem> Group::closure(const std::vector<Elem>& gens) const {
  const int n = size();
  std::vector<char> seen(n, 0);
  std::vector<Elem> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem g : gens) {
      Elem y = mul(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool Group::generates(const std::vector<Elem>& elems) const {
  const int n = size();
  std::vector<char> seen(n, 0);
  std::vector<Elem> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem g : elems) {
      Elem y = mul(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        if (static_cast<int>(out.size()) == n) return true;
      }
    }
  return static_cast<int>(out.size()) == n;
}

std::vector<Elem> Group::center() const {
  std::vector<Elem> z;
  for (Elem a = 0; a < size(); ++a) {
    bool c = true;
    for (Elem g : gens_)
      if (mul(a, g) != mul(g, a)) { c = false; break; }
    if (c) z.push_back(a);
  }
  return z;
}

void Group::build_classes() {
  const int n = size();
  class_of_.assign(n, -1);
  to_min_.assign(n, 0);
  for (Elem g = 0; g < n; ++g) {
    if (class_of_[g] >= 0) continue;
    ConjClass cc;
    cc.rep = g;
    cc.order = order_[g];
    const int id = static_cast<int>(classes_.size());
    std::vector<std::pair<Elem, Elem>> queue{{g, 0}};  // (x, c) with c g c^-1 = x
    class_of_[g] = id;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto [x, c] = queue[i];
      to_min_[x] = inv_[c];
      cc.members.push_back(x);
      for (Elem s : gens_) {
        Elem y = conj(x, s);
        if (class_of_[y] < 0) {
          class_of_[y] = id;
          queue.emplace_back(y, mul(s, c));
        }
      }
    }
    std::sort(cc.members.begin(), cc.members.end());
    classes_.push_back(std::move(cc));
  }
  cen_min_.resize(classes_.size());
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    Elem r = classes_[i].rep;
    for (Elem a = 0; a < n; ++a)
      if (mul(a, r) == mul(r, a)) cen_min_[i].push_back(a);
  }
}

std::vector<int> Group::cycle_type(Elem g) const {
  if (spec_.family != Family::Alternating && spec_.family != Family::Symmetric)
    throw ConfigError("cycle_type needs a permutation family");
  const auto& c = coords_[g];
  std::vector<char> seen(c.size(), 0);
  std::vector<int> t;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = c[j]) { seen[j] = 1; ++len; }
    if (len > 1) t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

Elem Group::alpha() const {
  if (spec_.family != Family::Affine2) throw ConfigError("alpha() needs affine2");
  return find({1, 0, 0});
}

void Group::assign_labels() {
  for (std::size_t i = 0; i < classes_.size(); ++i) classes_[i].label = "c" + std::to_string(i);
  auto label_of = [&](std::vector<int> c, const std::string& lab) {
    Elem e = find(c);
    if (e >= 0) classes_[class_of_[e]].label = lab;
  };
  classes_[class_of_[0]].label = "1";
  switch (spec_.family) {
    case Family::Alternating:
    case Family::Symmetric: {
      std::map<std::vector<int>, std::vector<int>> by_type;
      for (std::size_t i = 0; i < classes_.size(); ++i) by_type[cycle_type(classes_[i].rep)].push_back(static_cast<int>(i));
      for (auto& [type, ids] : by_type) {
        if (type.empty()) continue;
        std::string base;
        for (std::size_t j = 0; j < type.size(); ++j) base += (j ? "." : "") + std::to_string(type[j]);
        if (ids.size() == 1) {
          classes_[ids[0]].label = base;
          continue;
        }
        std::vector<int> p(spec_.n);
        std::iota(p.begin(), p.end(), 0);
        int at = 0;
        for (int len : type) {
          for (int i = at; i < at + len - 1; ++i) p[i] = i + 1;
          p[at + len - 1] = at;
          at += len;
        }
        int plus = class_of_[find(p)];
        for (int id : ids) classes_[id].label = base + (id == plus ? "+" : "-");
      }
      break;
    }
    case Family::Dihedral: {
      label_of({1, 0}, "2");
      for (int v = 1; v <= N_ / 2; ++v) label_of({0, v}, "r" + std::to_string(v));
      break;
    }
    case Family::Affine2:
      if (spec_.order == 2) {
        label_of({1, 0, 0}, "2");
      } else {
        label_of({1, 0, 0}, "C+");
        label_of({2, 0, 0}, "C-");
      }
      break;
    default: break;
  }
}

int Group::class_index(const std::string& label) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].label == label) return static_cast<int>(i);
  if (label.size() > 1 && label[0] == 'c') {
    try {
      int i = std::stoi(label.substr(1));
      if (i >= 0 && i < static_cast<int>(classes_.size())) return i;
    } catch (...) {
    }
  }
  throw ConfigError("no class labelled \"" + label + "\" in " + spec_.name());
}

// ---------------------------------------------------------------- free functions

GroupPtr make_group(const FamilySpec& spec, std::size_t limit) { return std::make_shared<const Group>(spec, limit); }

ConjClass conj_class(const Group& G, Elem g) { return G.conj_class(g); }

bool generates(const Group& G, const std::vector<Elem>& elems) { return G.generates(elems); }

std::vector<Elem> center(const Group& G) { return G.center(); }

int PermRep::cycles(Elem g) const {
  const auto& p = image[g];
  std::vector<char> seen(degree, 0);
  int c = 0;
  for (int i = 0; i < degree; ++i) {
    if (seen[i]) continue;
    ++c;
    for (int j = i; !seen[j]; j = p[j]) seen[j] = 1;
  }
  return c;
}

std::vector<Elem> point_stabilizer(const Group& G, const std::string& T) {
  if (T == "regular") return {G.identity()};
  if (T != "natural" && T != "standard" && T != "alpha-cosets" && T != "involution-cosets" && T != "complement-cosets")
    throw ConfigError("unknown representation T: " + T);
  const auto& s = G.spec();
  switch (s.family) {
    case Family::Alternating:
    case Family::Symmetric: {
      std::vector<Elem> h;
      for (Elem g = 0; g < G.size(); ++g)
        if (G.coords(g)[0] == 0) h.push_back(g);
      return h;
    }
    case Family::Dihedral: return G.closure({G.find({1, 0})});
    case Family::Affine2: return G.closure({G.alpha()});
    case Family::Heis2:
    case Family::K22Z3: return G.closure({G.find({1, 0, 0, 0})});
  }
  return {G.identity()};
}

PermRep coset_rep(const Group& G, const std::vector<Elem>& stabilizer) {
  PermRep T;
  T.stabilizer = stabilizer;
  std::sort(T.stabilizer.begin(), T.stabilizer.end());
  require(G.closure(T.stabilizer) == T.stabilizer, "point stabilizer is not a subgroup");
  std::vector<int> id(G.size(), -1);
  std::vector<Elem> reps;
  for (Elem g = 0; g < G.size(); ++g) {
    if (id[g] >= 0) continue;
    for (Elem h : T.stabilizer) id[G.mul(h, g)] = static_cast<int>(reps.size());
    reps.push_back(g);
  }
  T.degree = static_cast<int>(reps.size());
  T.image.assign(G.size(), std::vector<int>(T.degree));
  for (Elem g = 0; g < G.size(); ++g)
    for (int c = 0; c < T.degree; ++c) T.image[g][c] = id[G.mul(reps[c], g)];
  return T;
}

CenInSn cen_in_Sn(const Group& G, const std::vector<Elem>& stabilizer) {
  CenInSn out;
  std::vector<char> inH(G.size(), 0);
  for (Elem h : stabilizer) inH[h] = 1;
  for (Elem g = 0; g < G.size(); ++g) {
    bool ok = true;
    for (Elem h : stabilizer)
      if (!inH[G.conj(h, g)]) { ok = false; break; }
    if (ok) out.normalizer.push_back(g);
  }
  out.quotient_order = static_cast<int>(out.normalizer.size() / stabilizer.size());
  std::vector<char> covered(G.size(), 0);
  for (Elem g : out.normalizer) {
    if (covered[g]) continue;
    out.coset_reps.push_back(g);
    for (Elem h : stabilizer) covered[G.mul(h, g)] = 1;
  }
  return out;
}

bool is_automorphism(const Group& G, const Automorphism& a) {
  if (static_cast<int>(a.map.size()) != G.size()) return false;
  std::vector<char> hit(G.size(), 0);
  for (Elem x : a.map) {
    if (x < 0 || x >= G.size() || hit[x]) return false;
    hit[x] = 1;
  }
  for (Elem x = 0; x < G.size(); ++x)
    for (Elem g : G.generators())
      if (a.map[G.mul(x, g)] != G.mul(a.map[x], a.map[g])) return false;
  return true;
}

namespace {

std::vector<int> class_multiset(const Group& G, const std::vector<std::string>& labels) {
  std::vector<int> ms;
  for (const auto& l : labels) ms.push_back(G.class_index(l));
  std::sort(ms.begin(), ms.end());
  return ms;
}

bool preserves_multiset(const Group& G, const Automorphism& a, const std::vector<int>& ms) {
  std::vector<int> img;
  for (int c : ms) img.push_back(G.class_of(a(G.classes()[c].rep)));
  std::sort(img.begin(), img.end());
  return img == ms;
}

// Key identifying the Inn(G)-coset of an automorphism.
std::vector<Elem> coset_key(const Group& G, const Automorphism& a) {
  std::vector<Elem> best;
  for (Elem h = 0; h < G.size(); ++h) {
    std::vector<Elem> k;
    for (Elem g : G.generators()) k.push_back(G.conj(a(g), h));
    if (best.empty() || k < best) best = k;
  }
  return best;
}

Automorphism from_coords_map(const Group& G, const std::function<std::vector<int>(const std::vector<int>&)>& f,
                             std::string name) {
  Automorphism a;
  a.name = std::move(name);
  a.map.resize(G.size());
  for (Elem g = 0; g < G.size(); ++g) {
    Elem e = G.find(f(G.coords(g)));
    require(e >= 0, "automorphism image outside group");
    a.map[g] = e;
  }
  return a;
}

std::vector<Automorphism> generic_automorphisms(const Group& G, const std::vector<Elem>& stabilizer) {
  if (G.size() > 500) throw ConfigError("no built-in normalizer data and |G| > 500 for " + G.spec().name());
  const int n = G.size();
  // two-element generating set if one exists, else the family generators
  std::vector<Elem> gens;
  for (const auto& c : G.classes()) {
    for (Elem b = 0; b < n && gens.empty(); ++b)
      if (G.generates({c.rep, b})) gens = {c.rep, b};
    if (!gens.empty()) break;
  }
  if (gens.empty()) gens = G.generators();
  if (gens.size() > 2) throw ConfigError("generic automorphism search needs a 2-generated group");
  std::vector<std::vector<Elem>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem x = 0; x < n; ++x)
      if (G.order(x) == G.order(gens[i]) &&
          G.conj_class(x).members.size() == G.conj_class(gens[i]).members.size())
        cands[i].push_back(x);

  // BFS words in gens to express every element
  std::vector<int> parent(n, -2), via(n, -1);
  std::vector<Elem> bfs{0};
  parent[0] = -1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Elem y = G.mul(bfs[i], gens[j]);
      if (parent[y] == -2) {
        parent[y] = bfs[i];
        via[y] = static_cast<int>(j);
        bfs.push_back(y);
      }
    }

  std::vector<char> inH(n, 0);
  for (Elem h : stabilizer) inH[h] = 1;
  std::vector<Automorphism> out;
  std::vector<Elem> img(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i < gens.size()) {
      for (Elem x : cands[i]) {
        img[i] = x;
        rec(i + 1);
      }
      return;
    }
    Automorphism a;
    a.map.assign(n, -1);
    a.map[0] = 0;
    for (std::size_t t = 1; t < bfs.size(); ++t) a.map[bfs[t]] = G.mul(a.map[parent[bfs[t]]], img[via[bfs[t]]]);
    for (Elem x = 0; x < n; ++x)
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (a.map[G.mul(x, gens[j])] != G.mul(a.map[x], img[j])) return;
    std::vector<char> hit(n, 0);
    for (Elem y : a.map) {
      if (hit[y]) return;
      hit[y] = 1;
    }
    // T-equivalence: a(G(1)) must be conjugate to G(1)
    bool conj_ok = false;
    for (Elem h = 0; h < n && !conj_ok; ++h) {
      bool all = true;
      for (Elem s : stabilizer)
        if (!inH[G.conj(a.map[s], h)]) { all = false; break; }
      conj_ok = all;
    }
    if (conj_ok) out.push_back(std::move(a));
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<Automorphism> normalizer_gens(const Group& G, const std::vector<std::string>& labels,
                                          const std::vector<Elem>& stabilizer) {
  const auto ms = class_multiset(G, labels);
  const auto& s = G.spec();
  std::vector<Automorphism> cands;
  const int N = s.modulus();
  switch (s.family) {
    case Family::Alternating: {
      int n = s.n;
      cands.push_back(from_coords_map(G, [n](const std::vector<int>& c) {
        std::vector<int> t(n);
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[0], t[1]);
        std::vector<int> r(n);
        for (int x = 0; x < n; ++x) r[x] = t[c[t[x]]];
        return r;
      }, "conj(1 2)"));
      break;
    }
    case Family::Symmetric: break;
    case Family::Dihedral:
      for (int b = 2; b < N; ++b) {
        if (gcd_int(b, N) != 1) continue;
        cands.push_back(from_coords_map(G, [b, N](const std::vector<int>& c) {
          return std::vector<int>{c[0], mod(static_cast<long long>(b) * c[1], N)};
        }, "v->" + std::to_string(b) + "v"));
      }
      break;
    case Family::Affine2: {
      const std::array<int, 4> A{0, N - 1, 1, N - 1};
      auto mm = [N](const std::array<int, 4>& x, const std::array<int, 4>& y) {
        return std::array<int, 4>{mod(1LL * x[0] * y[0] + 1LL * x[1] * y[2], N), mod(1LL * x[0] * y[1] + 1LL * x[1] * y[3], N),
                                  mod(1LL * x[2] * y[0] + 1LL * x[3] * y[2], N), mod(1LL * x[2] * y[1] + 1LL * x[3] * y[3], N)};
      };
      const auto A2 = mm(A, A);
      for (const auto& M : gl2_elements(N)) {
        int e = 1;
        if (s.order == 3) {
          auto MA = mm(M, A);
          if (MA == mm(A, M)) e = 1;
          else if (MA == mm(A2, M)) e = 2;
          else continue;
        }
        std::ostringstream nm;
        nm << "M=[" << M[0] << "," << M[1] << ";" << M[2] << "," << M[3] << "]";
        cands.push_back(from_coords_map(G, [M, e, N, o = s.order](const std::vector<int>& c) {
          return std::vector<int>{mod(static_cast<long long>(e) * c[0], o), mod(1LL * M[0] * c[1] + 1LL * M[1] * c[2], N),
                                  mod(1LL * M[2] * c[1] + 1LL * M[3] * c[2], N)};
        }, nm.str()));
      }
      break;
    }
    default: cands = generic_automorphisms(G, stabilizer); break;
  }

  std::vector<Automorphism> out;
  Automorphism id;
  id.name = "id";
  id.map.resize(G.size());
  std::iota(id.map.begin(), id.map.end(), 0);
  std::set<std::vector<Elem>> seen{coset_key(G, id)};
  out.push_back(id);
  for (auto& a : cands) {
    if (!preserves_multiset(G, a, ms)) continue;
    auto key = coset_key(G, a);
    if (seen.insert(key).second) out.push_back(std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------- extensions

std::shared_ptr<const CentralExtension> make_extension(const std::string& tag, GroupPtr G) {
  const auto& s = G->spec();
  auto ext = std::make_shared<CentralExtension>();
  ext->tag = tag;
  ext->G = G;
  if (tag == "heis2") {
    if (s.family != Family::Affine2 || s.order != 2) throw ConfigError("heis2 covers affine2(ell,k,2) only");
    if (s.ell == 2) throw ConfigError("heis2 lift needs ell != 2");
    ext->E = make_group(FamilySpec::heis2(s.ell, s.k));
  } else if (tag == "k22z3") {
    if (s.family != Family::Affine2 || s.order != 3) throw ConfigError("k22z3 covers affine2(ell,k,3) only");
    if (s.ell == 3) throw ConfigError("k22z3 lift needs ell != 3");
    ext->E = make_group(FamilySpec::k22z3(s.ell, s.k));
  } else {
    throw ConfigError("unknown extension tag: " + tag);
  }
  const Group& E = *ext->E;
  ext->kernel_order = s.modulus();
  ext->proj.resize(E.size());
  ext->fiber.assign(G->size(), {});
  ext->central.assign(E.size(), -1);
  for (Elem e = 0; e < E.size(); ++e) {
    const auto& c = E.coords(e);
    Elem g = G->find({c[0], c[1], c[2]});
    require(g >= 0, "projection outside base group");
    ext->proj[e] = g;
    ext->fiber[g].push_back(e);
    if (g == G->identity()) ext->central[e] = c[3];
  }
  // projection is a homomorphism on generators
  for (Elem e = 0; e < E.size(); ++e)
    for (Elem x : E.generators())
      require(ext->proj[E.mul(e, x)] == G->mul(ext->proj[e], ext->proj[x]), "projection is not a homomorphism");
  for (Elem e = 0; e < E.size(); ++e)
    if (ext->central[e] >= 0)
      for (Elem x : E.generators()) require(E.mul(e, x) == E.mul(x, e), "kernel is not central");
  return ext;
}

Elem central_lift(const CentralExtension& ext, Elem g) {
  const int o = ext.G->order(g);
  if (gcd_int(o, ext.kernel_order) != 1)
    throw ConfigError("element order " + std::to_string(o) + " not prime to the kernel order");
  Elem found = -1;
  for (Elem e : ext.fiber[g])
    if (ext.E->order(e) == o) {
      require(found < 0, "same-order lift is not unique");
      found = e;
    }
  require(found >= 0, "no same-order lift");
  return found;
}

// ---------------------------------------------------------------- GL2 orders

std::vector<std::array<int, 4>> gl2_elements(int N) {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d)
          if (gcd_int(mod(1LL * a * d - 1LL * b * c, N), N) == 1) out.push_back({a, b, c, d});
  return out;
}

GLOrders gl_orders(int N) {
  if (N < 2) throw ConfigError("gl_orders needs N >= 2");
  GLOrders r{1, 1, 1};
  int m = N;
  for (int p = 2; m > 1; ++p) {
    if (m % p) continue;
    int e = 0;
    std::uint64_t pe = 1;
    while (m % p == 0) { m /= p; ++e; pe *= p; }
    std::uint64_t P = p;
    // reduction mod p is onto with kernel of order p^{4(e-1)}
    std::uint64_t ker = 1;
    for (int i = 0; i < 4 * (e - 1); ++i) ker *= P;
    std::uint64_t glp = ker * (P * P - 1) * (P * P - P);
    std::uint64_t phi = pe / P * (P - 1);
    r.gl *= glp;
    r.sl *= glp / phi;
  }
  r.psl = N > 2 ? r.sl / 2 : r.sl;
  return r;
}

GLOrders gl_orders_brute(int N) {
  GLOrders r;
  int minus_one_in_sl = 0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          int det = mod(1LL * a * d - 1LL * b * c, N);
          if (gcd_int(det, N) != 1) continue;
          ++r.gl;
          if (det == 1 % N) {
            ++r.sl;
            if (b == 0 && c == 0 && a == d && mod(1LL * a * a, N) == 1 % N && (a == 1 % N || a == N - 1)) ++minus_one_in_sl;
          }
        }
  r.psl = r.sl / static_cast<std::uint64_t>(minus_one_in_sl);
  return r;
}

}  // namespace hurwitz
