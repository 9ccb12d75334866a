#include "hurwitz/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "hurwitz/errors.hpp"
#include "hurwitz/lift.hpp"
#include "hurwitz/reduced.hpp"

namespace hurwitz {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------- cache

std::string spec_hash(const NielsenSpec& spec) {
  const std::string s = spec.to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json orbits_to_json(const NielsenSpec& spec, const OrbitIndex& idx) {
  json orbits = json::array();
  for (const auto& o : idx.orbits) {
    json members = json::array();
    for (const auto& t : o.members) members.push_back(tuple_to_json(spec.G(), t));
    orbits.push_back(members);
  }
  return {{"spec_hash", spec_hash(spec)}, {"spec", spec.to_json()}, {"orbits", orbits}};
}

OrbitIndex orbits_from_json(const NielsenSpec& spec, const json& j) {
  if (!j.is_object() || j.value("spec_hash", "") != spec_hash(spec)) throw ConfigError("cache entry belongs to another spec");
  OrbitIndex idx;
  for (const auto& members : j.at("orbits")) {
    BraidOrbit o;
    for (const auto& tj : members) {
      Tuple t = tuple_from_json(spec.G(), tj);
      require(is_nielsen(spec, t) && canonical(spec, t) == t, "cached tuple is not a canonical Nielsen tuple");
      o.members.push_back(std::move(t));
    }
    require(!o.members.empty() && std::is_sorted(o.members.begin(), o.members.end()), "cached orbit is not sorted");
    o.seed = o.members.front();
    const int id = static_cast<int>(idx.orbits.size());
    for (const auto& m : o.members) require(idx.where.emplace(m, id).second, "cached orbits overlap");
    idx.orbits.push_back(std::move(o));
  }
  return idx;
}

namespace {

OrbitIndex load_orbits(const NielsenSpec& spec, const std::string& cache_dir, bool& hit) {
  hit = false;
  fs::path file;
  if (!cache_dir.empty()) {
    file = fs::path(cache_dir) / (spec_hash(spec) + ".json");
    if (fs::exists(file)) {
      std::ifstream in(file);
      json j = json::parse(in, nullptr, false);
      if (!j.is_discarded()) {
        hit = true;
        return orbits_from_json(spec, j);
      }
    }
  }
  OrbitIndex idx = all_orbits(spec);
  if (!cache_dir.empty()) {
    fs::create_directories(cache_dir);
    fs::path tmp = file;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << orbits_to_json(spec, idx).dump() << "\n";
    }
    fs::rename(tmp, file);
  }
  return idx;
}

// ---------------------------------------------------------------- report pieces

struct Ctx {
  NielsenSpec spec;
  OrbitIndex orbits;
  bool has_lift = false;
  LiftContext lift;
  std::string lift_error;
};

json cusp_json(const CuspOrbit& c, const Group& G) {
  return {{"label", c.label},
          {"width", c.width},
          {"middle_order", c.middle_order},
          {"q2_length", c.q2_length},
          {"f", c.f},
          {"u", c.u},
          {"v", c.v},
          {"prediction_ok", c.prediction_ok},
          {"hm", c.has_hm},
          {"di", c.has_di},
          {"rep", tuple_to_json(G, c.rep)}};
}

json lift_value_json(const LiftContext& ctx, int v) {
  json j;
  j["lift_residue"] = v;
  j["lift"] = ctx.modulus == 2 ? json(sign_of(v)) : json(v);
  j["obstructed"] = obstructed(v);
  return j;
}

std::vector<json> components(const Ctx& c, bool with_reduced, bool with_lift, const BCLData* bcl,
                             const std::vector<std::vector<int>>* abs_values) {
  const NielsenSpec& spec = c.spec;
  const Group& G = spec.G();
  if (abs_values) require(abs_values->size() == c.orbits.orbits.size(), "absolute orbit lists disagree");
  std::vector<json> out;
  for (std::size_t i = 0; i < c.orbits.orbits.size(); ++i) {
    const BraidOrbit& o = c.orbits.orbits[i];
    json j;
    j["size"] = o.size();
    j["seed"] = tuple_to_json(G, o.seed);
    j["hm"] = std::any_of(o.members.begin(), o.members.end(), [&](const Tuple& t) { return hm_detect(G, t); });
    j["di"] = std::any_of(o.members.begin(), o.members.end(), [&](const Tuple& t) { return di_detect(G, t); });
    if (with_reduced && spec.r() == 4) {
      const ReducedClass rc = reduce(spec, o);
      const GammaActions ga = gamma_actions(spec, rc);
      const auto cs = cusps(spec, rc, ga);
      const GenusReport g = reduced_genus(rc, ga, cs);
      const ModuliReport m = moduli_checks(spec, rc, ga);
      const WohlfahrtReport w = wohlfahrt(g.degree, cs);
      j["degree"] = g.degree;
      j["genus"] = g.genus;
      j["genus_oracle"] = g.genus_oracle;
      json cj = json::array();
      std::vector<int> widths;
      for (const auto& x : cs) {
        cj.push_back(cusp_json(x, G));
        widths.push_back(x.width);
      }
      std::sort(widths.rbegin(), widths.rend());
      j["widths"] = widths;
      j["cusps"] = cj;
      j["qorbit_sizes"] = rc.qorbit_size;
      j["moduli"] = {{"fine_inner", m.fine_inner}, {"fine_abs", m.fine_abs},       {"bfine", m.bfine},
                     {"reduced_fine", m.reduced_fine}, {"gamma0_fixed", m.fixed_g0}, {"gamma1_fixed", m.fixed_g1}};
      j["wohlfahrt"] = {{"N", w.N}, {"degree", w.degree}, {"psl", w.psl}, {"verdict", w.verdict}};
    }
    if (with_lift && c.has_lift) {
      if (spec.equivalence == Equivalence::Inner) {
        const int v = orbit_lift(c.lift, spec, o);
        j.update(lift_value_json(c.lift, v));
        if (bcl) j["moduli_degree"] = component_moduli_degree(*bcl, c.lift, v);
      } else if (abs_values) {
        j["lift_values"] = (*abs_values)[i];
      }
    }
    out.push_back(std::move(j));
  }
  std::stable_sort(out.begin(), out.end(), [](const json& a, const json& b) {
    const int da = a.value("degree", 0), db = b.value("degree", 0);
    if (da != db) return da > db;
    if (a["size"] != b["size"]) return a["size"].get<std::size_t>() > b["size"].get<std::size_t>();
    return a["seed"] < b["seed"];
  });
  return out;
}

json lattice_json(const Ctx& c, LiftAction* action_out) {
  const NielsenSpec& spec = c.spec;
  try {
    spec.with_equivalence(Equivalence::Absolute);
  } catch (const ConfigError& e) {
    return {{"error", e.what()}};
  }
  std::vector<Tuple> inner_classes;
  if (spec.equivalence == Equivalence::Inner) {
    for (const auto& o : c.orbits.orbits) inner_classes.insert(inner_classes.end(), o.members.begin(), o.members.end());
    std::sort(inner_classes.begin(), inner_classes.end());
  } else {
    inner_classes = enumerate(spec.with_equivalence(Equivalence::Inner));
  }
  const ComponentLattice L = component_lattice(spec, inner_classes);
  json abs = json::array();
  for (std::size_t a = 0; a < L.absolute.orbits.size(); ++a) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < L.inner.orbits.size(); ++i)
      if (L.inner_to_absolute[i] == static_cast<int>(a)) sizes.push_back(L.inner.orbits[i].size());
    abs.push_back({{"size", L.absolute.orbits[a].size()},
                   {"v", L.v[a]},
                   {"braidable_cosets", L.braidable_cosets[a]},
                   {"inner_sizes", sizes}});
  }
  json j = {{"normalizer_cosets", L.normalizer_cosets},
            {"inner_orbits", L.inner.orbits.size()},
            {"absolute_orbits", L.absolute.orbits.size()},
            {"absolute", abs}};
  if (c.has_lift) {
    LiftAction act = normalizer_action_on_lift(spec, c.lift, L);
    j["lift_values_over"] = act.values_over;
    j["schur_separated"] = act.schur_separated;
    std::set<int> sc(act.scalars.begin(), act.scalars.end());
    j["normalizer_scalars"] = std::vector<int>(sc.begin(), sc.end());
    if (action_out) *action_out = std::move(act);
  }
  return j;
}

json bcl_json(const BCLData& b) {
  return {{"N_C", b.N_C},         {"M_inn", b.M_inn},     {"M_abs", b.M_abs},           {"abs_available", b.abs_available},
          {"rational_union", b.rational_union}, {"inner_degree", b.inner_degree}, {"abs_degree", b.abs_degree}};
}

json class_table(const NielsenSpec& spec) {
  const Group& G = spec.G();
  json t = json::array();
  std::set<std::string> seen;
  for (const auto& l : spec.labels) {
    if (!seen.insert(l).second) continue;
    const auto& c = G.classes()[G.class_index(l)];
    t.push_back({{"label", l},
                 {"size", c.members.size()},
                 {"order", c.order},
                 {"multiplicity", std::count(spec.labels.begin(), spec.labels.end(), l)}});
  }
  return t;
}

json cover_genus_json(const NielsenSpec& spec) {
  json j;
  try {
    j["T"] = cover_genus(spec, false);
  } catch (const ConsistencyError& e) {
    j["T_error"] = e.what();
  }
  j["galois"] = cover_genus(spec, true);
  return j;
}

json tower_json(const Ctx& c) {
  if (c.spec.equivalence != Equivalence::Inner) throw ConfigError("tower runs on inner specs");
  const TowerResult tr = tower_lift(c.spec, c.orbits);
  json levels = json::array();
  for (std::size_t i = 0; i < c.orbits.orbits.size(); ++i) {
    json row;
    row["size"] = c.orbits.orbits[i].size();
    row["seed"] = tuple_to_json(c.spec.G(), c.orbits.orbits[i].seed);
    if (!tr.lower_values.empty()) row["lift_residue"] = tr.lower_values[i];
    if (!tr.lower_values.empty()) row["obstructed"] = obstructed(tr.lower_values[i]);
    json above = json::array();
    for (int j : tr.above[i]) {
      json a = {{"size", tr.upper_orbits.orbits[j].size()}};
      if (!tr.upper_values.empty()) a["lift_residue"] = tr.upper_values[j];
      above.push_back(a);
    }
    row["above"] = above;
    row["level_lift_empty"] = tr.above[i].empty();
    if (!tr.cover_preimage.empty()) row["cover_preimage"] = tr.cover_preimage[i];
    levels.push_back(row);
  }
  return {{"upper", tr.upper.to_json()}, {"upper_orbits", tr.upper_orbits.orbits.size()}, {"levels", levels}};
}

const std::set<std::string>& known_commands() {
  static const std::set<std::string> s{"enumerate", "orbits", "cusps", "genus", "shmatrix", "lift", "tower", "report"};
  return s;
}

json build(Ctx& c, const std::string& cmd) {
  const NielsenSpec& spec = c.spec;
  json r;
  r["command"] = cmd;
  r["spec"] = spec.to_json();
  r["group_order"] = spec.G().size();
  if (cmd == "enumerate") {
    r["classes"] = class_table(spec);
    r["orderings"] = orderings(spec).size();
    r["raw_tuples"] = raw_count(spec);
    std::size_t n = 0;
    for (const auto& o : c.orbits.orbits) n += o.size();
    r["nielsen_classes"] = n;
    return r;
  }
  if (cmd == "orbits") {
    json orbs = json::array();
    for (const auto& o : c.orbits.orbits) orbs.push_back({{"size", o.size()}, {"seed", tuple_to_json(spec.G(), o.seed)}});
    r["orbit_count"] = c.orbits.orbits.size();
    r["orbits"] = orbs;
    r["lattice"] = lattice_json(c, nullptr);
    return r;
  }
  const bool reduced_cmd = cmd == "cusps" || cmd == "genus" || cmd == "shmatrix";
  if (reduced_cmd && spec.r() != 4) throw ConfigError(cmd + " needs r = 4");
  if (cmd == "cusps" || cmd == "genus") {
    r["components"] = components(c, true, false, nullptr, nullptr);
    if (cmd == "genus") r["cover_genus"] = cover_genus_json(spec);
    return r;
  }
  if (cmd == "shmatrix") {
    json comps = json::array();
    for (const auto& o : c.orbits.orbits) {
      const ReducedClass rc = reduce(spec, o);
      const GammaActions ga = gamma_actions(spec, rc);
      const auto cs = cusps(spec, rc, ga);
      const ShIncidence M = sh_incidence(ga, cs);
      comps.push_back({{"degree", rc.reps.size()}, {"labels", M.labels}, {"matrix", M.m}});
    }
    r["components"] = comps;
    return r;
  }
  if (cmd == "lift") {
    if (!c.has_lift) throw ConfigError(c.lift_error);
    const BCLData b = bcl_data(spec);
    LiftAction act;
    json lat = lattice_json(c, &act);
    std::vector<std::vector<int>> abs_values;
    if (spec.equivalence == Equivalence::Absolute && !lat.contains("error")) {
      // absolute orbits in c.orbits are the same list the lattice computed
      abs_values = act.values_over;
    }
    r["cover"] = c.lift.cover;
    r["modulus"] = c.lift.modulus;
    r["components"] = components(c, false, true, &b, abs_values.empty() ? nullptr : &abs_values);
    r["bcl"] = bcl_json(b);
    r["lattice"] = lat;
    return r;
  }
  if (cmd == "tower") {
    r.update(tower_json(c));
    return r;
  }
  // report
  std::size_t n = 0;
  for (const auto& o : c.orbits.orbits) n += o.size();
  r["classes"] = class_table(spec);
  r["nielsen_classes"] = n;
  r["orbit_count"] = c.orbits.orbits.size();
  r["cover_genus"] = cover_genus_json(spec);
  const BCLData b = bcl_data(spec);
  r["bcl"] = bcl_json(b);
  LiftAction act;
  json lat = lattice_json(c, &act);
  std::vector<std::vector<int>> abs_values;
  if (c.has_lift && spec.equivalence == Equivalence::Absolute && !lat.contains("error")) abs_values = act.values_over;
  r["lattice"] = lat;
  if (c.has_lift) {
    r["cover"] = c.lift.cover;
    r["modulus"] = c.lift.modulus;
  } else {
    r["lift_error"] = c.lift_error;
  }
  r["components"] = components(c, spec.r() == 4, true, c.has_lift ? &b : nullptr, abs_values.empty() ? nullptr : &abs_values);
  return r;
}

// ---------------------------------------------------------------- rendering

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && !v.empty() && v[0].is_object() && v[0].contains("label")) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x["label"].get<std::string>();
    return s;
  }
  if (v.is_array() && !v.empty() && v[0].is_object()) return std::to_string(v.size());
  return v.dump();
}

std::string table(const json& rows, char sep) {
  if (!rows.is_array() || rows.empty()) return "";
  std::vector<std::string> cols;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
    if (!it->is_object()) cols.push_back(it.key());
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? std::string(1, sep) : "") << cols[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? std::string(1, sep) : "") << (row.contains(cols[i]) ? cell(row[cols[i]]) : "");
    os << "\n";
  }
  return os.str();
}

std::string main_table_key(const std::string& command) {
  if (command == "enumerate") return "classes";
  if (command == "orbits") return "orbits";
  if (command == "tower") return "levels";
  return "components";
}

std::string sh_tsv(const json& report) {
  std::ostringstream os;
  int k = 0;
  for (const auto& c : report["components"]) {
    os << "# component " << k++ << " degree " << c["degree"].get<int>() << "\n";
    os << "cusp";
    for (const auto& l : c["labels"]) os << "\t" << l.get<std::string>();
    os << "\n";
    for (std::size_t i = 0; i < c["labels"].size(); ++i) {
      os << c["labels"][i].get<std::string>();
      for (const auto& x : c["matrix"][i]) os << "\t" << x.get<int>();
      os << "\n";
    }
  }
  return os.str();
}

std::string sh_dot(const json& report) {
  std::ostringstream os;
  os << "graph sh {\n";
  int k = 0;
  for (const auto& c : report["components"]) {
    os << "  subgraph cluster_" << k << " {\n    label=\"degree " << c["degree"].get<int>() << "\";\n";
    const auto& L = c["labels"];
    for (std::size_t i = 0; i < L.size(); ++i) os << "    \"" << k << ":" << L[i].get<std::string>() << "\";\n";
    for (std::size_t i = 0; i < L.size(); ++i)
      for (std::size_t j = i; j < L.size(); ++j) {
        const int w = c["matrix"][i][j];
        if (w == 0) continue;
        os << "    \"" << k << ":" << L[i].get<std::string>() << "\" -- \"" << k << ":" << L[j].get<std::string>()
           << "\" [weight=" << w << ", label=" << w << "];\n";
      }
    os << "  }\n";
    ++k;
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string render(const json& report, const std::string& command, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "dot") {
    if (command != "shmatrix") throw ConfigError("dot output is only for shmatrix");
    return sh_dot(report);
  }
  if (format == "tsv") return command == "shmatrix" ? sh_tsv(report) : table(report[main_table_key(command)], '\t');
  if (format == "text") {
    std::ostringstream os;
    for (auto it = report.begin(); it != report.end(); ++it)
      if (it->is_primitive()) os << it.key() << ": " << cell(*it) << "\n";
    os << (command == "shmatrix" ? sh_tsv(report) : table(report[main_table_key(command)], ' '));
    return os.str();
  }
  throw ConfigError("unknown format \"" + format + "\"");
}

void apply_env(RunConfig& cfg) {
  if (cfg.budget == 0) {
    if (const char* b = std::getenv("HURWITZ_BUDGET")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(b, &end, 10);
      if (end == b || *end != '\0' || v == 0) throw ConfigError("HURWITZ_BUDGET must be a positive integer");
      cfg.budget = v;
    }
  }
  if (cfg.cache_dir.empty())
    if (const char* c = std::getenv("HURWITZ_CACHE")) cfg.cache_dir = c;
}

RunResult run(const RunConfig& cfg) {
  RunResult res;
  try {
    if (!known_commands().count(cfg.command)) throw ConfigError("unknown command \"" + cfg.command + "\"");
    if (cfg.jobs < 0) throw ConfigError("jobs must be positive");
    static const std::set<std::string> formats{"json", "tsv", "dot", "text"};
    if (!formats.count(cfg.format)) throw ConfigError("unknown format \"" + cfg.format + "\"");
    Ctx c;
    c.spec = NielsenSpec::from_json(cfg.spec);
    if (cfg.budget) c.spec.budget = cfg.budget;
    if (cfg.jobs) c.spec.jobs = cfg.jobs;
    try {
      c.lift = lift_context(c.spec);
      c.has_lift = true;
    } catch (const ConfigError& e) {
      c.lift_error = e.what();
    }
    c.orbits = load_orbits(c.spec, cfg.cache_dir, res.cache_hit);
    res.report = build(c, cfg.command);
    res.text = render(res.report, cfg.command, cfg.format);
    if (!cfg.out_dir.empty()) {
      fs::create_directories(cfg.out_dir);
      // JSON always, plus the requested rendering
      auto write = [&](const std::string& ext, const std::string& body) {
        std::ofstream out(fs::path(cfg.out_dir) / (cfg.command + "." + ext));
        out << body;
        if (!out) throw ConfigError("cannot write to " + cfg.out_dir);
      };
      write("json", cfg.format == "json" ? res.text : res.report.dump(2) + "\n");
      if (cfg.format != "json") write(cfg.format == "text" ? "txt" : cfg.format, res.text);
    }
  } catch (const ConfigError& e) {
    res.exit_code = kExitConfig;
    res.error = e.what();
  } catch (const nlohmann::json::exception& e) {
    res.exit_code = kExitConfig;
    res.error = e.what();
  } catch (const BudgetError& e) {
    res.exit_code = kExitBudget;
    res.error = e.what();
  } catch (const ConsistencyError& e) {
    res.exit_code = kExitInconsistent;
    res.error = std::string("internal inconsistency: ") + e.what();
  } catch (const fs::filesystem_error& e) {
    res.exit_code = kExitConfig;
    res.error = e.what();
  }
  return res;
}

}  // namespace hurwitz
