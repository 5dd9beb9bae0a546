#include "kwall/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <set>

#include "kwall/errors.hpp"

#ifndef KWALL_CATALOG_DIR
#define KWALL_CATALOG_DIR "catalog"
#endif

namespace kwall {

namespace {

std::optional<AffineRatFn> affine_or_derived(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "derived") return std::nullopt;
  return AffineRatFn{rational_from_json(field(j, "const", where), where + "/const"),
                     rational_from_json(field(j, "slope", where), where + "/slope")};
}

void check_provenance(const std::string& s, const std::string& where) {
  if (s == kDerivedByOracle) return;
  if (s.rfind("published: ", 0) == 0 && s.size() > 11) return;
  throw InputError(where + ": provenance must be a citation (\"published: ...\") or " + kDerivedByOracle);
}

template <class F>
auto as_input_error(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const EngineError& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace

std::string family_of(const std::string& id) { return id.substr(0, id.find('/')); }

std::string Catalog::default_path() {
  const char* env = std::getenv("KWALL_CATALOG");
  return env && *env ? std::string(env) : std::string(KWALL_CATALOG_DIR);
}

std::shared_ptr<const Catalog> Catalog::open(const std::string& dir) {
  auto c = std::shared_ptr<Catalog>(new Catalog());
  c->dir_ = dir;
  json man = read_json_file(dir + "/manifest.json");
  const json& surfs = field(man, "surfaces", "manifest");
  for (auto it = surfs.begin(); it != surfs.end(); ++it) {
    std::string file = it.value().get<std::string>();
    auto s = surface_from_json(read_json_file(dir + "/" + file), it.key(), file);
    SurfaceReport rep = validate_surface(*s);
    if (!rep.ok())
      throw InputError(file + ": " + (rep.lattice.ok() ? rep.problems.front() : rep.lattice.failure));
    c->surfaces_[it.key()] = s;
  }
  for (const auto& f : field(man, "fixtures", "manifest")) {
    std::string file = f.get<std::string>();
    json doc = read_json_file(dir + "/" + file);
    const json& list = field(doc, "fixtures", file);
    for (size_t i = 0; i < list.size(); ++i) {
      std::string id = string_field(list[i], "id", file + "/fixtures/" + std::to_string(i));
      if (!c->fixtures_.emplace(id, list[i]).second) throw InputError(file + ": duplicate fixture id " + id);
    }
  }
  if (man.contains("polystability"))
    for (const auto& f : man["polystability"]) {
      std::string file = f.get<std::string>();
      json doc = read_json_file(dir + "/" + file);
      c->poly_[string_field(doc, "id", file)] = doc;
    }
  c->walls_ = read_json_file(dir + "/" + string_field(man, "walls", "manifest"));
  return c;
}

std::shared_ptr<const Catalog> Catalog::open_default() {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Catalog>> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::string p = default_path();
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  return cache[p] = open(p);
}

std::vector<std::string> Catalog::surface_names() const {
  std::vector<std::string> r;
  for (const auto& [k, v] : surfaces_) r.push_back(k);
  return r;
}

SurfacePtr Catalog::surface(const std::string& name) const {
  auto it = surfaces_.find(name);
  if (it == surfaces_.end()) {
    std::string avail;
    for (const auto& [k, v] : surfaces_) avail += (avail.empty() ? "" : ", ") + k;
    throw InputError("unknown surface '" + name + "'; available: " + avail);
  }
  return it->second;
}

std::vector<std::string> Catalog::enumerate_fixtures(const std::optional<std::string>& family) const {
  std::vector<std::string> r;
  for (const auto& [id, j] : fixtures_)
    if (!family || family_of(id) == *family) r.push_back(id);
  return r;
}

SurfacePtr Catalog::resolve_surface(const json& j, const std::string& where) const {
  const json& s = field(j, "surface", where);
  if (s.is_string()) return surface(s.get<std::string>());
  auto m = surface_from_json(s, "inline", where + "/surface");
  SurfaceReport rep = validate_surface(*m);
  if (!rep.ok())
    throw InputError(where + "/surface: " + (rep.lattice.ok() ? rep.problems.front() : rep.lattice.failure));
  return m;
}

LogPair Catalog::pair_from_json(SurfacePtr s, const json& boundary, const std::string& where) const {
  LogPair p;
  p.surface = s;
  p.name = boundary.contains("name") && boundary["name"].is_string() ? boundary["name"].get<std::string>() : "";
  const json& comps = field(boundary, "components", where);
  if (!comps.is_array()) throw InputError(where + "/components: expected an array");
  for (size_t i = 0; i < comps.size(); ++i) {
    std::string w = where + "/components/" + std::to_string(i);
    Vec c = vec_from_json(field(comps[i], "class", w), w + "/class");
    if (c.size() != s->lattice()->rank()) throw InputError(w + "/class: wrong number of coordinates");
    p.boundary.push_back({string_field(comps[i], "name", w), DivClass(s->lattice(), std::move(c)),
                          rational_from_json(field(comps[i], "mult", w), w + "/mult")});
  }
  as_input_error(where, [&] {
    validate_pair(p);
    return 0;
  });
  return p;
}

ValuationSpec Catalog::valuation_from_json(const LogPair& p, const json& v, const std::string& where) const {
  const SurfaceModel& m = *p.surface;
  std::string kind = string_field(v, "kind", where);
  std::string name = string_field(v, "name", where);
  Tag tag = v.contains("tag") ? tag_from_string(v["tag"].get<std::string>()) : Tag::plain;
  ValuationSpec spec = as_input_error(where, [&] {
    if (kind == "curve") {
      std::optional<DivClass> cls;
      std::string curve = name;
      if (v.contains("curve")) {
        curve = v["curve"].get<std::string>();
        if (!m.find(curve)) throw InputError(where + "/curve: no curve named " + curve + " on " + m.name());
      } else {
        Vec c = vec_from_json(field(v, "class", where), where + "/class");
        if (c.size() != m.lattice()->rank()) throw InputError(where + "/class: wrong number of coordinates");
        cls = DivClass(m.lattice(), std::move(c));
      }
      ValuationSpec r = curve_valuation(p, curve, cls, tag);
      r.name = name;
      return r;
    }
    if (kind == "blowup") {
      const json& w = field(v, "weights", where);
      if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer())
        throw InputError(where + "/weights: expected two integers");
      BlowupCenter c;
      c.a = w[0].get<long>();
      c.b = w[1].get<long>();
      c.e_name = name;
      std::set<std::string> known;
      for (const auto& g : m.mori()) known.insert(g.name);
      for (const auto& b : p.boundary) known.insert(b.name);
      if (v.contains("extra"))
        for (size_t i = 0; i < v["extra"].size(); ++i) {
          const json& x = v["extra"][i];
          std::string xw = where + "/extra/" + std::to_string(i);
          Vec cc = vec_from_json(field(x, "class", xw), xw + "/class");
          if (cc.size() != m.lattice()->rank()) throw InputError(xw + "/class: wrong number of coordinates");
          c.extra.push_back({string_field(x, "name", xw), DivClass(m.lattice(), std::move(cc)),
                             rational_from_json(field(x, "ord", xw), xw + "/ord")});
          known.insert(c.extra.back().name);
        }
      const json& ord = field(v, "ord", where);
      for (auto it = ord.begin(); it != ord.end(); ++it) {
        if (!known.count(it.key()))
          throw InputError(where + "/ord/" + it.key() + ": not a curve, extra curve or boundary component");
        c.ord[it.key()] = rational_from_json(it.value(), where + "/ord/" + it.key());
      }
      return blowup_valuation(p, name, c, tag);
    }
    throw InputError(where + "/kind: expected \"curve\" or \"blowup\"");
  });
  if (v.contains("a_x")) {
    Rational a = rational_from_json(v["a_x"], where + "/a_x");
    if (a != spec.a_x)
      throw InputError(where + "/a_x: declared " + a.str() + ", derived " + spec.a_x.str());
  }
  if (v.contains("ord_b")) {
    Rational o = rational_from_json(v["ord_b"], where + "/ord_b");
    if (o != spec.ord_b)
      throw InputError(where + "/ord_b: declared " + o.str() + ", derived " + spec.ord_b.str());
  }
  return spec;
}

Fixture Catalog::load_fixture(const std::string& id) const {
  auto it = fixtures_.find(id);
  if (it == fixtures_.end()) {
    std::string avail;
    for (const auto& [k, v] : fixtures_) avail += "\n  " + k;
    throw InputError("unknown fixture '" + id + "'; available:" + avail);
  }
  const json& j = it->second;
  std::string where = id;
  SurfacePtr s = resolve_surface(j, where);
  LogPair p = pair_from_json(s, field(j, "boundary", where), where + "/boundary");
  ValuationSpec v = valuation_from_json(p, field(j, "valuation", where), where + "/valuation");
  Fixture f{id, family_of(id), j.value("description", ""), std::move(p), std::move(v), {}, {}, {}, {}, {}, {}};

  const json& ex = field(j, "expected", where);
  std::string ew = where + "/expected";
  f.expected_A = affine_or_derived(field(ex, "A", ew), ew + "/A");
  f.expected_S = affine_or_derived(field(ex, "S", ew), ew + "/S");
  f.expected_beta = affine_or_derived(field(ex, "beta", ew), ew + "/beta");
  const json& w = field(ex, "wall", ew);
  if (!w.is_null()) {
    f.expected_wall = rational_from_json(w, ew + "/wall");
    if (!(f.expected_wall->sign() > 0 && *f.expected_wall < Rational(1, 2)))
      throw InputError(ew + "/wall: " + f.expected_wall->str() + " is outside (0, 1/2)");
  }
  if (ex.contains("profile")) {
    std::vector<QuadraticPiece> pieces;
    for (size_t i = 0; i < ex["profile"].size(); ++i) {
      const json& pj = ex["profile"][i];
      std::string pw = ew + "/profile/" + std::to_string(i);
      auto r = [&](const char* k) { return rational_from_json(field(pj, k, pw), pw + "/" + k); };
      pieces.push_back({r("t_lo"), r("t_hi"), r("q0"), r("q1"), r("q2"), {}});
    }
    f.expected_profile = pieces;
  }
  const json& prov = field(j, "provenance", where);
  for (auto pit = prov.begin(); pit != prov.end(); ++pit) {
    check_provenance(pit.value().get<std::string>(), where + "/provenance/" + pit.key());
    f.provenance[pit.key()] = pit.value().get<std::string>();
  }
  for (const char* k : {"A", "S", "beta", "wall"})
    if (!f.provenance.count(k)) throw InputError(where + "/provenance/" + k + ": missing");
  if (f.expected_profile && !f.provenance.count("profile"))
    throw InputError(where + "/provenance/profile: missing");
  return f;
}

WallTable Catalog::expected_wall_list() const {
  WallTable t;
  const json& ws = field(walls_, "walls", "walls.json");
  for (size_t i = 0; i < ws.size(); ++i) {
    std::string w = "walls.json/walls/" + std::to_string(i);
    t.walls.push_back({rational_from_json(field(ws[i], "wall", w), w + "/wall"),
                       field(ws[i], "divisorial", w).get<bool>(), ws[i].value("description", "")});
  }
  std::sort(t.walls.begin(), t.walls.end(), [](const WallEntry& a, const WallEntry& b) { return a.wall < b.wall; });
  return t;
}

std::vector<std::string> Catalog::polystability_ids() const {
  std::vector<std::string> r;
  for (const auto& [k, v] : poly_) r.push_back(k);
  return r;
}

PolystabilitySet Catalog::load_polystability(const std::string& id) const {
  auto it = poly_.find(id);
  if (it == poly_.end()) throw InputError("unknown polystability set '" + id + "'");
  const json& j = it->second;
  PolystabilitySet ps;
  ps.id = id;
  ps.description = j.value("description", "");
  SurfacePtr s = resolve_surface(j, id);
  ps.pair = pair_from_json(s, field(j, "boundary", id), id + "/boundary");
  ps.wall = rational_from_json(field(j, "wall", id), id + "/wall");
  const json& vs = field(j, "valuations", id);
  for (size_t i = 0; i < vs.size(); ++i)
    ps.valuations.push_back(valuation_from_json(ps.pair, vs[i], id + "/valuations/" + std::to_string(i)));
  return ps;
}

Fixture load_fixture(const std::string& id) { return Catalog::open_default()->load_fixture(id); }
WallTable expected_wall_list() { return Catalog::open_default()->expected_wall_list(); }
std::vector<std::string> enumerate_fixtures(const std::optional<std::string>& family) {
  return Catalog::open_default()->enumerate_fixtures(family);
}

}  // namespace kwall
