#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "kwall/catalog.hpp"
#include "kwall/errors.hpp"

using namespace kwall;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;
constexpr int kExitDiff = 4;

struct Options {
  bool json_out = false;
  std::string catalog;
};

std::shared_ptr<const Catalog> catalog(const Options& o) {
  return o.catalog.empty() ? Catalog::open_default() : Catalog::open(o.catalog);
}

std::string dec(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r.to_double());
  return buf;
}

// FNV-1a over the canonical dump of the inputs
std::string digest(const json& inputs) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : inputs.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- class expressions: "-K-3/2 L12", "2H - E1 - (1/2)E2", "[1,0,0]"

DivClass parse_class(const SurfaceModel& m, const std::string& text) {
  const LatticePtr& l = m.lattice();
  std::string s = text;
  if (!s.empty() && s.find_first_not_of(" ") != std::string::npos && s[s.find_first_not_of(" ")] == '[') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::parse_error&) {
      throw InputError("class '" + text + "': malformed coordinate array");
    }
    Vec v = vec_from_json(j, "class");
    if (v.size() != l->rank()) throw InputError("class '" + text + "': expected " + std::to_string(l->rank()) + " coordinates");
    return DivClass(l, std::move(v));
  }
  std::map<std::string, DivClass> sym;
  for (size_t i = 0; i < l->rank(); ++i) sym.emplace(l->basis_names()[i], DivClass::basis(l, i));
  for (const auto& g : m.mori()) sym.emplace(g.name, g.cls);
  sym.emplace("K", m.canonical());
  sym.emplace("KX", m.pullback_canonical());

  DivClass r = DivClass::zero(l);
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  bool first = true;
  while (true) {
    skip();
    if (i == s.size()) break;
    Rational sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (!first) {
      throw InputError("class '" + text + "': expected + or - at position " + std::to_string(i));
    }
    first = false;
    Rational coef = 1;
    bool paren = i < s.size() && s[i] == '(';
    if (paren || (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))) {
      size_t j = i + paren;
      size_t k = j;
      while (k < s.size() && (std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '/' || (paren && s[k] == '-'))) ++k;
      auto c = Rational::try_parse(s.substr(j, k - j));
      if (!c) throw InputError("class '" + text + "': malformed coefficient at position " + std::to_string(i));
      coef = *c;
      if (paren) {
        if (k >= s.size() || s[k] != ')') throw InputError("class '" + text + "': missing ')'");
        ++k;
      }
      i = k;
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip();
      }
    }
    std::string best;
    for (const auto& [name, d] : sym)
      if (s.compare(i, name.size(), name) == 0 && name.size() > best.size()) best = name;
    if (best.empty()) throw InputError("class '" + text + "': unknown symbol at '" + s.substr(i) + "'");
    r += (sign * coef) * sym.at(best);
    i += best.size();
  }
  if (first) throw InputError("empty class expression");
  return r;
}

std::string class_expr(const SurfaceModel& m, const DivClass& d) {
  std::string s;
  const auto& names = m.lattice()->basis_names();
  for (size_t i = 0; i < names.size(); ++i) {
    const Rational& c = d[i];
    if (c.is_zero()) continue;
    std::string mag = c.abs() == Rational(1) ? "" : (c.is_integer() ? c.abs().str() : "(" + c.abs().str() + ")");
    if (s.empty()) s = (c.sign() < 0 ? "-" : "") + mag + names[i];
    else s += (c.sign() < 0 ? " - " : " + ") + mag + names[i];
  }
  return s.empty() ? "0" : s;
}

SurfacePtr resolve_surface_arg(const Catalog& cat, const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    json j = read_json_file(arg);
    auto m = surface_from_json(j, std::filesystem::path(arg).stem().string(), arg);
    return m;
  }
  return cat.surface(arg);
}

std::string s_str(const AffineRatFn& s) {
  if (s.c1.is_zero()) return s.c0.str();
  return s.c0.str() + " (1-2c)";
}

std::string quad_str(const QuadraticPiece& p) {
  std::string s = p.q0.str();
  auto term = [&](const Rational& q, const char* t) {
    if (q.is_zero()) return;
    s += (q.sign() < 0 ? " - " : " + ") + (q.abs() == Rational(1) ? std::string() : q.abs().str() + " ") + t;
  };
  term(p.q1, "t");
  term(p.q2, "t^2");
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// ---- commands

struct Report {
  json j;
  std::string md;
  int status = 0;
};

Report cmd_surface_show(const Options& o, const std::string& target) {
  auto cat = catalog(o);
  SurfacePtr m = resolve_surface_arg(*cat, target);
  SurfaceReport rep = validate_surface(*m);
  Report r;
  json& j = r.j;
  j["command"] = "surface show " + target;
  j["surface"] = m->name();
  j["inputs_digest"] = digest(surface_to_json(*m));
  j["model"] = surface_to_json(*m);
  j["degree"] = m->degree().str();
  json gens = json::array();
  for (const auto& g : m->mori())
    gens.push_back({{"name", g.name},
                    {"self_intersection", pair(g.cls, g.cls).str()},
                    {"K_dot", pair(m->canonical(), g.cls).str()},
                    {"contracted", m->is_contracted(g.name)}});
  j["curves"] = gens;
  j["validation"] = {{"ok", rep.ok()},
                     {"symmetric", rep.lattice.symmetric},
                     {"signature", {rep.lattice.positive, rep.lattice.negative, rep.lattice.zero}},
                     {"problems", rep.problems}};
  if (!rep.lattice.failure.empty()) j["validation"]["problems"].push_back(rep.lattice.failure);

  std::ostringstream md;
  md << "# surface " << m->name() << "\n\n";
  if (!m->description().empty()) md << m->description() << "\n\n";
  md << "basis: " << join(m->lattice()->basis_names()) << "\n\n";
  md << "K = " << class_expr(*m, m->canonical()) << "\n\n";
  md << "(-K_X)^2 = " << m->degree().str() << "\n\n";
  md << "| curve | class | C^2 | K.C | contracted |\n|---|---|---|---|---|\n";
  for (const auto& g : m->mori())
    md << "| " << g.name << " | " << class_expr(*m, g.cls) << " | " << pair(g.cls, g.cls).str() << " | "
       << pair(m->canonical(), g.cls).str() << " | "
       << (m->is_contracted(g.name) ? "a = " + m->k_discrepancy(g.name).str() : "") << " |\n";
  md << "\nvalidation: " << (rep.ok() ? "ok" : "FAILED") << "\n";
  for (const auto& p : j["validation"]["problems"]) md << "- " << p.get<std::string>() << "\n";
  r.md = md.str();
  return r;
}

json profile_json(const VolumeProfile& p) { return profile_to_json(p); }

std::string profile_md(const VolumeProfile& p) {
  std::ostringstream md;
  md << "| t range | vol | support |\n|---|---|---|\n";
  for (const auto& c : p.pieces)
    md << "| [" << c.t_lo.str() << ", " << c.t_hi.str() << "] | " << quad_str(c) << " | " << join(c.support) << " |\n";
  md << "\ntau = " << p.tau.str() << "\n";
  return md.str();
}

Report cmd_zariski(const Options& o, const std::string& target, const std::string& cls, const std::string& ray) {
  auto cat = catalog(o);
  SurfacePtr m = resolve_surface_arg(*cat, target);
  DivClass d = parse_class(*m, cls);
  Report r;
  json& j = r.j;
  j["command"] = "zariski " + target + " " + cls + (ray.empty() ? "" : " --ray " + ray);
  j["inputs_digest"] = digest({surface_to_json(*m), cls, ray});
  j["surface"] = m->name();
  j["class"] = to_json(d.coords());
  std::ostringstream md;
  if (ray.empty()) {
    ZariskiResult z = zariski_decompose(*m, d);
    j["P"] = to_json(z.positive.coords());
    json neg = json::array();
    for (const auto& [n, a] : z.negative) neg.push_back({{"curve", n}, {"coefficient", a.str()}});
    j["N"] = neg;
    j["P_squared"] = pair(z.positive, z.positive).str();
    md << "# Zariski decomposition on " << m->name() << "\n\n";
    md << "D = " << class_expr(*m, d) << "\n\n";
    md << "P = " << class_expr(*m, z.positive) << "\n\n";
    std::string n;
    for (const auto& [c, a] : z.negative) n += (n.empty() ? "" : " + ") + (a == Rational(1) ? "" : "(" + a.str() + ")") + c;
    md << "N = " << (n.empty() ? "0" : n) << "\n\n";
    md << "vol(D) = P^2 = " << pair(z.positive, z.positive).str() << "\n";
  } else {
    DivClass dir = parse_class(*m, ray);
    VolumeProfile p = volume_profile(*m, d, dir);
    j["ray"] = to_json(dir.coords());
    j["profile"] = profile_json(p);
    j["integral"] = integrate_profile(p).str();
    md << "# volume profile on " << m->name() << ": vol(D - t R)\n\n";
    md << "D = " << class_expr(*m, d) << ", R = " << class_expr(*m, dir) << "\n\n";
    md << profile_md(p);
    md << "\nintegral = " << integrate_profile(p).str() << "\n";
  }
  r.md = md.str();
  return r;
}

Report cmd_profile(const Options& o, const std::string& target, const std::string& ray, const std::string& origin) {
  auto cat = catalog(o);
  auto ids = cat->enumerate_fixtures();
  if (std::find(ids.begin(), ids.end(), target) != ids.end()) {
    Fixture f = cat->load_fixture(target);
    SData sd = s_data(f.pair, f.valuation);
    Report r;
    r.j["command"] = "profile " + target;
    r.j["fixture"] = target;
    r.j["valuation"] = f.valuation.name;
    r.j["profile"] = profile_json(sd.profile);
    r.j["integral"] = integrate_profile(sd.profile).str();
    r.j["degree"] = f.pair.surface->degree().str();
    r.j["s"] = sd.s.str();
    r.j["inputs_digest"] = digest({target, r.j["profile"]});
    std::ostringstream md;
    md << "# volume profile: " << target << "\n\nvaluation " << f.valuation.name << "\n\n" << profile_md(sd.profile);
    md << "\nintegral = " << integrate_profile(sd.profile).str() << ", S = " << sd.s.str() << " (1-2c)\n";
    r.md = md.str();
    return r;
  }
  if (ray.empty()) throw InputError(target + " is not a fixture id; give a surface with --ray");
  return cmd_zariski(o, target, origin, ray);
}

struct BetaRow {
  std::string id;
  AffineRatFn A, S, beta;
  WallSolution wall;
  std::string error;
};

json wall_json(const WallSolution& w) { return w.kind == WallSolution::root ? json(w.value.str()) : json(nullptr); }

std::string wall_text(const WallSolution& w) {
  switch (w.kind) {
    case WallSolution::root: return w.value.str() + " (" + dec(w.value) + ")";
    case WallSolution::identically_zero: return "identically zero";
    default: return "none in (0, 1/2)";
  }
}

json verdict_json(const std::string& id, const LogPair& p, const ValuationSpec& v, WallSolution* out = nullptr) {
  AffineRatFn a = log_discrepancy(p, v), s = s_invariant(p, v), b = a - s;
  WallSolution w = solve_wall(b, p.c_lo, p.c_hi);
  if (out) *out = w;
  json j = {{"fixture", id}, {"A", a.str()}, {"S", s_str(s)}, {"beta", b.to_json()}, {"wall", wall_json(w)}};
  if (w.kind == WallSolution::identically_zero) j["wall_kind"] = "identically zero";
  return j;
}

Report cmd_beta(const Options& o, const std::string& target, const std::string& cval, const std::string& valfile) {
  auto cat = catalog(o);
  Report r;
  std::optional<Fixture> fx;
  LogPair p;
  std::optional<ValuationSpec> v;
  json inputs = json::array({target, valfile});
  if (std::filesystem::exists(target)) {
    json doc = read_json_file(target);
    inputs.push_back(doc);
    SurfacePtr s = cat->resolve_surface(doc, target);
    p = cat->pair_from_json(s, field(doc, "boundary", target), target + "/boundary");
    if (doc.contains("valuation")) v = cat->valuation_from_json(p, doc["valuation"], target + "/valuation");
  } else {
    fx = cat->load_fixture(target);
    p = fx->pair;
    v = fx->valuation;
  }
  if (!valfile.empty()) {
    json vd = read_json_file(valfile);
    inputs.push_back(vd);
    v = cat->valuation_from_json(p, vd, valfile);
  }
  if (!v) throw InputError(target + ": no valuation given");
  WallSolution w;
  json& j = r.j;
  j = verdict_json(fx ? fx->id : target, p, *v, &w);
  j["command"] = "beta " + target + (valfile.empty() ? "" : " --valuation " + valfile) + (cval.empty() ? "" : " " + cval);
  j["inputs_digest"] = digest(inputs);
  j["valuation"] = {{"name", v->name}, {"a_x", v->a_x.str()}, {"ord_b", v->ord_b.str()}, {"tag", to_string(v->tag)}};
  AffineRatFn b = log_discrepancy(p, *v) - s_invariant(p, *v);
  std::ostringstream md;
  md << "# beta: " << (fx ? fx->id : target) << "\n\n";
  if (fx && !fx->description.empty()) md << fx->description << "\n\n";
  md << "| quantity | value |\n|---|---|\n";
  md << "| valuation | " << v->name << " (A_X = " << v->a_x.str() << ", ord = " << v->ord_b.str() << ") |\n";
  md << "| A | " << j["A"].get<std::string>() << " |\n";
  md << "| S | " << j["S"].get<std::string>() << " |\n";
  md << "| beta | " << b.str() << " |\n";
  md << "| wall | " << wall_text(w) << " |\n";
  if (!cval.empty()) {
    Rational c = Rational::parse(cval);
    Rational bc = b(c);
    std::string sign = bc.sign() > 0 ? "positive" : (bc.sign() < 0 ? "negative" : "zero");
    j["at_c"] = {{"c", c.str()}, {"beta", bc.str()}, {"sign", sign}};
    md << "| beta(" << c.str() << ") | " << bc.str() << " (" << sign << ") |\n";
  }
  if (fx) {
    json cmp = json::object();
    auto check = [&](const char* k, const std::optional<AffineRatFn>& e, const AffineRatFn& got) {
      if (e) cmp[k] = {{"expected", e->to_json()}, {"match", *e == got}};
    };
    check("A", fx->expected_A, log_discrepancy(p, *v));
    check("S", fx->expected_S, s_invariant(p, *v));
    check("beta", fx->expected_beta, b);
    bool wm = fx->expected_wall ? (w.kind == WallSolution::root && w.value == *fx->expected_wall)
                                : w.kind != WallSolution::root;
    cmp["wall"] = {{"expected", fx->expected_wall ? json(fx->expected_wall->str()) : json(nullptr)}, {"match", wm}};
    j["expected"] = cmp;
    md << "\n| expected | value | match |\n|---|---|---|\n";
    for (auto it = cmp.begin(); it != cmp.end(); ++it) {
      const json& e = it.value()["expected"];
      std::string ev = "none";
      if (e.is_string()) ev = e.get<std::string>();
      if (e.is_object()) {
        AffineRatFn f{Rational::parse(e["const"].get<std::string>()), Rational::parse(e["slope"].get<std::string>())};
        ev = it.key() == "S" ? s_str(f) : f.str();
      }
      md << "| " << it.key() << " | " << ev << " | " << (it.value()["match"].get<bool>() ? "yes" : "NO") << " |\n";
    }
  }
  r.md = md.str();
  return r;
}

Report cmd_walls(const Options& o, bool diff, const std::string& family, unsigned threads, const std::string& perturb) {
  auto cat = catalog(o);
  std::optional<std::string> fam;
  if (!family.empty()) fam = family;
  std::vector<std::string> ids = cat->enumerate_fixtures(fam);
  if (ids.empty()) throw InputError("no fixtures in family '" + family + "'");
  if (!perturb.empty() && std::find(ids.begin(), ids.end(), perturb) == ids.end())
    throw InputError("--perturb: unknown fixture '" + perturb + "'");

  std::vector<BetaRow> rows(ids.size());
  std::vector<std::optional<Rational>> expected(ids.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < ids.size();) {
      BetaRow& row = rows[i];
      row.id = ids[i];
      try {
        Fixture f = cat->load_fixture(ids[i]);
        expected[i] = f.expected_wall;
        if (ids[i] == perturb) f.valuation.a_x += Rational(1, 1000);
        row.A = log_discrepancy(f.pair, f.valuation);
        row.S = s_invariant(f.pair, f.valuation);
        row.beta = row.A - row.S;
        row.wall = solve_wall(row.beta, f.pair.c_lo, f.pair.c_hi);
      } catch (const Error& e) {
        row.error = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, ids.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::map<Rational, std::vector<std::string>> found;
  std::vector<std::string> failures;
  for (const auto& row : rows) {
    if (!row.error.empty()) failures.push_back(row.id + ": " + row.error);
    else if (row.wall.kind == WallSolution::root) found[row.wall.value].push_back(row.id);
  }
  for (auto& [w, v] : found) std::sort(v.begin(), v.end());

  WallTable table = cat->expected_wall_list();
  std::map<Rational, const WallEntry*> listed;
  for (const auto& e : table.walls) listed[e.wall] = &e;
  std::set<Rational> want;
  if (fam) {
    for (const auto& e : expected)
      if (e) want.insert(*e);
  } else {
    for (const auto& e : table.walls) want.insert(e.wall);
  }

  Report r;
  json& j = r.j;
  j["command"] = std::string("walls") + (diff ? " --diff" : "") + (fam ? " --family " + *fam : "") +
                 (perturb.empty() ? "" : " --perturb " + perturb);
  json inputs = json::array();
  for (const auto& id : ids) inputs.push_back(id);
  j["inputs_digest"] = digest(inputs);
  json walls = json::array();
  for (const auto& [w, v] : found) {
    auto it = listed.find(w);
    walls.push_back({{"wall", w.str()},
                     {"fixtures", v},
                     {"type", it == listed.end() ? "unlisted" : (it->second->divisorial ? "divisorial" : "flip")}});
  }
  j["walls"] = walls;
  json fixtures = json::array();
  std::vector<std::string> fixture_mismatch;
  for (size_t i = 0; i < rows.size(); ++i) {
    const BetaRow& row = rows[i];
    json fj = {{"fixture", row.id}};
    if (!row.error.empty()) {
      fj["error"] = row.error;
    } else {
      fj["A"] = row.A.str();
      fj["S"] = s_str(row.S);
      fj["beta"] = row.beta.to_json();
      fj["wall"] = wall_json(row.wall);
      fj["expected_wall"] = expected[i] ? json(expected[i]->str()) : json(nullptr);
      bool ok = expected[i] ? row.wall.kind == WallSolution::root && row.wall.value == *expected[i]
                            : row.wall.kind != WallSolution::root;
      fj["match"] = ok;
      if (!ok) fixture_mismatch.push_back(row.id);
    }
    fixtures.push_back(fj);
  }
  std::sort(fixtures.begin(), fixtures.end(), [](const json& a, const json& b) {
    auto key = [](const json& x) {
      return x.contains("wall") && x["wall"].is_string() ? Rational::parse(x["wall"].get<std::string>()) : Rational(1);
    };
    Rational ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return a["fixture"].get<std::string>() < b["fixture"].get<std::string>();
  });
  j["fixtures"] = fixtures;
  j["failures"] = failures;

  std::ostringstream md;
  md << "# K-moduli walls" << (fam ? " (family " + *fam + ")" : "") << "\n\n";
  md << "| wall | decimal | type | fixtures |\n|---|---|---|---|\n";
  for (const auto& w : walls)
    md << "| " << w["wall"].get<std::string>() << " | " << dec(Rational::parse(w["wall"].get<std::string>())) << " | "
       << w["type"].get<std::string>() << " | " << join(w["fixtures"].get<std::vector<std::string>>()) << " |\n";
  md << "\n" << found.size() << " distinct walls from " << ids.size() << " fixtures\n";
  if (!failures.empty()) {
    md << "\n## failures\n\n";
    for (const auto& f : failures) md << "- " << f << "\n";
  }

  if (diff) {
    std::vector<std::string> missing, extra;
    for (const auto& w : want)
      if (!found.count(w)) missing.push_back(w.str());
    for (const auto& [w, v] : found)
      if (!want.count(w)) extra.push_back(w.str() + " (" + join(v) + ")");
    size_t matched = want.size() - missing.size();
    size_t divisorial = 0;
    for (const auto& e : table.walls)
      if (e.divisorial && found.count(e.wall) && want.count(e.wall)) ++divisorial;
    bool ok = missing.empty() && extra.empty() && failures.empty();
    j["diff"] = {{"expected", want.size()},
                 {"matched", matched},
                 {"missing", missing},
                 {"unexpected", extra},
                 {"divisorial_matched", divisorial},
                 {"fixture_expectation_mismatches", fixture_mismatch},
                 {"ok", ok}};
    md << "\n## diff against the expected wall list\n\n";
    md << "matched " << matched << "/" << want.size() << ", divisorial " << divisorial << "\n\n";
    for (const auto& m : missing) md << "- missing: " << m << "\n";
    for (const auto& e : extra) md << "- unexpected: " << e << "\n";
    if (!fixture_mismatch.empty()) {
      md << "\nper-fixture expected walls that differ from the computed wall (not part of the set diff):\n\n";
      for (const auto& fj : fixtures)
        if (fj.contains("match") && !fj["match"].get<bool>())
          md << "- " << fj["fixture"].get<std::string>() << ": expected "
             << (fj["expected_wall"].is_null() ? "none" : fj["expected_wall"].get<std::string>()) << ", computed "
             << (fj["wall"].is_null() ? "none" : fj["wall"].get<std::string>()) << "\n";
    }
    md << "\nresult: " << (ok ? "MATCH" : "MISMATCH") << "\n";
    if (!ok) r.status = kExitDiff;
  } else if (!failures.empty()) {
    r.status = kExitDiff;
  }
  r.md = md.str();
  return r;
}

Report cmd_bounds(const std::optional<std::string>& degree, const std::optional<std::string>& cval,
                  const std::optional<std::string>& ord, const std::optional<long>& d, const std::optional<long>& n) {
  if (degree && cval) throw InputError("give either --degree or --c, not both");
  if (!degree && !cval) throw InputError("give --degree or --c");
  Report r;
  json& j = r.j;
  std::string cmd = "bounds";
  if (degree) cmd += " --degree " + *degree;
  if (cval) cmd += " --c " + *cval;
  if (ord) cmd += " --ord " + *ord;
  if (d) cmd += " --d " + std::to_string(*d);
  if (n) cmd += " --n " + std::to_string(*n);
  j["command"] = cmd;
  j["inputs_digest"] = digest(cmd);
  std::optional<Rational> c;
  Rational deg;
  if (cval) {
    c = Rational::parse(*cval);
    if (!(c->sign() > 0 && *c < Rational(1, 2))) throw InputError("--c must lie in (0, 1/2)");
    deg = pair_degree(*c);
    j["c"] = c->str();
  } else {
    deg = Rational::parse(*degree);
  }
  Rational bound = quotient_order_bound(deg);
  std::string verdict;
  if (bound < Rational(2)) verdict = "forces smooth";
  else if (bound < Rational(3)) verdict = "at most A1";
  else verdict = "|G| <= " + mpz_class(bound.num() / bound.den()).get_str();
  j["degree"] = deg.str();
  j["quotient_order_bound"] = bound.str();
  j["verdict"] = verdict;
  std::ostringstream md;
  md << "# bounds\n\n| quantity | value |\n|---|---|\n";
  if (c) md << "| c | " << c->str() << " |\n";
  md << "| degree | " << deg.str() << " (" << dec(deg) << ") |\n";
  md << "| quotient order bound 9/degree | " << bound.str() << " (" << dec(bound) << ") |\n";
  md << "| verdict | " << verdict << " |\n";
  if (d || n || ord) {
    if (!c) throw InputError("index feasibility needs --c");
    Rational o = ord ? Rational::parse(*ord) : Rational(0);
    long dd = d.value_or(1), nn = n.value_or(1);
    bool feasible = index_feasibility(dd, nn, *c, o);
    Rational rhs = (Rational(2) - *c * o) * (Rational(2) - *c * o);
    Rational max_dn2 = rhs / (Rational(4, 9) * deg);
    j["index"] = {{"d", dd}, {"n", nn}, {"ord", o.str()}, {"feasible", feasible}, {"max_dn2", max_dn2.str()}};
    md << "| index point 1/(dn^2), d = " << dd << ", n = " << nn << ", ord >= " << o.str() << " | "
       << (feasible ? "feasible" : "excluded") << " |\n";
    md << "| largest admissible dn^2 | " << max_dn2.str() << " (" << dec(max_dn2) << ") |\n";
  }
  r.md = md.str();
  return r;
}

Report cmd_fixtures_list(const Options& o, const std::string& family) {
  auto cat = catalog(o);
  std::optional<std::string> fam;
  if (!family.empty()) fam = family;
  Report r;
  json list = json::array();
  std::ostringstream md;
  md << "# fixtures" << (fam ? " (family " + *fam + ")" : "") << "\n\n| id | expected wall | provenance |\n|---|---|---|\n";
  for (const auto& id : cat->enumerate_fixtures(fam)) {
    Fixture f = cat->load_fixture(id);
    json w = f.expected_wall ? json(f.expected_wall->str()) : json(nullptr);
    list.push_back({{"id", id}, {"expected_wall", w}, {"provenance", f.provenance}});
    md << "| " << id << " | " << (f.expected_wall ? f.expected_wall->str() : "none") << " | "
       << f.provenance.at("wall") << " |\n";
  }
  r.j["command"] = "fixtures list" + (fam ? " --family " + *fam : "");
  r.j["inputs_digest"] = digest(list);
  r.j["fixtures"] = list;
  md << "\n" << list.size() << " fixtures\n";
  r.md = md.str();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kwall: exact A, S and beta invariants and K-moduli walls of quintic del Pezzo pairs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json_out, "machine-readable JSON output");
  app.add_option("--catalog", opt.catalog, "catalog directory (default: $KWALL_CATALOG or the built-in catalog)");

  auto* surface = app.add_subcommand("surface", "surface models");
  surface->require_subcommand(1);
  surface->fallthrough();
  auto* show = surface->add_subcommand("show", "print a surface model and its validation report");
  std::string surf_target;
  show->add_option("surface", surf_target, "catalog surface name or JSON file")->required();

  auto* zar = app.add_subcommand("zariski", "Zariski decomposition, or a volume profile with --ray");
  std::string z_target, z_class = "-KX", z_class_opt, z_ray;
  zar->add_option("surface", z_target, "catalog surface name or JSON file")->required();
  zar->add_option("divisor", z_class, "class expression, e.g. \"-K-3/2 L12\" (after --); default -KX");
  zar->add_option("--class", z_class_opt, "class expression (alternative to the positional)");
  zar->add_option("--ray", z_ray, "direction of the ray D - tR");

  auto* prof = app.add_subcommand("profile", "volume profile of a fixture valuation or a surface ray");
  std::string p_target, p_ray, p_origin = "-KX";
  prof->add_option("target", p_target, "fixture id, catalog surface name or JSON file")->required();
  prof->add_option("--ray", p_ray, "direction (surface targets)");
  prof->add_option("--origin", p_origin, "origin class (surface targets), default -KX");

  auto* bet = app.add_subcommand("beta", "A, S, beta and the wall of a valuation");
  std::string b_target, b_c, b_val;
  bet->add_option("target", b_target, "fixture id or pair JSON file")->required();
  bet->add_option("c", b_c, "evaluate beta at this coefficient");
  bet->add_option("--valuation", b_val, "valuation JSON file");

  auto* wal = app.add_subcommand("walls", "solve every fixture and aggregate the walls");
  bool w_diff = false;
  std::string w_family, w_perturb;
  unsigned w_threads = std::max(1u, std::thread::hardware_concurrency());
  wal->add_flag("--diff", w_diff, "compare against the expected wall list");
  wal->add_option("--family", w_family, "restrict to one surface family");
  wal->add_option("--threads", w_threads, "worker threads");
  wal->add_option("--perturb", w_perturb, "test mode: shift A of one fixture by 1/1000 (negative control)");

  auto* bnd = app.add_subcommand("bounds", "local-volume and index bounds");
  std::optional<std::string> bd_degree, bd_c, bd_ord;
  std::optional<long> bd_d, bd_n;
  bnd->add_option("--degree", bd_degree, "pair degree (-K_X-cD)^2");
  bnd->add_option("--c", bd_c, "boundary coefficient; degree = 5(1-2c)^2");
  bnd->add_option("--ord", bd_ord, "lower bound for ord of the boundary at the point");
  bnd->add_option("--d", bd_d, "index data d");
  bnd->add_option("--n", bd_n, "index data n");

  auto* fix = app.add_subcommand("fixtures", "catalog fixtures");
  fix->require_subcommand(1);
  fix->fallthrough();
  auto* list = fix->add_subcommand("list", "list fixture ids");
  std::string f_family;
  list->add_option("--family", f_family, "restrict to one surface family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    Report r;
    if (show->parsed()) r = cmd_surface_show(opt, surf_target);
    else if (zar->parsed()) r = cmd_zariski(opt, z_target, z_class_opt.empty() ? z_class : z_class_opt, z_ray);
    else if (prof->parsed()) r = cmd_profile(opt, p_target, p_ray, p_origin);
    else if (bet->parsed()) r = cmd_beta(opt, b_target, b_c, b_val);
    else if (wal->parsed()) r = cmd_walls(opt, w_diff, w_family, w_threads, w_perturb);
    else if (bnd->parsed()) r = cmd_bounds(bd_degree, bd_c, bd_ord, bd_d, bd_n);
    else if (list->parsed()) r = cmd_fixtures_list(opt, f_family);
    r.j["exit_status"] = r.status;
    if (opt.json_out) std::cout << r.j.dump(2) << "\n";
    else std::cout << r.md;
    return r.status;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const EngineError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngine;
  }
}
