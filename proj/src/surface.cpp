#include "kwall/surface.hpp"

#include <numeric>
#include <set>

#include "kwall/errors.hpp"

namespace kwall {

SurfaceModel::SurfaceModel(std::string name, LatticePtr lattice, DivClass canonical, std::vector<MoriGen> mori,
                           std::vector<std::string> contracted, std::map<std::string, Rational> k_discrepancies,
                           std::string description)
    : name_(std::move(name)), description_(std::move(description)), lattice_(std::move(lattice)),
      canonical_(std::move(canonical)), mori_(std::move(mori)), contracted_(std::move(contracted)),
      k_disc_(std::move(k_discrepancies)) {
  if (canonical_.lattice() != lattice_) throw LatticeMismatch();
  std::set<std::string> seen;
  for (const auto& g : mori_) {
    if (g.cls.lattice() != lattice_) throw LatticeMismatch();
    if (!seen.insert(g.name).second) throw ConfigurationError(name_ + ": duplicate curve name " + g.name);
  }
  for (const auto& c : contracted_) {
    if (!seen.count(c)) throw ConfigurationError(name_ + ": contracted curve " + c + " is not a Mori generator");
    if (!k_disc_.count(c)) throw ConfigurationError(name_ + ": no discrepancy for contracted curve " + c);
  }
  for (const auto& [k, v] : k_disc_)
    if (!is_contracted(k)) throw ConfigurationError(name_ + ": discrepancy given for uncontracted curve " + k);
}

const MoriGen* SurfaceModel::find(const std::string& name) const {
  for (const auto& g : mori_)
    if (g.name == name) return &g;
  return nullptr;
}

const DivClass& SurfaceModel::cls(const std::string& name) const {
  const MoriGen* g = find(name);
  if (!g) throw ConfigurationError(name_ + ": no curve named " + name);
  return g->cls;
}

bool SurfaceModel::is_contracted(const std::string& name) const {
  return std::find(contracted_.begin(), contracted_.end(), name) != contracted_.end();
}

Rational SurfaceModel::k_discrepancy(const std::string& name) const {
  auto it = k_disc_.find(name);
  return it == k_disc_.end() ? Rational(0) : it->second;
}

DivClass SurfaceModel::pullback_canonical() const {
  DivClass k = canonical_;
  for (const auto& c : contracted_) k -= k_disc_.at(c) * cls(c);
  return k;
}

DivClass SurfaceModel::anticanonical() const { return -pullback_canonical(); }

Rational SurfaceModel::degree() const {
  DivClass k = pullback_canonical();
  return pair(k, k);
}

Rational anticanonical_degree(const SurfaceModel& m) { return m.degree(); }

SurfaceReport validate_surface(const SurfaceModel& m) {
  SurfaceReport r;
  r.lattice = validate_lattice(*m.lattice());
  const DivClass& K = m.canonical();
  DivClass piK = m.pullback_canonical();
  for (const auto& c : m.contracted()) {
    Rational p = pair(piK, m.cls(c));
    if (!p.is_zero()) r.problems.push_back("pi^*K_X . " + c + " = " + p.str() + ", expected 0");
  }
  if (!m.contracted().empty()) {
    Mat g;
    for (const auto& a : m.contracted()) {
      Vec row;
      for (const auto& b : m.contracted()) row.push_back(pair(m.cls(a), m.cls(b)));
      g.push_back(row);
    }
    if (!negative_definite(g)) r.problems.push_back("contracted curves are not negative definite");
  }
  bool rank_one = m.lattice()->rank() == 1;
  for (const auto& g : m.mori()) {
    Rational c2 = pair(g.cls, g.cls), kc = pair(K, g.cls);
    bool extremal = c2.sign() < 0 || (c2.is_zero() && kc.sign() < 0) || (rank_one && c2.sign() > 0);
    if (!extremal) r.problems.push_back(g.name + ": C^2 = " + c2.str() + ", K.C = " + kc.str() + " is not extremal");
    if (c2.sign() < 0 && g.cls.is_integral()) {
      Rational s = c2 + kc;
      if (!s.is_integer() || s.num() % 2 != 0 || s < Rational(-2))
        r.problems.push_back(g.name + ": C^2 + K.C = " + s.str() + " fails adjunction");
    }
  }
  if (m.degree().sign() <= 0) r.problems.push_back("anticanonical degree " + m.degree().str() + " is not positive");
  return r;
}

std::vector<Rational> pullback_coefficients(const SurfaceModel& m, const DivClass& d) {
  const auto& cs = m.contracted();
  if (cs.empty()) return {};
  Mat g;
  Vec rhs;
  for (const auto& a : cs) {
    Vec row;
    for (const auto& b : cs) row.push_back(pair(m.cls(a), m.cls(b)));
    g.push_back(row);
    rhs.push_back(-pair(d, m.cls(a)));
  }
  try {
    return solve_linear(g, rhs);
  } catch (const SingularSystem&) {
    throw ConfigurationError(m.name() + ": contracted curves have a singular Gram matrix");
  }
}

DivClass pullback_weil(const SurfaceModel& m, const DivClass& d) {
  auto c = pullback_coefficients(m, d);
  DivClass r = d;
  for (size_t j = 0; j < c.size(); ++j) r += c[j] * m.cls(m.contracted()[j]);
  return r;
}

namespace {

DivClass lift(const LatticePtr& to, const DivClass& d) {
  Vec v = d.coords();
  v.push_back(0);
  return DivClass(to, std::move(v));
}

}  // namespace

DivClass BlowupExtension::pullback(const DivClass& d) const {
  if (d.lattice() != base_->lattice()) throw LatticeMismatch();
  return lift(model_->lattice(), d);
}

DivClass BlowupExtension::proper_transform(const DivClass& d, const Rational& ord) const {
  return pullback(d) - ord * e_;
}

BlowupExtension build_blowup_extension(SurfacePtr base, const BlowupCenter& center) {
  if (center.a <= 0 || center.b <= 0) throw InconsistentMultiplicity("blow-up weights must be positive");
  if (std::gcd(center.a, center.b) != 1)
    throw InconsistentMultiplicity("blow-up weights (" + std::to_string(center.a) + "," + std::to_string(center.b) +
                                   ") are not coprime");
  const LatticePtr& bl = base->lattice();
  size_t n = bl->rank();
  if (bl->index_of(center.e_name) || base->find(center.e_name))
    throw ConfigurationError("exceptional name " + center.e_name + " already used on " + base->name());

  Rational ab = Rational(center.a * center.b);
  std::vector<std::string> names = bl->basis_names();
  names.push_back(center.e_name);
  Mat g = bl->gram();
  for (auto& row : g) row.push_back(0);
  g.push_back(Vec(n + 1));
  g[n][n] = Rational(-1) / ab;
  LatticePtr nl = IntersectionLattice::make(std::move(names), std::move(g));
  DivClass e = DivClass::basis(nl, n);

  for (const auto& [k, v] : center.ord) {
    if (v.sign() < 0) throw InconsistentMultiplicity("negative order " + v.str() + " along " + k);
  }
  for (const auto& x : center.extra) {
    if (x.ord.sign() < 0) throw InconsistentMultiplicity("negative order along " + x.name);
    if (base->find(x.name)) throw InconsistentMultiplicity(x.name + " is already a Mori generator of " + base->name());
    if (x.base_class.lattice() != bl) throw LatticeMismatch();
    auto it = center.ord.find(x.name);
    if (it != center.ord.end() && it->second != x.ord)
      throw InconsistentMultiplicity("two different orders given for " + x.name);
  }

  auto ord_of = [&](const std::string& k) {
    auto it = center.ord.find(k);
    return it == center.ord.end() ? Rational(0) : it->second;
  };
  std::vector<MoriGen> mori, extra;
  for (const auto& gm : base->mori()) mori.push_back({gm.name, lift(nl, gm.cls) - ord_of(gm.name) * e});
  for (const auto& x : center.extra) {
    MoriGen t{x.name, lift(nl, x.base_class) - x.ord * e};
    mori.push_back(t);
    extra.push_back(t);
  }
  for (size_t i = 0; i < mori.size(); ++i)
    for (size_t j = i + 1; j < mori.size(); ++j) {
      Rational p = pair(mori[i].cls, mori[j].cls);
      if (p.sign() < 0)
        throw InconsistentMultiplicity("transforms of " + mori[i].name + " and " + mori[j].name + " meet in " +
                                       p.str() + " < 0");
    }
  mori.push_back({center.e_name, e});

  Rational a_x = Rational(center.a + center.b);
  for (const auto& c : base->contracted()) a_x += base->k_discrepancy(c) * ord_of(c);
  if (a_x.sign() <= 0) throw InconsistentMultiplicity("log discrepancy " + a_x.str() + " is not positive");

  DivClass K = lift(nl, base->canonical()) + Rational(center.a + center.b - 1) * e;
  auto model = std::make_shared<SurfaceModel>(base->name() + "+" + center.e_name, nl, K, std::move(mori),
                                              base->contracted(), base->k_discrepancies(),
                                              "weighted blow-up of " + base->name());
  BlowupExtension ext(base, model, e, a_x, std::move(extra), center.a, center.b);

  for (size_t i = 0; i < n; ++i) {
    DivClass di = ext.pullback(DivClass::basis(bl, i));
    if (!pair(di, e).is_zero()) throw ConfigurationError("pullback not orthogonal to exceptional divisor");
    for (size_t j = 0; j < n; ++j)
      if (pair(di, ext.pullback(DivClass::basis(bl, j))) != bl->gram()[i][j])
        throw ConfigurationError("pullback is not an isometry");
  }
  return ext;
}

SurfacePtr surface_from_json(const json& j, const std::string& name, const std::string& where) {
  const json& basis = field(j, "basis", where);
  if (!basis.is_array()) throw InputError(where + "/basis: expected an array of names");
  std::vector<std::string> names;
  for (const auto& b : basis) {
    if (!b.is_string()) throw InputError(where + "/basis: expected strings");
    names.push_back(b.get<std::string>());
  }
  const json& gj = field(j, "gram", where);
  if (!gj.is_array() || gj.size() != names.size()) throw InputError(where + "/gram: expected a square matrix");
  Mat g;
  for (size_t i = 0; i < gj.size(); ++i) {
    g.push_back(vec_from_json(gj[i], where + "/gram/" + std::to_string(i)));
    if (g.back().size() != names.size()) throw InputError(where + "/gram/" + std::to_string(i) + ": wrong length");
  }
  LatticePtr l = IntersectionLattice::make(std::move(names), std::move(g));
  auto cls = [&](const json& v, const std::string& w) {
    Vec c = vec_from_json(v, w);
    if (c.size() != l->rank()) throw InputError(w + ": expected " + std::to_string(l->rank()) + " coordinates");
    return DivClass(l, std::move(c));
  };
  DivClass K = cls(field(j, "canonical", where), where + "/canonical");
  std::vector<MoriGen> mori;
  const json& mj = field(j, "mori", where);
  if (!mj.is_array()) throw InputError(where + "/mori: expected an array");
  for (size_t i = 0; i < mj.size(); ++i) {
    std::string w = where + "/mori/" + std::to_string(i);
    mori.push_back({string_field(mj[i], "name", w), cls(field(mj[i], "class", w), w + "/class")});
  }
  std::vector<std::string> contracted;
  std::map<std::string, Rational> disc;
  if (j.contains("contracted")) {
    for (const auto& c : j["contracted"]) {
      if (!c.is_string()) throw InputError(where + "/contracted: expected strings");
      contracted.push_back(c.get<std::string>());
    }
  }
  if (j.contains("k_discrepancies")) {
    const json& kd = j["k_discrepancies"];
    if (!kd.is_object()) throw InputError(where + "/k_discrepancies: expected an object");
    for (auto it = kd.begin(); it != kd.end(); ++it)
      disc[it.key()] = rational_from_json(it.value(), where + "/k_discrepancies/" + it.key());
  }
  std::string desc = j.contains("description") && j["description"].is_string() ? j["description"].get<std::string>()
                                                                                : "";
  try {
    auto m = std::make_shared<SurfaceModel>(name, l, K, std::move(mori), std::move(contracted), std::move(disc),
                                            desc);
    if (j.contains("degree")) {
      Rational want = rational_from_json(j["degree"], where + "/degree");
      if (m->degree() != want)
        throw InputError(where + "/degree: declared " + want.str() + ", computed " + m->degree().str());
    }
    return m;
  } catch (const ConfigurationError& e) {
    throw InputError(where + ": " + e.what());
  }
}

json surface_to_json(const SurfaceModel& m) {
  json j;
  j["basis"] = m.lattice()->basis_names();
  json g = json::array();
  for (const auto& row : m.lattice()->gram()) g.push_back(to_json(row));
  j["gram"] = g;
  j["canonical"] = to_json(m.canonical().coords());
  json mori = json::array();
  for (const auto& gm : m.mori()) mori.push_back({{"name", gm.name}, {"class", to_json(gm.cls.coords())}});
  j["mori"] = mori;
  j["contracted"] = m.contracted();
  json kd = json::object();
  for (const auto& [k, v] : m.k_discrepancies()) kd[k] = v.str();
  j["k_discrepancies"] = kd;
  return j;
}

}  // namespace kwall
