#pragma once

// Command dispatch for the ptcalc tool: resolves group, subgroup, representation
// and signature specs, runs a battery and fills a Report.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ptcalc/config.hpp"
#include "ptcalc/constructions.hpp"
#include "ptcalc/report.hpp"
#include "ptcalc/showcase.hpp"

namespace ptcalc {

/// A resolved group spec with its character table (when one is known) and the
/// subgroups that can be referred to by name.
struct GroupContext {
  std::string spec;
  GroupPtr G;
  std::shared_ptr<const CharacterTable> table;
  std::map<std::string, PermGroup> named;
  std::optional<DihedralGroup> dihedral;
  std::shared_ptr<const PhiGroup> phi;
  int p = 0;
};

namespace detail {

inline long long parse_ll(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("cannot read " + what + " from '" + s + "'");
}

inline int parse_prime(const std::string& s, const std::string& what) {
  const long long p = parse_ll(s, what);
  if (!is_odd_prime(p)) throw InputError(what + " must be an odd prime, got " + s);
  return static_cast<int>(p);
}

/// Names shared by every D_p x D_p model: sigma_i, tau_i generate the factors.
inline void name_square_subgroups(GroupContext& c, const Perm& s1, const Perm& t1, const Perm& s2, const Perm& t2) {
  const std::size_t n = c.G->degree();
  auto gen = [n](std::vector<Perm> g) { return PermGroup::generate(n, std::move(g)); };
  c.named.emplace("tau1", gen({t1}));
  c.named.emplace("tau2", gen({t2}));
  c.named.emplace("H^2", gen({t1, t2}));
  c.named.emplace("H1", gen({s2, t1, t2}));
  c.named.emplace("H2", gen({s1, t1, t2}));
  c.named.emplace("M", gen({s1, s2, t1 * t2}));
  c.named.emplace("Xtilde", gen({t1 * t2}));
  for (long long j = 1; j <= (c.p - 1) / 2; ++j)
    c.named.emplace("L(" + std::to_string(j) + ")", gen({s1.pow(j) * s2, t1 * t2}));
}

/// An explicit group gets a character table only when it is recognizably Z/2
/// or a dihedral group of order 2p.
inline std::shared_ptr<const CharacterTable> guess_table(const GroupPtr& G) {
  if (G->order() == 2) return std::make_shared<const CharacterTable>(CharacterTable::cyclic2(G, 3));
  const std::size_t n = G->order();
  if (n % 2 != 0 || !is_odd_prime(static_cast<long long>(n / 2))) return nullptr;
  std::optional<Perm> sigma, tau;
  for (const auto& g : G->elements()) {
    if (!sigma && g.order() == n / 2) sigma = g;
    if (!tau && g.order() == 2) tau = g;
  }
  if (!sigma || !tau || !(*tau * *sigma * *tau == sigma->inverse())) return nullptr;
  return std::make_shared<const CharacterTable>(CharacterTable::dihedral(G, *sigma, *tau));
}

}  // namespace detail

/// dihedral:p, z2 (or cyclic2), klein, dihedral2:p, phi:p, or
/// perm:<degree>:<gen>;<gen>;... with generators in cycle or image notation.
inline GroupContext resolve_group(const std::string& spec_in) {
  const std::string spec = detail::trim(spec_in);
  if (spec.empty()) throw InputError("no group given");
  GroupContext c;
  c.spec = spec;
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon), arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "dihedral") {
    c.p = detail::parse_prime(arg, "dihedral:p");
    c.dihedral = dihedral_group(c.p);
    c.G = c.dihedral->group;
    c.table = std::make_shared<const CharacterTable>(CharacterTable::dihedral(c.G, c.dihedral->sigma, c.dihedral->tau));
    c.named.emplace("tau", PermGroup::generate(c.G->degree(), {c.dihedral->tau}));
    c.named.emplace("sigma", PermGroup::generate(c.G->degree(), {c.dihedral->sigma}));
  } else if (head == "z2" || head == "cyclic2") {
    c.G = share(PermGroup::generate(2, {Perm::from_cycles(2, "(1 2)")}));
    c.table = std::make_shared<const CharacterTable>(CharacterTable::cyclic2(c.G, 3));
    c.named.emplace("tau", *c.G);
  } else if (head == "klein") {
    auto Z = share(PermGroup::generate(2, {Perm::from_cycles(2, "(1 2)")}));
    auto P = std::make_shared<const ProductGroup>(ProductGroup::external(Z, Z));
    auto t = std::make_shared<const CharacterTable>(CharacterTable::cyclic2(Z, 3));
    c.G = P->group();
    c.table = std::make_shared<const CharacterTable>(CharacterTable::product_of(P, t, t));
    c.named.emplace("tau1", P->embed_left(*Z));
    c.named.emplace("tau2", P->embed_right(*Z));
    c.named.emplace("diagonal", PermGroup::generate(4, {Perm::from_cycles(4, "(1 2)(3 4)")}));
  } else if (head == "dihedral2") {
    c.p = detail::parse_prime(arg, "dihedral2:p");
    const DihedralGroup D = dihedral_group(c.p);
    auto P = std::make_shared<const ProductGroup>(ProductGroup::external(D.group, D.group));
    auto t = std::make_shared<const CharacterTable>(CharacterTable::dihedral(D.group, D.sigma, D.tau));
    c.G = P->group();
    c.table = std::make_shared<const CharacterTable>(CharacterTable::product_of(P, t, t));
    const Perm& e = D.group->identity();
    detail::name_square_subgroups(c, P->combine(D.sigma, e), P->combine(D.tau, e), P->combine(e, D.sigma),
                                  P->combine(e, D.tau));
  } else if (head == "phi") {
    c.p = detail::parse_prime(arg, "phi:p");
    c.phi = std::make_shared<const PhiGroup>(build_phis(c.p));
    c.G = c.phi->G;
    c.table = c.phi->table;
    detail::name_square_subgroups(c, c.phi->sigma1, c.phi->tau1, c.phi->sigma2, c.phi->tau2);
  } else if (head == "perm") {
    const auto colon2 = arg.find(':');
    if (colon2 == std::string::npos) throw InputError("explicit groups are written perm:<degree>:<gen>;<gen>;...");
    const long long deg = detail::parse_ll(arg.substr(0, colon2), "degree");
    if (deg < 1 || deg > 1000) throw InputError("degree out of range: " + std::to_string(deg));
    std::vector<Perm> gens;
    for (const auto& g : detail::split_top_level(arg.substr(colon2 + 1), ";"))
      gens.push_back(parse_perm(g, static_cast<std::size_t>(deg)));
    if (gens.empty()) throw InputError("explicit group needs at least one generator");
    c.G = share(PermGroup::generate(static_cast<std::size_t>(deg), std::move(gens)));
    c.table = detail::guess_table(c.G);
  } else {
    throw InputError("unknown group spec '" + spec + "'");
  }
  c.named.emplace("trivial", PermGroup::trivial(c.G->degree()));
  c.named.emplace("G", *c.G);
  return c;
}

/// A subgroup name from the context ("Hsq" is accepted for H^2) or a list of
/// ';'-separated generators.
inline PermGroup resolve_subgroup(const GroupContext& c, const std::string& spec_in) {
  std::string spec = detail::trim(spec_in);
  if (spec.empty()) throw InputError("no subgroup given");
  if (spec == "Hsq" || spec == "H2sq") spec = "H^2";
  if (auto it = c.named.find(spec); it != c.named.end()) return it->second;
  if (spec.front() != '(' && spec.front() != '[') {
    std::string known;
    for (const auto& [k, v] : c.named) known += (known.empty() ? "" : ", ") + k;
    throw InputError("unknown subgroup '" + spec + "' for group " + c.spec + " (known: " + known + ")");
  }
  std::vector<Perm> gens;
  for (const auto& g : detail::split_top_level(spec, ";")) gens.push_back(parse_perm(g, c.G->degree()));
  PermGroup H = PermGroup::generate(c.G->degree(), std::move(gens));
  require_subgroup(*c.G, H, "subgroup " + spec);
  return H;
}

inline std::vector<RationalRep> resolve_reps(const GroupContext& c, const std::vector<std::string>& names) {
  if (names.empty()) throw InputError("no representations given");
  if (!c.table) throw InputError("no character table is known for group " + c.spec + "; use a named family");
  std::vector<RationalRep> out;
  for (const auto& n : names) out.push_back(resolve_rep(*c.table, n));
  return out;
}

/// "C1:6,C2:4" indexes cyclic_subgroup_classes (ascending order); any other
/// label is read as a subgroup name or generator list.
inline GeometricSignature resolve_signature(const GroupContext& c, const std::string& spec) {
  const auto parts = detail::split_top_level(spec, ",");
  if (parts.empty()) throw InputError("no signature given");
  std::optional<std::vector<std::vector<PermGroup>>> classes;
  std::vector<SignatureEntry> entries;
  for (const auto& part : parts) {
    const auto colon = part.rfind(':');
    if (colon == std::string::npos) throw InputError("signature entries are written label:s, got '" + part + "'");
    const std::string label = detail::trim(part.substr(0, colon));
    const long long s = detail::parse_ll(detail::trim(part.substr(colon + 1)), "branch count in '" + part + "'");
    if (label.size() > 1 && label[0] == 'C' && std::all_of(label.begin() + 1, label.end(), ::isdigit)) {
      if (!classes) classes = cyclic_subgroup_classes(*c.G);
      const long long k = detail::parse_ll(label.substr(1), "class index");
      if (k < 1 || k > static_cast<long long>(classes->size()))
        throw InputError("class " + label + " does not exist; the group has " + std::to_string(classes->size()) +
                         " classes of nontrivial cyclic subgroups");
      entries.push_back({label, (*classes)[static_cast<std::size_t>(k - 1)].front(), s});
    } else {
      entries.push_back({label, resolve_subgroup(c, label), s});
    }
  }
  return GeometricSignature::make(*c.G, 0, std::move(entries));
}

// ---------------------------------------------------------------------------
// Batteries

namespace detail {

inline Json hypothesis_json(const HypothesisReport& h) {
  return Json{{"a", h.a}, {"b", h.b}, {"c", h.c}, {"d", h.d}};
}

/// The criterion checks for one presentation. Returns false if the
/// hypothesis stops the computation early.
inline bool presentation_checks(Report& rep, const PTPresentation& P, const std::string& prefix, Json& out,
                                const CharacterTable* table) {
  const HypothesisReport h = check_hypothesis(P);
  out["hypothesis"] = hypothesis_json(h);
  const char* parts[] = {"a", "b", "c", "d"};
  const bool flags[] = {h.a, h.b, h.c, h.d};
  for (int i = 0; i < 4; ++i) {
    Check& c = rep.add(prefix + "hypothesis (" + parts[i] + ")", flags[i]);
    for (const auto& w : h.witnesses)
      if (w.rfind(std::string("(") + parts[i] + ")", 0) == 0) c.witnesses.push_back(w);
  }
  if (!(h.a && h.b && h.c)) return false;

  const Coefficients co = coefficients(P);
  Json reps = Json::array(), sizes = Json::array();
  for (std::size_t i = 0; i < co.cosets.count(); ++i) {
    reps.push_back(co.cosets.reps[i].to_string());
    sizes.push_back(std::to_string(co.cosets.sizes[i]));
  }
  out["double_coset_count"] = str_count(co.cosets.count());
  out["double_coset_reps"] = reps;
  out["double_coset_sizes"] = sizes;
  out["b_vector"] = str_list(co.b);

  // b_i does not depend on the representative chosen inside HgH.
  bool constant = true;
  const auto& He = P.H.elements();
  for (std::size_t i = 0; i < co.cosets.count(); ++i) {
    const Perm alt = He.back() * co.cosets.reps[i] * He[He.size() > 1 ? 1 : 0];
    if (coefficient_at(P, alt) != co.b[i]) constant = false;
  }
  rep.add(prefix + "b_i constant on double cosets", constant);

  const Exponent e = exponent(P, co.b);
  out["b"] = str(e.b);
  out["q"] = str(e.q);
  rep.add(prefix + "q b n = |G|", e.q * e.b * Integer(P.n()) == Integer(P.G->order()),
          "q = " + e.q.str() + ", b = " + e.b.str() + ", n = " + std::to_string(P.n()));

  const SignatureCondition sc = signature_condition(P, e.q);
  out["condition_brackets"] = str_list(sc.brackets);
  out["condition_terms"] = str_list(sc.terms);
  out["condition_total"] = str(sc.total);
  out["condition_bracketwise"] = sc.bracketwise;
  rep.add(prefix + "signature condition", sc.holds, "total = " + sc.total.str());

  const Integer dim = pt_dimension(P), genus = quotient_genus(P);
  out["dimension"] = str(dim);
  out["genus_X"] = str(genus);
  try {
    out["genus_Z"] = str(total_space_genus(P.signature, P.G->order()));
  } catch (const VerificationError& err) {
    out["genus_Z"] = nullptr;
    rep.add(prefix + "genus of Z integral", false, err.what());
  }
  // With q = 1 and every nontrivial constituent of rho_H listed, P is all of JX.
  if (table && e.q == 1) {
    bool covers = true;
    for (const auto& cst : decompose_perm_character(*table, P.H)) {
      if (cst.rep.is_trivial()) continue;
      const bool listed = std::any_of(P.reps.begin(), P.reps.end(), [&](const RationalRep& R) { return same_rational_rep(R, cst.rep); });
      covers = covers && listed && cst.multiplicity == 1;
    }
    if (covers) rep.add(prefix + "dim P = g_X when q = 1", dim == genus, dim.str() + " vs " + genus.str());
  }

  std::vector<Integer> kan;
  try {
    kan = kanev_coefficients(co.b, e.b);
  } catch (const VerificationError& err) {
    rep.add(prefix + "Kanev coefficients effective", false, err.what());
    return true;
  }
  out["kanev_coefficients"] = str_list(kan);
  rep.add(prefix + "Kanev coefficients effective", true);
  const CorrMatrix D = corr_matrix(*P.G, P.H, co.cosets, co.b);
  const CorrMatrix K = corr_matrix(*P.G, P.H, co.cosets, kan);
  const MatrixProperties mp = matrix_properties(K, e.q);
  rep.add(prefix + "Kanev matrix symmetric", mp.symmetric);
  rep.add(prefix + "Kanev matrix fixed-point free", mp.fixed_point_free);
  Check& deg = rep.add(prefix + "Kanev matrix has constant row and column sums", mp.degree.has_value());
  if (mp.degree) deg.values["degree"] = mp.degree->str();
  Check& cert = rep.add(prefix + "Kanev quadratic certificate M^2+(q-2)M-(q-1)I = cJ", mp.certificate.has_value());
  if (mp.predicted) cert.values["predicted_c"] = mp.predicted->str();
  if (mp.certificate) cert.values["c"] = mp.certificate->str();
  out["kanev_degree"] = mp.degree ? Json(mp.degree->str()) : Json(nullptr);
  out["kanev_certificate"] = mp.certificate ? Json(mp.certificate->str()) : Json(nullptr);
  rep.matrices.push_back(matrix_json(prefix + "D", D));
  rep.matrices.push_back(matrix_json(prefix + "Kanev", K));
  return true;
}

inline PTPresentation build_presentation(const GroupContext& c, const RunConfig& cfg, const std::string& signature) {
  return PTPresentation(c.G, resolve_subgroup(c, cfg.subgroup), resolve_reps(c, cfg.reps),
                        resolve_signature(c, signature));
}

inline void run_verify(Report& rep, const RunConfig& cfg) {
  const GroupContext c = resolve_group(cfg.group);
  const PTPresentation P = build_presentation(c, cfg, cfg.signature);
  rep.results["group_order"] = str_count(c.G->order());
  rep.results["index"] = str_count(P.index());
  rep.results["n"] = str_count(P.n());
  rep.results["field_degree"] = str_count(P.field_degree());
  rep.results["signature"] = P.signature.to_string();
  presentation_checks(rep, P, "", rep.results, c.table.get());
}

inline void run_product(Report& rep, const RunConfig& cfg) {
  const GroupContext c = resolve_group(cfg.group);
  const auto halves = split_top_level(cfg.signature, "|");
  if (halves.empty() || halves.size() > 2) throw InputError("product signature is 'first|second' or a single signature");
  const PTPresentation A = build_presentation(c, cfg, halves.front());
  const PTPresentation B = build_presentation(c, cfg, halves.back());
  const ProductPresentation pp = fiber_product(A, B);
  rep.results["assumptions"] = pp.assumptions;

  Json base = Json::object(), prod = Json::object();
  presentation_checks(rep, A, "base: ", base, c.table.get());
  rep.results["base"] = base;

  const ProductExponentCheck pe = verify_product_exponent(pp);
  Check& ce = rep.add("product exponent q~ = [G:H] q and b~ = |H| b", pe.ok);
  ce.values = {{"q_base", pe.base.q.str()}, {"q_product", pe.product.q.str()}, {"b_base", pe.base.b.str()},
               {"b_product", pe.product.b.str()}, {"index", std::to_string(pe.index)}, {"h_order", std::to_string(pe.h_order)}};

  const PullbackCheck l = verify_lemma_3_2(pp);
  Check& cm = rep.add("D = |H|(q1*D1 + q2*D2) entry-wise", l.matrices_equal);
  for (const auto& f : l.failures) cm.witnesses.push_back(f);
  if (!l.matrices_equal) rep.matrices.push_back(matrix_json("pullback residual", l.residual));
  rep.add("product coefficients split as |H| a_i + |H| a_k", l.coefficients_ok);

  const DimensionAdditivity da = verify_dimension_additivity(pp);
  Check& cd = rep.add("dim P = dim P1 + dim P2", da.ok);
  cd.values = {{"product", da.product.str()}, {"first", da.first.str()}, {"second", da.second.str()}};

  presentation_checks(rep, pp.combined, "product: ", prod, nullptr);
  prod["signature"] = pp.combined.signature.to_string();
  prod["group_order"] = str_count(pp.combined.G->order());
  rep.results["product"] = prod;
}

inline std::pair<long long, long long> demo_parameters(const RunConfig& cfg) {
  return {cfg.s1.value_or(4), cfg.s2.value_or(6)};
}

inline int demo_prime(const RunConfig& cfg) {
  if (cfg.p) {
    if (!is_odd_prime(*cfg.p)) throw InputError("p must be an odd prime, got " + std::to_string(*cfg.p));
    return static_cast<int>(*cfg.p);
  }
  if (!cfg.group.empty()) {
    const GroupContext c = resolve_group(cfg.group);
    if (c.p) return c.p;
  }
  throw InputError("this command needs --p");
}

inline void add_claims(Report& rep, const std::vector<Claim>& claims) {
  for (const auto& c : claims) rep.add(c.name, c.passed, c.detail);
}

inline void add_decomposition(Report& rep, const DecompositionReport& d, Json& out) {
  add_claims(rep, d.identities);
  rep.add("multiplicities c_j and d_j are the predicted 0/1 values", d.multiplicities_ok);
  Json qs = Json::array();
  for (const auto* list : {&d.quotients, &d.pryms})
    for (const auto& q : *list) {
      Json parts = Json::array();
      for (const auto& s : q.summands)
        parts.push_back({{"rep", s.name}, {"multiplicity", std::to_string(s.multiplicity)}, {"dim", s.dimension.str()}});
      qs.push_back({{"curve", q.curve}, {"genus", q.genus.str()}, {"total", q.total.str()}, {"summands", parts}});
      rep.add("dimension count for " + q.curve, q.ok(), q.total.str() + " vs genus " + q.genus.str());
    }
  out["decomposition"] = qs;
  Json u = Json::array();
  for (const auto& c : d.u_checks) u.push_back({{"rep", c.rep.name}, {"matches_closed_form_rule", c.matches_rule}});
  out["U_orbits"] = u;
}

inline void add_genus_table(Report& rep, const GenusTable& g, long long p, Json& out) {
  out["genera"] = {{"g_Y", g.g_Y.str()},   {"g_Ytilde", g.g_Ytilde.str()}, {"g_X1", g.g_X1.str()},
                   {"g_X2", g.g_X2.str()}, {"g_X", g.g_X.str()},           {"g_Z", g.g_Z.str()}};
  out["g_X2_formula_with_s1_matches"] = g.s1_reading_agrees;
  rep.add("lattice genera agree with the closed forms (s_i reading)", g.closed_forms_agree);
  rep.add("g_X = g_X1 + g_X2 + ((p-1)/2)(g_Ytilde - g_Y)", g.bookkeeping,
          g.g_X.str() + " = " + g.g_X1.str() + " + " + g.g_X2.str() + " + " + std::to_string((p - 1) / 2) + "*(" +
              g.g_Ytilde.str() + " - " + g.g_Y.str() + ")");
}

inline void run_demo(Report& rep, const RunConfig& cfg) {
  const int p = demo_prime(cfg);
  const auto [s1, s2] = demo_parameters(cfg);
  require_showcase_signature(s1, s2);
  rep.results["p"] = std::to_string(p);
  rep.results["s1"] = std::to_string(s1);
  rep.results["s2"] = std::to_string(s2);

  // D_p with W and signature [0; (<tau>, s)].
  const DihedralGroup D = dihedral_group(p);
  auto T = std::make_shared<const CharacterTable>(CharacterTable::dihedral(D.group, D.sigma, D.tau));
  const PermGroup Htau = PermGroup::generate(static_cast<std::size_t>(p), {D.tau});
  auto base = [&](long long s) {
    return PTPresentation(D.group, Htau, {dihedral_W(*T)}, GeometricSignature::make(*D.group, 0, {{"C1", Htau, s}}));
  };
  const PTPresentation A = base(s1), B = base(s2);
  Json dp = Json::object();
  presentation_checks(rep, A, "D_p: ", dp, T.get());
  {
    const Coefficients co = coefficients(A);
    std::vector<Integer> expect(co.b.size(), Integer(-1));
    expect[0] = p - 1;
    rep.add("D_p: b-vector (p-1, -1, ..., -1) over (p+1)/2 double cosets",
            co.b == expect && co.cosets.count() == static_cast<std::size_t>((p + 1) / 2));
    const Exponent e = exponent(A, co.b);
    rep.add("D_p: b = p and q = 1", e.b == p && e.q == 1);
    const SignatureCondition sc = signature_condition(A, e.q);
    rep.add("D_p: signature brackets all zero",
            std::all_of(sc.brackets.begin(), sc.brackets.end(), [](const Rational& x) { return x == 0; }));
  }
  rep.results["D_p"] = dp;

  const ProductPresentation pp = fiber_product(A, B);
  const ProductExponentCheck pe = verify_product_exponent(pp);
  rep.add("product exponent q~ = p, b~ = 2p", pe.ok && pe.product.q == p && pe.product.b == 2 * p,
          "q~ = " + pe.product.q.str() + ", b~ = " + pe.product.b.str());
  const PullbackCheck l = verify_lemma_3_2(pp);
  rep.add("D = |H|(q1*D1 + q2*D2) entry-wise", l.matrices_equal);
  rep.add("product coefficients split as |H| a_i + |H| a_k", l.coefficients_ok);
  rep.add("dim P = dim P1 + dim P2", verify_dimension_additivity(pp).ok);

  const PhiGroup F = build_phis(p);
  rep.add("phi_1..phi_4 are involutions generating D_p x D_p of order 4p^2", F.G->order() == static_cast<std::size_t>(4 * p * p));
  const MonodromyCheck mc = validate_monodromy(witness_monodromy(F), p);
  Check& cmono = rep.add("monodromy (phi1,phi2,phi3,phi4,phi4,phi3,phi2,phi1) is valid", mc.valid && mc.image_order == F.G->order());
  for (const auto& r : mc.reasons) cmono.witnesses.push_back(r);

  const GridCorrespondence gc = grid_correspondence(p);
  const EquivarianceCheck eq = verify_equivariance(gc, F);
  for (int k = 0; k < 4; ++k) {
    rep.add("phi_" + std::to_string(k + 1) + " grid formula matches its action on {i, p+j}", eq.formula_matches_action[static_cast<std::size_t>(k)]);
    rep.add("phi_" + std::to_string(k + 1) + " commutes with the grid correspondence", eq.commutes[static_cast<std::size_t>(k)]);
  }
  const KanevGridCheck kg = verify_kanev_equals_grid(F, s1, s2);
  rep.add("Kanev matrix equals grid matrix (Hg -> P11 g)", kg.orbit_equal);
  rep.add("Kanev matrix equals grid matrix (sigma1^l sigma2^k -> P_uv)", kg.formula_equal);
  const MatrixProperties& gp = kg.grid_props;
  const Integer P(p);
  rep.add("grid matrix symmetric with zero diagonal", gp.symmetric && gp.fixed_point_free && gp.effective);
  rep.add("grid matrix degree (p-1)^2", gp.degree && *gp.degree == (P - 1) * (P - 1));
  Check& gcert = rep.add("grid quadratic certificate c = (p-1)(p-2)", gp.certificate && *gp.certificate == (P - 1) * (P - 2));
  if (gp.certificate) gcert.values["c"] = gp.certificate->str();
  if (gp.predicted) gcert.values["predicted_c"] = gp.predicted->str();
  rep.results["Kanev"] = {{"b", kg.exp.b.str()}, {"q", kg.exp.q.str()}};
  rep.matrices.push_back(matrix_json("grid correspondence", gc.matrix));
  rep.matrices.push_back(matrix_json("Kanev on cosets of H^2", kg.kanev));

  const LatticeReport lat = showcase_lattice(F);
  rep.results["subgroup_count"] = str_count(lat.subgroup_count);
  add_claims(rep, lat.claims);

  add_genus_table(rep, genus_table(F, s1, s2), p, rep.results);
  add_decomposition(rep, jacobian_decomposition(F, s1, s2), rep.results);
}

inline void run_decompose(Report& rep, const RunConfig& cfg) {
  const bool showcase = cfg.group.empty() || cfg.group.rfind("phi:", 0) == 0;
  if (showcase) {
    const int p = demo_prime(cfg);
    const auto [s1, s2] = demo_parameters(cfg);
    const PhiGroup F = build_phis(p);
    rep.results["p"] = std::to_string(p);
    add_genus_table(rep, genus_table(F, s1, s2), p, rep.results);
    add_decomposition(rep, jacobian_decomposition(F, s1, s2), rep.results);
    return;
  }
  const GroupContext c = resolve_group(cfg.group);
  if (!c.table) throw InputError("no character table is known for group " + c.spec);
  const PermGroup H = resolve_subgroup(c, cfg.subgroup);
  const auto parts = decompose_perm_character(*c.table, H);
  rep.add("rho_H equals the sum of its constituents value-wise", true);
  Json list = Json::array();
  std::optional<GeometricSignature> sig;
  if (!cfg.signature.empty()) sig = resolve_signature(c, cfg.signature);
  Integer total = 0;
  for (const auto& cst : parts) {
    Json e{{"rep", cst.rep.name}, {"multiplicity", std::to_string(cst.multiplicity)},
           {"dim_complex", std::to_string(cst.rep.dim_complex)}, {"field_degree", std::to_string(cst.rep.field_degree())}};
    if (sig) {
      const Integer d = b_dimension(cst.rep, *sig);
      e["dim"] = d.str();
      total += Integer(cst.multiplicity) * d;
    }
    list.push_back(e);
  }
  rep.results["constituents"] = list;
  if (sig) {
    const Integer g = quotient_genus(*c.G, H, *sig);
    rep.results["genus"] = g.str();
    rep.add("sum of c_j dim B_W = genus of Z/H", total == g, total.str() + " vs " + g.str());
  }
}

}  // namespace detail

inline Report run(const RunConfig& cfg);

namespace detail {

inline void run_regress(Report& rep, const RunConfig& cfg) {
  const std::filesystem::path dir = cfg.fixtures.empty() ? "fixtures" : cfg.fixtures;
  if (!std::filesystem::is_directory(dir)) throw InputError("fixture directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no fixtures in " + dir.string());

  struct Outcome {
    std::string name;
    bool ok = false;
    std::vector<std::string> problems;
  };
  auto one = [](const std::filesystem::path& f) {
    Outcome o{f.filename().string(), false, {}};
    try {
      std::ifstream in(f);
      const Json j = Json::parse(in);
      RunConfig fc = config_from_json(j);
      if (fc.command == "regress") throw InputError("a fixture cannot run regress");
      const Report r = run(fc);
      const Json expect = j.value("expect", Json::object());
      const int want = expect.value("exit_code", 0);
      if (r.exit_code() != want)
        o.problems.push_back("exit code " + std::to_string(r.exit_code()) + ", expected " + std::to_string(want) +
                             (r.error.empty() ? "" : " (" + r.error + ")"));
      for (const auto& c : r.checks)
        if (!c.passed && want == 0) o.problems.push_back("failed check: " + c.name);
      const Json wanted = expect.value("results", Json::object());
      for (const auto& [k, v] : wanted.items()) {
        const Json ptr = r.results.contains(Json::json_pointer("/" + k)) ? r.results[Json::json_pointer("/" + k)] : Json(nullptr);
        if (ptr != v) o.problems.push_back("results/" + k + " = " + ptr.dump() + ", expected " + v.dump());
      }
    } catch (const std::exception& e) {
      o.problems.push_back(std::string("fixture could not be run: ") + e.what());
    }
    o.ok = o.problems.empty();
    return o;
  };
  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, one, f));
  Json names = Json::array();
  for (auto& j : jobs) {
    Outcome o = j.get();
    names.push_back(o.name);
    Check& c = rep.add("fixture " + o.name, o.ok);
    for (auto& p : o.problems) c.witnesses.push_back(p);
  }
  rep.results["fixtures"] = names;
}

}  // namespace detail

/// Runs one command. Input errors give exit code 2, failed checks exit code 1.
inline Report run(const RunConfig& cfg) {
  Report rep;
  rep.command = cfg.command;
  rep.input = config_to_json(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    validate_config(cfg);
    if (cfg.command == "verify") detail::run_verify(rep, cfg);
    else if (cfg.command == "product") detail::run_product(rep, cfg);
    else if (cfg.command == "dihedral-demo") detail::run_demo(rep, cfg);
    else if (cfg.command == "decompose") detail::run_decompose(rep, cfg);
    else detail::run_regress(rep, cfg);
  } catch (const CapExceeded& e) {
    rep.error = std::string(e.what()) + " (enumerated " + std::to_string(e.partial_count()) + " elements)";
  } catch (const InputError& e) {
    rep.error = e.what();
  } catch (const VerificationError& e) {
    rep.add("exact computation", false, e.what());
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ptcalc
