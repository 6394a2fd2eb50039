#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "tropweil/obstruction.hpp"
#include "tropweil/weil.hpp"

namespace tropweil {
namespace {

constexpr int kS = 0, kT = 1, kU = 2, kV = 3, kW = 4;

Slot var(int v) { return variable_slot(v, v == kW ? idx::kWedge2 : idx::kRank); }

// ---------------------------------------------------------------------------
// Formal algebra for the reduction log. Points are x + sum c[S][U] S(x)U with
// S in {s, t} and U in {u, v}; directions are combinations of u, v.

using Offset = std::array<std::array<Rat, 2>, 2>;
using Dir = std::array<Rat, 2>;
const char* kSName[2] = {"s", "t"};
const char* kUName[2] = {"u", "v"};

// kind 0: lambda0(S;U), 1: lambda1(x;S;U), 2: lambda1(S1(x)U1;S;U).
using Atom = std::array<int, 5>;
using Expr = std::map<Atom, Rat>;

void add(Expr& e, const Atom& a, const Rat& c) {
  if (sgn(c) == 0) return;
  Rat& v = e[a];
  v += c;
  if (sgn(v) == 0) e.erase(a);
}

Expr operator+(Expr a, const Expr& b) {
  for (const auto& [k, v] : b) add(a, k, v);
  return a;
}

Expr scaled(const Expr& a, const Rat& k) {
  Expr out;
  for (const auto& [key, v] : a) add(out, key, v * k);
  return out;
}

std::string lin_name(const std::array<Rat, 2>& c, const char* const* names) {
  std::string out;
  for (int i = 0; i < 2; ++i) {
    if (sgn(c[i]) == 0) continue;
    Rat a = abs(c[i]);
    out += sgn(c[i]) < 0 ? "-" : (out.empty() ? "" : "+");
    if (a != 1) out += a.get_str() + "*";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

std::string point_name(const Offset& o) {
  std::string out = "x";
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u) {
      if (sgn(o[s][u]) == 0) continue;
      Rat a = abs(o[s][u]);
      out += sgn(o[s][u]) < 0 ? "-" : "+";
      if (a != 1) out += a.get_str() + "*";
      out += std::string(kSName[s]) + kUName[u];
    }
  return out;
}

std::string atom_name(const Atom& a) {
  std::string su = std::string(kSName[a[3]]) + ";" + kUName[a[4]];
  if (a[0] == 0) return "l0(" + su + ")";
  if (a[0] == 1) return "l1(x;" + su + ")";
  return "l1(" + std::string(kSName[a[1]]) + "(x)" + kUName[a[2]] + ";" + su + ")";
}

std::string expr_name(const Expr& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [a, c] : e) {
    Rat m = abs(c);
    if (out.empty())
      out += sgn(c) < 0 ? "-" : "";
    else
      out += sgn(c) < 0 ? " - " : " + ";
    if (m != 1) out += m.get_str() + "*";
    out += atom_name(a);
  }
  return out;
}

// Rank-one decomposition o = sigma (x) D with D normalized (first nonzero = 1).
std::optional<std::pair<std::array<Rat, 2>, Dir>> rank_one(const Offset& o) {
  Dir dir{0, 0};
  for (int s = 0; s < 2 && sgn(dir[0]) == 0 && sgn(dir[1]) == 0; ++s)
    if (sgn(o[s][0]) != 0 || sgn(o[s][1]) != 0) dir = o[s];
  if (sgn(dir[0]) == 0 && sgn(dir[1]) == 0) return std::pair{std::array<Rat, 2>{0, 0}, dir};
  const int lead = sgn(dir[0]) != 0 ? 0 : 1;
  Rat k = dir[lead];
  for (auto& c : dir) c /= k;
  std::array<Rat, 2> sigma{o[0][lead], o[1][lead]};
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u)
      if (o[s][u] != sigma[s] * dir[u]) return std::nullopt;
  return std::pair{sigma, dir};
}

Offset diff(const Offset& a, const Offset& b) {
  Offset o;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u) o[s][u] = a[s][u] - b[s][u];
  return o;
}

// lambda_{B, sigma, D} expanded into atoms.
Expr expand_lambda(const Offset& base, const std::array<Rat, 2>& sigma, const Dir& dir) {
  Expr e;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u) {
      Rat c = sigma[s] * dir[u];
      if (sgn(c) == 0) continue;
      add(e, {0, 0, 0, s, u}, c);
      add(e, {1, 0, 0, s, u}, c);
      for (int s1 = 0; s1 < 2; ++s1)
        for (int u1 = 0; u1 < 2; ++u1) add(e, {2, s1, u1, s, u}, c * base[s1][u1]);
    }
  return e;
}

// Normal form under lambda1(S(x)U; S'; U) = 0 and
// lambda1(S(x)v; S'; u) = -lambda1(S(x)u; S'; v).
Expr c1_normal_form(const Expr& e) {
  Expr out;
  for (const auto& [a, c] : e) {
    if (a[0] != 2) {
      add(out, a, c);
    } else if (a[2] == a[4]) {
      continue;
    } else if (a[2] == 1) {
      add(out, {2, a[1], 0, a[3], 1}, -c);
    } else {
      add(out, a, c);
    }
  }
  return out;
}

Expr filter(const Expr& e, int kind) {
  Expr out;
  for (const auto& [a, c] : e)
    if (a[0] == kind) out.emplace(a, c);
  return out;
}

struct Derivation {
  Expr lambda_terms;
  bool bases_cancel = true;
};

Derivation derive(const std::string& label, const std::vector<Offset>& loop, ReductionLog& log) {
  struct Term {
    int sign;
    Offset p;
    Dir d;
  };
  std::vector<Term> terms;
  const std::size_t n = loop.size();
  std::vector<Dir> edge(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = rank_one(diff(loop[(i + 1) % n], loop[i]));
    if (!r) throw std::logic_error("derive: edge is not of the form s(x)u");
    edge[i] = r->second;
  }
  std::string flags;
  for (std::size_t i = 0; i < n; ++i) {
    terms.push_back({+1, loop[i], edge[i]});
    terms.push_back({-1, loop[i], edge[(i + n - 1) % n]});
    flags += " +Phi[" + point_name(loop[i]) + "," + lin_name(edge[i], kUName) + "] -Phi[" +
             point_name(loop[i]) + "," + lin_name(edge[(i + n - 1) % n], kUName) + "]";
  }
  log.lines.push_back(label + ": Phi.alpha =" + flags);

  Derivation out;
  std::map<Dir, std::vector<std::pair<Offset, Rat>>> classes;  // direction -> (base, coefficient sum)
  for (const auto& t : terms) {
    auto& group = classes[t.d];
    bool placed = false;
    for (auto& [base, coef] : group) {
      auto r = rank_one(diff(t.p, base));
      if (!r) continue;
      const bool zero = sgn(r->first[0]) == 0 && sgn(r->first[1]) == 0;
      if (!zero && r->second != t.d) continue;
      coef += t.sign;
      if (!zero) {
        Expr l = scaled(expand_lambda(base, r->first, t.d), Rat(t.sign));
        log.lines.push_back(label + ": Phi[" + point_name(t.p) + "," + lin_name(t.d, kUName) + "] = Phi[" +
                            point_name(base) + "," + lin_name(t.d, kUName) + "] + lambda[" + point_name(base) +
                            "," + lin_name(r->first, kSName) + "," + lin_name(t.d, kUName) + "]");
        out.lambda_terms = out.lambda_terms + l;
      }
      placed = true;
      break;
    }
    if (!placed) group.emplace_back(t.p, Rat(t.sign));
  }
  for (const auto& [d, group] : classes)
    for (const auto& [base, coef] : group) {
      log.lines.push_back(label + ": base Phi[" + point_name(base) + "," + lin_name(d, kUName) +
                          "] total coefficient " + coef.get_str());
      if (sgn(coef) != 0) out.bases_cancel = false;
    }
  return out;
}

void check(ReductionLog& log, const std::string& name, bool ok, const std::string& detail) {
  log.checks.push_back({name, ok, detail});
}

Offset offset(std::initializer_list<std::tuple<int, int, long>> terms) {
  Offset o;
  for (auto [s, u, c] : terms) o[s][u] += c;
  return o;
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint32_t lambda1_index(int x, int s, int u, int w) {
  return static_cast<std::uint32_t>(((x * 4 + s) * 4 + u) * 6 + w);
}

std::uint32_t lambda0_index(int s, int u, int w) {
  return static_cast<std::uint32_t>(kLambda1Count + (s * 4 + u) * 6 + w);
}

std::string lambda_name(std::uint32_t i) {
  if (i >= kLambdaCount) throw std::out_of_range("lambda index");
  if (i >= kLambda1Count) {
    std::uint32_t r = i - kLambda1Count;
    return "l0[" + idx::gp_name(r / 24) + ";" + idx::g2_name(r / 6 % 4) + ";" + idx::wedge_name(r % 6) + "]";
  }
  const std::uint32_t x = i / 96, s = i / 24 % 4, u = i / 6 % 4, w = i % 6;
  return "l1[" + idx::gp_name(x / 4) + "*" + idx::g2_name(x % 4) + ";" + idx::gp_name(s) + ";" +
         idx::g2_name(u) + ";" + idx::wedge_name(w) + "]";
}

ClassT LambdaUnknowns::lambda(const XVector& x, const GpVector& s, const G2Vector& u, const Wedge2& w) const {
  ClassT out;
  for (const auto& [i, value] : values) {
    Rat c;
    if (i >= kLambda1Count) {
      std::uint32_t r = i - kLambda1Count;
      c = s[r / 24] * u[r / 6 % 4] * w[r % 6];
    } else {
      c = x[i / 96] * s[i / 24 % 4] * u[i / 6 % 4] * w[i % 6];
    }
    if (sgn(c) != 0) out += c * value;
  }
  return out;
}

void write_lambda(std::ostream& out, const LambdaUnknowns& l) {
  std::size_t n = 0;
  for (const auto& [i, v] : l.values)
    for (std::size_t t = 0; t < v.size(); ++t) n += sgn(v[t]) != 0;
  out << "lambda " << l.d << " " << n << "\n";
  for (const auto& [i, v] : l.values)
    for (std::size_t t = 0; t < v.size(); ++t)
      if (sgn(v[t]) != 0) out << i << " " << t << " " << v[t].get_str() << "\n";
}

LambdaUnknowns read_lambda(std::istream& in) {
  std::string tag;
  LambdaUnknowns l;
  std::size_t n = 0;
  if (!(in >> tag >> l.d >> n) || tag != "lambda" || l.d < 1) throw MalformedLambdaFile("bad lambda header");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = 0, t = 0;
    std::string v;
    if (!(in >> i >> t >> v)) throw MalformedLambdaFile("truncated lambda file");
    if (i >= kLambdaCount || t >= idx::kT) throw MalformedLambdaFile("lambda index out of range");
    try {
      l.values[static_cast<std::uint32_t>(i)][t] = canonical(Rat(v));
    } catch (const std::invalid_argument&) {
      throw MalformedLambdaFile("bad rational '" + v + "'");
    }
  }
  return l;
}

std::vector<VarSpec> ansatz_vars() { return {{"s", 4}, {"t", 4}, {"u", 4}, {"v", 4}, {"w", 6}}; }

namespace {
const std::vector<int> kSlotDims{16, 4, 4, 6};
}

Schema c1_schema() {
  Schema s(ansatz_vars(), kSlotDims);
  s.add_unknown(1, {tensor_slot(var(kT), var(kU), 4), var(kS), var(kU), var(kW)});
  return s;
}

Schema c2_schema(int d, int generator) {
  Schema s(ansatz_vars(), kSlotDims);
  s.add_unknown(1, {constant_slot(gamma_column(d, generator).to_vector()), var(kS), var(kU), var(kW)});
  return s;
}

Schema e1_schema() {
  Schema s(ansatz_vars(), kSlotDims);
  s.add_unknown(1, {tensor_slot(var(kS), var(kV), 4), var(kS), difference(var(kU), var(kV)),
                    wedge_slot(var(kU), var(kV))});
  s.add_known(1, var(kS), var(kS), wedge_slot(var(kU), var(kV)), wedge_slot(var(kU), var(kV)));
  return s;
}

Schema e2_schema() {
  Schema s(ansatz_vars(), kSlotDims);
  s.add_unknown(1, {tensor_slot(var(kT), var(kV), 4), var(kS), var(kU), wedge_slot(var(kU), var(kV))});
  s.add_unknown(-1, {tensor_slot(var(kS), var(kU), 4), var(kT), var(kV), wedge_slot(var(kU), var(kV))});
  s.add_known(2, var(kS), var(kT), wedge_slot(var(kU), var(kV)), wedge_slot(var(kU), var(kV)));
  return s;
}

std::vector<std::vector<int>> c1_degrees() { return {{1, 1, 2, 0, 1}}; }
std::vector<std::vector<int>> c2_degrees() { return {{1, 0, 1, 0, 1}}; }
std::vector<std::vector<int>> e1_degrees() { return {{2, 0, 2, 2, 0}, {2, 0, 1, 3, 0}}; }
std::vector<std::vector<int>> e2_degrees() { return {{1, 1, 2, 2, 0}}; }

// ---------------------------------------------------------------------------

bool ReductionLog::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
}

ReductionLog derive_reduced_equations() {
  ReductionLog log;
  // Triangle x, x+su, x+sv and parallelogram x, x+su, x+su+tv, x+tv.
  const std::vector<Offset> triangle{offset({}), offset({{0, 0, 1}}), offset({{0, 1, 1}})};
  const std::vector<Offset> para{offset({}), offset({{0, 0, 1}}), offset({{0, 0, 1}, {1, 1, 1}}),
                                 offset({{1, 1, 1}})};

  const Expr e1_claim = [] {
    Expr e;
    add(e, {2, 0, 1, 0, 0}, 1);   // l1(s(x)v; s; u)
    add(e, {2, 0, 1, 0, 1}, -1);  // -l1(s(x)v; s; v)
    return e;
  }();
  const Expr e2_claim = [] {
    Expr e;
    add(e, {2, 1, 1, 0, 0}, 1);   // l1(t(x)v; s; u)
    add(e, {2, 0, 0, 1, 1}, -1);  // -l1(s(x)u; t; v)
    return e;
  }();

  struct Case {
    std::string label;
    const std::vector<Offset>* loop;
    const Expr* claim;
    std::string claim_text;
  };
  const Case cases[] = {
      {"eq1", &triangle, &e1_claim, "l1(s(x)v; s; u-v)(u^v) = s^2 (x) (u^v)^2"},
      {"eq2", &para, &e2_claim, "[l1(t(x)v; s; u) - l1(s(x)u; t; v)](u^v) = 2st (x) (u^v)^2"},
  };
  for (const auto& c : cases) {
    Derivation dv = derive(c.label, *c.loop, log);
    const Expr& all = dv.lambda_terms;
    log.lines.push_back(c.label + ": lambda terms = " + expr_name(all));
    check(log, c.label + ": base values cancel", dv.bases_cancel, "every direction class sums to zero");
    Expr l0 = filter(all, 0), lx = filter(all, 1), off = filter(all, 2);
    check(log, c.label + ": lambda0 cancels", l0.empty(), "lambda0 part: " + expr_name(l0));
    check(log, c.label + ": x-terms cancel", lx.empty(), "x part: " + expr_name(lx));
    Expr lhs = c1_normal_form(off), want = c1_normal_form(*c.claim);
    log.lines.push_back(c.label + ": offset part " + expr_name(off) + " ~ " + expr_name(lhs) + " (mod C1)");
    check(log, c.label + ": reduces to " + c.claim_text, lhs == want,
          "derived " + expr_name(lhs) + ", claimed " + expr_name(want));
  }

  // t = s in E2' against two copies of E1' (right-hand sides 2s^2 = 2 * s^2).
  Expr e2_ts;
  for (const auto& [a, v] : e2_claim) {
    Atom b = a;
    if (b[0] == 2) b[1] = 0;
    b[3] = 0;
    add(e2_ts, b, v);
  }
  Expr lhs = c1_normal_form(e2_ts), want = c1_normal_form(scaled(e1_claim, 2));
  check(log, "E2' at t=s equals 2 E1'", lhs == want, expr_name(lhs) + " vs " + expr_name(want));
  check(log, "lambda0 absent from E1', E2'", filter(e1_claim + e2_claim, 0).empty(), "by construction");
  return log;
}

// ---------------------------------------------------------------------------

std::string to_string(RowKind k) {
  switch (k) {
    case RowKind::C1: return "C1";
    case RowKind::C2: return "C2";
    case RowKind::E1: return "E1'";
    case RowKind::E2: return "E2'";
  }
  return "?";
}

IntMatrix EquationSystem::block_matrix() const {
  IntMatrix m(block.size(), kLambdaCount);
  for (std::size_t r = 0; r < block.size(); ++r)
    for (const auto& [c, v] : block[r]) m.set(r, c, v);
  return m;
}

IntVector EquationSystem::rhs_column(int tau) const {
  IntVector out(rhs.size(), 0);
  for (std::size_t r = 0; r < rhs.size(); ++r)
    for (const auto& [t, v] : rhs[r])
      if (static_cast<int>(t) == tau) out[r] = v;
  return out;
}

IntVector EquationSystem::rhs_times(const IntVector& g) const {
  IntVector out(rhs.size(), 0);
  for (std::size_t r = 0; r < rhs.size(); ++r)
    for (const auto& [t, v] : rhs[r]) out[r] += v * g[t];
  return out;
}

EquationSystem assemble_system(int d, bool slack_descent) {
  if (d < 1) throw std::invalid_argument("assemble_system: d must be positive");
  EquationSystem sys;
  sys.d = d;
  sys.slack_descent = slack_descent;
  StandardClasses cls = standard_classes(d);
  sys.w = {expand_class_to_T(cls.theta, d), expand_class_to_T(cls.w1, d), expand_class_to_T(cls.w2, d)};
  const auto vars = ansatz_vars();

  auto append = [&](RowKind kind, int gen, const Schema& schema, const std::vector<std::vector<int>>& degrees,
                    bool residual) {
    KindCount& count = sys.counts[kind];
    for (const auto& deg : degrees) count.graded_dimension += graded_dimension(vars, deg);
    for (auto& eq : schema.expand(degrees)) {
      SparseRow row, rhs;
      for (const auto& [i, c] : eq.lhs) {
        if (c.get_den() != 1) throw std::logic_error("assemble_system: non-integral coefficient");
        if (i >= kLambda1Count) throw std::logic_error("assemble_system: lambda0 in a reduced row");
        row.emplace_back(i, c.get_num());
      }
      for (const auto& [t, c] : eq.rhs) {
        if (c.get_den() != 1) throw std::logic_error("assemble_system: non-integral right-hand side");
        rhs.emplace_back(static_cast<std::uint32_t>(t), c.get_num());
      }
      count.rows += 1;
      count.empty_lhs += row.empty();
      std::string name = schema.monomial_name(eq.mono);
      if (gen >= 0) name = "g" + std::to_string(gen + 1) + ":" + name;
      sys.block.push_back(std::move(row));
      sys.rhs.push_back(std::move(rhs));
      sys.info.push_back({kind, gen, std::move(name)});
      sys.residual.push_back(residual);
    }
  };
  append(RowKind::C1, -1, c1_schema(), c1_degrees(), false);
  for (int i = 0; i < 4; ++i) append(RowKind::C2, i, c2_schema(d, i), c2_degrees(), slack_descent);
  append(RowKind::E1, -1, e1_schema(), e1_degrees(), true);
  append(RowKind::E2, -1, e2_schema(), e2_degrees(), true);
  return sys;
}

EquationSystem doctored_system(const EquationSystem& sys) {
  EquationSystem out = sys;
  SparseRow theta;
  for (std::size_t t = 0; t < idx::kT; ++t) {
    const Rat& v = sys.w[0][t];
    if (sgn(v) == 0) continue;
    if (v.get_den() != 1) throw std::logic_error("doctored_system: theta_T is not integral");
    theta.emplace_back(static_cast<std::uint32_t>(t), v.get_num());
  }
  for (std::size_t r = 0; r < out.rows(); ++r)
    if (out.residual[r]) out.rhs[r] = theta;
  return out;
}

// ---------------------------------------------------------------------------

SublatticeSpec SublatticeSpec::whole() { return {"W", RatMatrix::identity(3)}; }
SublatticeSpec SublatticeSpec::zero() { return {"0", RatMatrix(3, 0)}; }

SublatticeSpec SublatticeSpec::span(const std::string& name, const std::vector<std::array<long, 3>>& cols) {
  SublatticeSpec s{name, RatMatrix(3, cols.size())};
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < 3; ++i) s.gens.set(i, j, Rat(cols[j][i]));
  return s;
}

SublatticeSpec SublatticeSpec::named(const std::string& name) {
  if (name == "w" || name == "W") return whole();
  if (name == "0") return zero();
  std::vector<std::array<long, 3>> cols;
  std::stringstream in(name);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part == "theta")
      cols.push_back({1, 0, 0});
    else if (part == "w1")
      cols.push_back({0, 1, 0});
    else if (part == "w2")
      cols.push_back({0, 0, 1});
    else
      throw std::invalid_argument("unknown sublattice generator '" + part + "'");
  }
  return span("<" + name + ">", cols);
}

std::vector<RatVector> SublatticeSpec::in_T(const std::array<ClassT, 3>& w) const {
  std::vector<RatVector> out;
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    ClassT v;
    for (int k = 0; k < 3; ++k)
      if (sgn(gens.get(k, j)) != 0) v += gens.get(k, j) * w[k];
    out.push_back(v.to_vector());
  }
  return out;
}

LatticeSpec SublatticeSpec::in_W() const { return LatticeSpec(3, gens); }

bool SublatticeSpec::is_proper() const { return !(in_W() == LatticeSpec::standard(3)); }

std::vector<SublatticeSpec> index_two_sublattices() {
  std::vector<SublatticeSpec> out;
  for (int m = 1; m < 8; ++m) {
    std::array<long, 3> f{m & 1, (m >> 1) & 1, (m >> 2) & 1};
    std::vector<std::array<long, 3>> cols{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    for (int a = 0; a < 8; ++a) {
      std::array<long, 3> c{a & 1, (a >> 1) & 1, (a >> 2) & 1};
      if ((c[0] * f[0] + c[1] * f[1] + c[2] * f[2]) % 2 == 0 && a != 0) cols.push_back(c);
    }
    out.push_back(SublatticeSpec::span("ker(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) +
                           " mod 2)",
                       cols));
  }
  return out;
}

}  // namespace tropweil
