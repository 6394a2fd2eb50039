#include "tropweil/polarize.hpp"

#include <algorithm>
#include <sstream>

namespace tropweil {
namespace {

Monomial concat(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

RatVector slot_value(const Slot& s, int dim, const std::vector<RatVector>& point) {
  RatVector v(dim, 0);
  for (const auto& e : s) v[e.index] += e.coef * evaluate_monomial(e.mono, point);
  return v;
}

Int binomial(long n, long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

Slot variable_slot(int var, int dim) {
  Slot s;
  for (int i = 0; i < dim; ++i) s.push_back({Rat(1), {static_cast<VarCode>(var * 8 + i)}, i});
  return s;
}

Slot constant_slot(const RatVector& v) {
  Slot s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.push_back({v[i], {}, static_cast<int>(i)});
  return s;
}

Slot scale(const Slot& a, const Rat& k) {
  Slot s = a;
  for (auto& e : s) e.coef *= k;
  return s;
}

Slot sum(const Slot& a, const Slot& b) {
  Slot s = a;
  s.insert(s.end(), b.begin(), b.end());
  return s;
}

Slot difference(const Slot& a, const Slot& b) { return sum(a, scale(b, Rat(-1))); }

Slot tensor_slot(const Slot& p, const Slot& k, int kdim) {
  Slot s;
  for (const auto& a : p)
    for (const auto& b : k) s.push_back({a.coef * b.coef, concat(a.mono, b.mono), a.index * kdim + b.index});
  return s;
}

Slot wedge_slot(const Slot& u, const Slot& v) {
  Slot s;
  for (const auto& a : u)
    for (const auto& b : v) {
      if (a.index == b.index) continue;
      Rat c = a.coef * b.coef;
      int w = a.index < b.index ? idx::wedge(a.index, b.index) : idx::wedge(b.index, a.index);
      if (a.index > b.index) c = -c;
      s.push_back({c, concat(a.mono, b.mono), w});
    }
  return s;
}

Schema::Schema(std::vector<VarSpec> vars, std::vector<int> slot_dims)
    : vars_(std::move(vars)), slot_dims_(std::move(slot_dims)) {}

void Schema::add_unknown(const Rat& coef, std::vector<Slot> slots) {
  if (slots.size() != slot_dims_.size()) throw std::invalid_argument("unknown term: wrong number of slots");
  unknown_.push_back({coef, std::move(slots)});
}

void Schema::add_known(const Rat& coef, Slot p, Slot q, Slot w1, Slot w2) {
  known_.push_back({coef, std::move(p), std::move(q), std::move(w1), std::move(w2)});
}

std::size_t Schema::unknown_count() const {
  std::size_t n = 1;
  for (int d : slot_dims_) n *= d;
  return n;
}

std::vector<CoefficientEquation> Schema::expand(const std::vector<std::vector<int>>& multidegrees) const {
  for (const auto& deg : multidegrees)
    if (deg.size() != vars_.size()) throw DegreeMismatch("one degree per variable required");
  auto check = [&](const Monomial& m) {
    std::vector<int> deg(vars_.size(), 0);
    for (VarCode c : m) ++deg[c / 8];
    if (std::find(multidegrees.begin(), multidegrees.end(), deg) == multidegrees.end())
      throw DegreeMismatch("term of multidegree different from the declaration");
  };
  std::map<Monomial, CoefficientEquation> eqs;

  for (const auto& term : unknown_) {
    const std::size_t k = term.slots.size();
    std::vector<std::size_t> pos(k, 0);
    bool empty = false;
    for (const auto& s : term.slots) empty = empty || s.empty();
    if (empty) continue;
    for (;;) {
      Rat c = term.coef;
      Monomial m;
      std::uint32_t index = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const SlotEntry& e = term.slots[i][pos[i]];
        c *= e.coef;
        m = concat(m, e.mono);
        index = index * slot_dims_[i] + e.index;
      }
      check(m);
      auto& eq = eqs[m];
      eq.lhs[index] += c;
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++pos[i] < term.slots[i].size()) break;
        pos[i] = 0;
        if (i == 0) goto done_unknown;
      }
    }
  done_unknown:;
  }

  for (const auto& term : known_)
    for (const auto& a : term.p)
      for (const auto& b : term.q)
        for (const auto& x : term.w1)
          for (const auto& y : term.w2) {
            Monomial m = concat(concat(a.mono, b.mono), concat(x.mono, y.mono));
            check(m);
            int t = idx::t(idx::sym2p(a.index, b.index), idx::sym2w(x.index, y.index));
            eqs[m].rhs[t] += term.coef * a.coef * b.coef * x.coef * y.coef;
          }

  std::vector<CoefficientEquation> out;
  out.reserve(eqs.size());
  for (auto& [m, eq] : eqs) {
    eq.mono = m;
    for (auto it = eq.lhs.begin(); it != eq.lhs.end();)
      it = sgn(it->second) == 0 ? eq.lhs.erase(it) : std::next(it);
    for (auto it = eq.rhs.begin(); it != eq.rhs.end();)
      it = sgn(it->second) == 0 ? eq.rhs.erase(it) : std::next(it);
    out.push_back(std::move(eq));
  }
  return out;
}

ClassT Schema::evaluate(const std::vector<RatVector>& point, const std::map<std::uint32_t, ClassT>& unknowns) const {
  ClassT out;
  for (const auto& term : unknown_) {
    std::vector<RatVector> vals;
    for (std::size_t i = 0; i < term.slots.size(); ++i) vals.push_back(slot_value(term.slots[i], slot_dims_[i], point));
    for (const auto& [index, value] : unknowns) {
      Rat c = term.coef;
      std::uint32_t rest = index;
      for (std::size_t i = term.slots.size(); i-- > 0;) {
        c *= vals[i][rest % slot_dims_[i]];
        rest /= slot_dims_[i];
      }
      if (sgn(c) != 0) out += c * value;
    }
  }
  for (const auto& term : known_) {
    RatVector p = slot_value(term.p, 4, point), q = slot_value(term.q, 4, point);
    RatVector w1 = slot_value(term.w1, 6, point), w2 = slot_value(term.w2, 6, point);
    out -= term.coef * tensor(sym_product(GpVector::from_vector(p), GpVector::from_vector(q)),
                              sym_square_embed(Wedge2::from_vector(w1), Wedge2::from_vector(w2)));
  }
  return out;
}

std::string Schema::monomial_name(const Monomial& m) const {
  if (m.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out << "*";
    out << vars_[m[i] / 8].name << (m[i] % 8 + 1);
  }
  return out.str();
}

std::size_t graded_dimension(const std::vector<VarSpec>& vars, const std::vector<int>& degrees) {
  Int n = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) n *= binomial(vars[i].dim + degrees[i] - 1, degrees[i]);
  return n.get_ui();
}

Rat evaluate_monomial(const Monomial& m, const std::vector<RatVector>& point) {
  Rat v = 1;
  for (VarCode c : m) v *= point[c / 8][c % 8];
  return v;
}

ClassT evaluate_equations(const std::vector<CoefficientEquation>& eqs, const std::vector<RatVector>& point,
                          const std::map<std::uint32_t, ClassT>& unknowns) {
  ClassT out;
  for (const auto& eq : eqs) {
    Rat mv = evaluate_monomial(eq.mono, point);
    if (sgn(mv) == 0) continue;
    for (const auto& [index, c] : eq.lhs) {
      auto it = unknowns.find(index);
      if (it != unknowns.end()) out += (mv * c) * it->second;
    }
    for (const auto& [t, c] : eq.rhs) out[t] -= mv * c;
  }
  return out;
}

}  // namespace tropweil
