#include "tropweil/param_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace tropweil {

ParamPoly::ParamPoly(const Rat& constant) { add_term(Exponent{0, 0, 0, 0}, constant); }

ParamPoly ParamPoly::var(int p) {
  if (p < 0 || p > 3) throw std::out_of_range("parameter index");
  ParamPoly r;
  Exponent e{0, 0, 0, 0};
  e[p] = 1;
  r.add_term(e, Rat(1));
  return r;
}

ParamPoly ParamPoly::linear(const GpVector& coeffs) {
  ParamPoly r;
  for (int p = 0; p < 4; ++p) {
    Exponent e{0, 0, 0, 0};
    e[p] = 1;
    r.add_term(e, coeffs[p]);
  }
  return r;
}

void ParamPoly::add_term(const Exponent& e, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int ParamPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
  return d;
}

Rat ParamPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ParamPoly& ParamPoly::operator*=(const Rat& k) {
  if (sgn(k) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= k;
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      ParamPoly::Exponent e;
      for (int i = 0; i < 4; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  return r;
}

Rat ParamPoly::evaluate(const std::array<Rat, 4>& point) const {
  Rat total = 0;
  for (const auto& [e, c] : terms_) {
    Rat m = c;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    total += m;
  }
  return total;
}

std::string ParamPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest degree first, then lex.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = abs(c);
    bool constant = e == Exponent{0, 0, 0, 0};
    if (sgn(c) < 0)
      out << (first ? "-" : " - ");
    else if (!first)
      out << " + ";
    first = false;
    bool unit = mag == 1;
    if (!unit || constant) out << mag.get_str();
    bool need_star = !unit;
    for (int i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << "*";
      out << idx::gp_name(i);
      if (e[i] > 1) out << "^" << int(e[i]);
      need_star = true;
    }
  }
  return out.str();
}

ParamPoly ParamPoly::from_sym2p(const Sym2p& s) {
  ParamPoly r;
  for (int i = 0; i < idx::kSym2p; ++i) {
    auto [p, q] = idx::sym2p_pair(i);
    Exponent e{0, 0, 0, 0};
    ++e[p];
    ++e[q];
    r.add_term(e, s[i]);
  }
  return r;
}

Sym2p ParamPoly::to_sym2p() const {
  Sym2p out;
  for (const auto& [e, c] : terms_) {
    int p = -1, q = -1;
    int deg = 0;
    for (int i = 0; i < 4; ++i) {
      deg += e[i];
      for (int k = 0; k < e[i]; ++k) (p < 0 ? p : q) = i;
    }
    if (deg != 2) throw std::invalid_argument("not a homogeneous quadratic: " + to_string());
    out[idx::sym2p(p, q)] = c;
  }
  return out;
}

}  // namespace tropweil
