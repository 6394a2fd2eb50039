#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "tropweil/linalg.hpp"
#include "tropweil/multilinear.hpp"

namespace tropweil {

// Polynomial in a, b, c, e with rational coefficients. d is never a symbol.
class ParamPoly {
 public:
  using Exponent = std::array<std::uint8_t, 4>;

  ParamPoly() = default;
  ParamPoly(const Rat& constant);  // NOLINT: implicit scalar promotion
  static ParamPoly var(int p);     // p in 0..3 for a, b, c, e
  static ParamPoly linear(const GpVector& coeffs);

  const std::map<Exponent, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rat coefficient(const Exponent& e) const;

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const Rat& k);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator-(ParamPoly a) { return a *= Rat(-1); }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

  Rat evaluate(const std::array<Rat, 4>& point) const;
  std::string to_string() const;

  // Homogeneous quadratic <-> Sym^2 Gamma_p coordinates.
  static ParamPoly from_sym2p(const Sym2p& s);
  Sym2p to_sym2p() const;  // throws unless homogeneous of degree 2

 private:
  void add_term(const Exponent& e, const Rat& c);
  std::map<Exponent, Rat> terms_;
};

}  // namespace tropweil
