#include "io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace tropweil::io {
namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

template <class V>
V integral_vector(const json& j, const char* what) {
  RatVector r = rat_vector(j, V::size(), what);
  for (const auto& q : r)
    if (q.get_den() != 1) throw InputError(std::string(what) + ": entries must be integers");
  return V::from_vector(r);
}

std::string wedge_key(const Wedge2& w) {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < idx::kWedge2; ++i) {
    if (sgn(w[i]) == 0) continue;
    out << (first ? "" : " ") << rat_str(w[i]) << "*" << idx::wedge_name(i);
    first = false;
  }
  return first ? "0" : out.str();
}

std::string row_matrix(const RatVector& v) {
  RatMatrix m(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m.set(0, i, v[i]);
  return matrix_to_string(m);
}

RatVector row_from_matrix(const json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + ": expected a matrix string");
  RatMatrix m;
  try {
    m = matrix_from_string(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
  if (m.rows() != 1) throw InputError(std::string(what) + ": expected a single row");
  return m.row(0);
}

}  // namespace

std::string rat_str(const Rat& q) { return canonical(q).get_str(); }

Rat rat_from(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw InputError("expected a rational as an integer or a \"p/q\" string");
  Rat q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
    throw InputError("bad rational '" + j.get<std::string>() + "'");
  return canonical(q);
}

json int_list(const RatVector& v) {
  json out = json::array();
  for (const auto& q : v) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
      out.push_back(q.get_num().get_si());
    else
      out.push_back(rat_str(q));
  }
  return out;
}

json rat_list(const RatVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rat_str(q));
  return out;
}

RatVector rat_vector(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw InputError(std::string(what) + ": expected " + std::to_string(n) + " entries");
  RatVector out;
  for (const auto& e : j) out.push_back(rat_from(e));
  return out;
}

json class_t_json(const ClassT& t) {
  json out = json::object();
  for (int i = 0; i < idx::kT; ++i)
    if (sgn(t[i]) != 0) out[idx::t_name(i)] = rat_str(t[i]);
  return out;
}

json class_h22_json(const ClassH22& c) {
  json out = json::object();
  for (int i = 0; i < idx::kH22; ++i)
    if (sgn(c[i]) != 0) out[idx::h22_name(i)] = rat_str(c[i]);
  return out;
}

json flags_json(const FlagSum& f) {
  json out = json::array();
  for (const auto& [key, value] : f.flags()) {
    RatVector dir(key.second.begin(), key.second.end());
    out.push_back({{"vertex", rat_list(key.first)}, {"direction", rat_list(dir)}, {"face", wedge_key(value)}});
  }
  return out;
}

Chain chain_from_json(const json& j) {
  Chain c;
  const json& d = field(j, "d", "chain");
  if (!d.is_number_integer() || d.get<int>() < 1) throw InputError("chain: d must be a positive integer");
  c.d = d.get<int>();
  const json& cells = field(j, "cells", "chain");
  if (!cells.is_array()) throw InputError("chain: cells must be an array");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const json& e = cells[i];
    std::string where = "cell " + std::to_string(i);
    std::string type = field(e, "type", where).get<std::string>();
    XVector x = XVector::from_vector(rat_vector(field(e, "x", where), idx::kX, "x"));
    GpVector s = integral_vector<GpVector>(field(e, "s", where), "s");
    G2Vector u = integral_vector<G2Vector>(field(e, "u", where), "u");
    G2Vector v = integral_vector<G2Vector>(field(e, "v", where), "v");
    Rat w = e.contains("weight") ? rat_from(e.at("weight")) : Rat(1);
    Cell cell;
    if (type == "triangle")
      cell = TriangleCell{x, s, u, v, w};
    else if (type == "parallelogram")
      cell = ParallelogramCell{x, s, integral_vector<GpVector>(field(e, "t", where), "t"), u, v, w};
    else
      throw InputError(where + ": unknown cell type '" + type + "'");
    c.cells.push_back(std::move(cell));
  }
  c.record_denominators();
  return c;
}

json chain_to_json(const Chain& c) {
  json cells = json::array();
  for (const auto& cell : c.cells) {
    std::visit(
        [&](const auto& k) {
          json e = {{"x", rat_list(k.x.to_vector())},
                    {"s", int_list(k.s.to_vector())},
                    {"u", int_list(k.u.to_vector())},
                    {"v", int_list(k.v.to_vector())},
                    {"weight", rat_str(k.weight)}};
          if constexpr (std::is_same_v<std::decay_t<decltype(k)>, ParallelogramCell>) {
            e["type"] = "parallelogram";
            e["t"] = int_list(k.t.to_vector());
          } else {
            e["type"] = "triangle";
          }
          cells.push_back(std::move(e));
        },
        cell);
  }
  return {{"d", c.d}, {"cells", cells}};
}

Polygon polygon_from_json(const json& j) {
  Polygon p;
  p.d = field(j, "d", "polygon").get<int>();
  if (p.d < 1) throw InputError("polygon: d must be positive");
  const json& loop = field(j, "loop", "polygon");
  if (!loop.is_array()) throw InputError("polygon: loop must be an array");
  for (const auto& v : loop) p.loop.push_back(XVector::from_vector(rat_vector(v, idx::kX, "loop vertex")));
  return p;
}

SublatticeSpec sublattice_from_arg(const std::string& arg) {
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") {
    json j = read_json_file(arg);
    const json& gens = field(j, "generators", arg);
    if (!gens.is_array()) throw InputError(arg + ": generators must be an array of triples");
    SublatticeSpec s{j.value("name", arg), RatMatrix(3, gens.size())};
    for (std::size_t c = 0; c < gens.size(); ++c) {
      RatVector col = rat_vector(gens[c], 3, "generator");
      for (int i = 0; i < 3; ++i) s.gens.set(i, c, col[i]);
    }
    return s;
  }
  try {
    return SublatticeSpec::named(arg);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json sublattice_json(const SublatticeSpec& l) {
  json gens = json::array();
  for (std::size_t c = 0; c < l.gens.cols(); ++c) gens.push_back(rat_list(l.gens.column(c)));
  return {{"name", l.name}, {"generators", gens}, {"proper", l.is_proper()}};
}

json certificate_json(const RationalCertificate& c) {
  return {{"kind", "rational"}, {"g", row_matrix(c.g)}, {"y", row_matrix(c.y)}, {"value", rat_str(c.value)}};
}

RationalCertificate certificate_from_json(const json& j) {
  RationalCertificate c;
  c.g = row_from_matrix(field(j, "g", "certificate"), "g");
  c.y = row_from_matrix(field(j, "y", "certificate"), "y");
  c.value = rat_from(field(j, "value", "certificate"));
  return c;
}

json row_obstruction_json(const RowObstruction& r) {
  return {{"kind", "divisibility"},
          {"delta", r.delta.get_str()},
          {"rhs", row_matrix(RatVector(r.rhs.begin(), r.rhs.end()))},
          {"reason", r.reason}};
}

json solution_json(const ResidualSolution& s) {
  json residuals = json::object();
  for (const auto& [row, c] : s.residuals)
    residuals[std::to_string(row)] = {c[0].get_str(), c[1].get_str(), c[2].get_str()};
  std::size_t entries = 0;
  for (const auto& [i, v] : s.lambda.values)
    for (std::size_t t = 0; t < v.size(); ++t) entries += sgn(v[t]) != 0;
  return {{"lambda_entries", entries},
          {"residuals", residuals},
          {"residual_lattice", matrix_to_string(s.residual_lattice.basis())},
          {"residual_lattice_rank", s.residual_lattice.rank()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string content_hash(const json& j) { return sha256_hex(j.dump()); }

}  // namespace tropweil::io
