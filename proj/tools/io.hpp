#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tropweil/chains.hpp"
#include "tropweil/obstruction.hpp"

namespace tropweil::io {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rationals are written as strings ("3", "-1/2"); integers are also accepted on input.
std::string rat_str(const Rat& q);
Rat rat_from(const json& j);
json rat_list(const RatVector& v);
json int_list(const RatVector& v);  // integral entries as JSON numbers
RatVector rat_vector(const json& j, std::size_t n, const char* what);

json class_t_json(const ClassT& t);    // sparse, keyed by "ab*e12*e34"
json class_h22_json(const ClassH22& c);  // sparse, keyed by "g12(x)e34"
json flags_json(const FlagSum& f);

// {"d": int, "cells": [{"type": "triangle" | "parallelogram", "x", "s", "t", "u", "v", "weight"}]}
Chain chain_from_json(const json& j);
json chain_to_json(const Chain& c);
// {"d": int, "loop": [[16 rationals], ...]}
struct Polygon {
  int d = 1;
  std::vector<XVector> loop;
};
Polygon polygon_from_json(const json& j);

// "w", "0", "theta", "theta,w1", ... or a JSON file {"name": .., "generators": [[theta, w1, w2], ...]}.
SublatticeSpec sublattice_from_arg(const std::string& arg);
json sublattice_json(const SublatticeSpec& l);

// Vectors are embedded as 1 x n matrices in the text format.
json certificate_json(const RationalCertificate& c);
RationalCertificate certificate_from_json(const json& j);
json row_obstruction_json(const RowObstruction& r);
json solution_json(const ResidualSolution& s);

json read_json_file(const std::string& path);
std::string sha256_hex(const std::string& data);
// Hash of the canonical (sorted-key, compact) serialization.
std::string content_hash(const json& j);

}  // namespace tropweil::io
