#include <gtest/gtest.h>

#include "io.hpp"
#include "tropweil/sampling.hpp"

using namespace tropweil;
using io::json;

TEST(Rationals, StringsAndIntegers) {
  EXPECT_EQ(io::rat_str(Rat(-1, 2)), "-1/2");
  EXPECT_EQ(io::rat_from(json("3/6")), Rat(1, 2));
  EXPECT_EQ(io::rat_from(json(4)), Rat(4));
  EXPECT_THROW(io::rat_from(json("1/0")), io::InputError);
  EXPECT_THROW(io::rat_from(json("abc")), io::InputError);
  EXPECT_THROW(io::rat_from(json::array()), io::InputError);
  EXPECT_THROW(io::rat_vector(json::array({1, 2}), 3, "v"), io::InputError);
}

TEST(ChainJson, RoundTrip) {
  Sampler rng(41);
  for (int i = 0; i < 20; ++i) {
    Chain c;
    c.d = 2;
    c.cells = {rng.cell(), rng.cell()};
    c.record_denominators();
    Chain back = io::chain_from_json(io::chain_to_json(c));
    EXPECT_EQ(back.d, 2);
    EXPECT_EQ(vol_chain(back), vol_chain(c));
    EXPECT_EQ(io::chain_to_json(back), io::chain_to_json(c));
  }
}

TEST(ChainJson, RejectsMalformedInput) {
  EXPECT_THROW(io::chain_from_json(json::object()), io::InputError);
  json bad = {{"d", 1}, {"cells", json::array({{{"type", "hexagon"}}})}};
  EXPECT_ANY_THROW(io::chain_from_json(bad));
  json short_x = {{"d", 1},
                  {"cells", json::array({{{"type", "triangle"},
                                          {"x", json::array({0, 0})},
                                          {"s", {1, 0, 0, 0}},
                                          {"u", {1, 0, 0, 0}},
                                          {"v", {0, 1, 0, 0}}}})}};
  EXPECT_THROW(io::chain_from_json(short_x), io::InputError);
}

TEST(Sublattices, NamedArgument) {
  auto l = io::sublattice_from_arg("theta,w1");
  EXPECT_TRUE(l.is_proper());
  EXPECT_EQ(l.in_W().rank(), 2u);
  auto j = io::sublattice_json(l);
  EXPECT_TRUE(j.at("proper").get<bool>());
  EXPECT_ANY_THROW(io::sublattice_from_arg("nonsense"));
}

TEST(CertificateJson, RoundTripAndHash) {
  RationalCertificate c;
  c.g = RatVector(210, 0);
  c.g[5] = Rat(1, 3);
  c.y = RatVector(7, 0);
  c.y[2] = -2;
  c.value = Rat(5, 7);
  json j = io::certificate_json(c);
  EXPECT_EQ(j.at("kind"), "rational");
  RationalCertificate back = io::certificate_from_json(j);
  EXPECT_EQ(back.g, c.g);
  EXPECT_EQ(back.y, c.y);
  EXPECT_EQ(back.value, c.value);
  EXPECT_EQ(io::content_hash(j), io::content_hash(io::certificate_json(back)));
  EXPECT_EQ(io::content_hash(j).size(), 64u);
}

TEST(Hash, KnownDigest) {
  EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
