#include <catch2/catch_amalgamated.hpp>

#include "dualbraid/ncp.hpp"

using namespace dualbraid;

TEST_CASE("noncrossing partition counts are Catalan numbers", "[ncp][oracle]") {
  REQUIRE(noncrossing_partitions(2).size() == 2);
  REQUIRE(noncrossing_partitions(3).size() == 5);
  REQUIRE(noncrossing_partitions(4).size() == 14);
  REQUIRE(noncrossing_partitions(5).size() == 42);
  REQUIRE(noncrossing_partitions(6).size() == 132);
}

TEST_CASE("symmetric noncrossing partition counts are central binomials", "[ncp][oracle]") {
  // |NC_B(n)| = C(2n, n)
  REQUIRE(symmetric_noncrossing_partitions(4).size() == 6);
  REQUIRE(symmetric_noncrossing_partitions(6).size() == 20);
  REQUIRE(symmetric_noncrossing_partitions(8).size() == 70);
}

TEST_CASE("crossing predicate: the classic 13|24 example", "[ncp]") {
  SetPartition crossing{4, {{0, 2}, {1, 3}}};
  REQUIRE(!crossing.noncrossing());
  SetPartition nested{4, {{0, 3}, {1, 2}}};
  REQUIRE(nested.noncrossing());
  SetPartition disjoint{4, {{0, 1}, {2, 3}}};
  REQUIRE(disjoint.noncrossing());
}

TEST_CASE("type A model matches P_c with covers, small n", "[ncp]") {
  for (int n : {2, 3, 4, 5}) {
    CAPTURE(n);
    NcpModel model = ncp_model_a(n);
    REQUIRE(model.partitions.size() == size_t(catalan_number(model.ctx->type())));
    NcpReport report = ncp_isomorphism_check(model);
    CAPTURE(report.failures);
    REQUIRE(report.passed());
  }
}

TEST_CASE("14-element model for the 4-cycle", "[ncp][derived]") {
  NcpModel model = ncp_model_a(4);
  REQUIRE(model.partitions.size() == 14);
  REQUIRE(model.pc.size() == 14);
  // one-block partition maps to the Coxeter element, discrete to identity
  for (size_t i = 0; i < model.partitions.size(); ++i) {
    if (model.partitions[i].num_blocks() == 1)
      REQUIRE(model.pc_index[i] == model.pc.top());
    if (model.partitions[i].num_blocks() == 4)
      REQUIRE(model.pc_index[i] == 0);
  }
}

TEST_CASE("type B model matches P_c with covers, small n", "[ncp]") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    NcpModel model = ncp_model_b(n);
    REQUIRE(model.partitions.size() == size_t(catalan_number(model.ctx->type())));
    NcpReport report = ncp_isomorphism_check(model);
    CAPTURE(report.failures);
    REQUIRE(report.passed());
  }
}

TEST_CASE("model Coxeter elements are genuine Coxeter elements", "[ncp]") {
  NcpModel a = ncp_model_a(5);
  REQUIRE(a.ctx->order(a.model_coxeter) == 5);
  REQUIRE(a.ctx->reflection_length(a.model_coxeter) == 4);
  NcpModel b = ncp_model_b(3);
  REQUIRE(b.ctx->order(b.model_coxeter) == 6);
  REQUIRE(b.ctx->reflection_length(b.model_coxeter) == 3);
}
