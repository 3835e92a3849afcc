#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobs/obstruction.hpp"

using namespace cobs;

namespace {

// The 6x6 Frobenius on H^2 of the genus-2 Jacobian at p = 31, mod 31^3
// (entries written p-adically as 31^m * unit).
std::vector<std::vector<Int>> jacobian_h2_31() {
  auto e = [](long m, long u) -> Int { return Int(m) * u; };
  return {
      {e(961, 19), e(31, 660), e(31, 776), e(31, 843), e(31, 506), Int(22499)},
      {e(961, 18), e(31, 250), e(31, 459), e(31, 270), e(31, 683), Int(10699)},
      {e(961, 3), e(31, 154), e(31, 636), e(31, 261), e(961, 24), Int(3010)},
      {e(961, 22), e(31, 557), e(31, 664), e(31, 392), e(961, 23), Int(10438)},
      {e(961, 30), e(31, 77), e(31, 516), e(961, 26), e(31, 449), Int(3650)},
      {e(961, 7), e(31, 668), e(31, 509), e(31, 277), e(31, 513), Int(17591)}};
}

// Exact det(1 - t F) on H^2 of the same Jacobian (wedge square of the exact
// H^1 L-factor; independent of any basis).
IntPoly jacobian_h2_P() {
  return {Int(1),       Int(-14),      Int(-682),    Int(9610),
          Int(-655402), Int(-12929294), Int(887503681)};
}

// Count Howell pivots of a set of row vectors over Z/31^2, requiring all
// pivots to be units.
int unit_row_rank(const std::vector<std::vector<Int>>& rows) {
  PadicContext c2(Int(31), 2);
  auto h = howell_form(PadicMatrix::from_rows(c2, rows));
  for (int v : h.pivot_valuations) REQUIRE(v == 0);
  return static_cast<int>(h.pivots.size());
}

}  // namespace

TEST_CASE("obstruction rows of a quartic surface basis") {
  auto in = HypersurfaceInput::hypersurface(
      parse_homogeneous("y^4 - x^3*z + y*z^3 + z*w^3 + w^4", 4));
  auto basis = griffiths_basis(in, Int(89));
  REQUIRE(basis.size() == 21);
  REQUIRE(basis.polarization_slot);
  auto rows = obstruction_rows(basis);
  REQUIRE(rows.size() == 1);  // h^{0,2} = 1 for a K3
  CHECK(rows[0] == 20);       // the single top-degree coordinate, last block
  CHECK(basis.pole_orders[20] == 3);
}

TEST_CASE("obstruction rows of a quintic surface basis") {
  auto in = HypersurfaceInput::hypersurface(parse_homogeneous("x^5 + y^5 + z^5 + w^5", 4));
  auto basis = griffiths_basis(in, Int(13));
  REQUIRE(basis.size() == 52);
  CHECK(obstruction_rows(basis).size() == 4);  // h^{0,2} = 4 for a quintic
}

TEST_CASE("scaled charpoly clears denominators to the printed form") {
  // (t-1)^2 (31t^4 + 48t^3 + 43t^2 + 48t + 31), the Tate-twisted charpoly of
  // the Jacobian H^2 with denominators cleared.
  IntPoly want = ip_mul(ip_mul(cyclotomic(1), cyclotomic(1)),
                        {Int(31), Int(48), Int(43), Int(48), Int(31)});
  CHECK(scaled_charpoly(jacobian_h2_P(), Int(31), 1) == want);
  // Weight-1 case: clearing is trivial up to reversal for a curve L-factor.
  IntPoly P1 = {Int(1), Int(10), Int(68), Int(310), Int(961)};
  CHECK(scaled_charpoly(P1, Int(31), 0) ==
        IntPoly{Int(961), Int(310), Int(68), Int(10), Int(1)});
}

TEST_CASE("imported H^2 matrix is consistent with the exact L-factor") {
  PadicContext ctx(Int(31), 3);
  auto F = PadicMatrix::from_rows(ctx, jacobian_h2_31());
  auto chi = charpoly_mod_pN(F);  // det(tI - F), lowest degree first
  IntPoly P = jacobian_h2_P();
  for (int i = 0; i <= 6; ++i)  // P_i = coefficient of t^{6-i} in det(tI - F)
    CHECK(chi[static_cast<size_t>(6 - i)] ==
          mod_pos(P[static_cast<size_t>(i)], ctx.modulus));
}

TEST_CASE("tate basis of the (t-1) factor matches the printed kernel") {
  PadicContext ctx(Int(31), 3);
  auto F = jacobian_h2_31();
  CycFactor f{1, cyclotomic(1), 2};
  auto tf = tate_basis(f, 2, F, Int(31), 1, ctx);
  REQUIRE(tf.basis.cols() == 2);
  CHECK(tf.dim_Ti == 2);
  CHECK(!tf.observed_mismatch);
  CHECK(tf.basis.trusted_digits() >= 2);
  // Span equality with the printed v_1, v_2 mod 31^2: each side is free of
  // rank 2 with unit pivots, so equal union rank certifies equality.
  std::vector<std::vector<Int>> v = {{Int(356), Int(37), Int(831), Int(0), Int(295), Int(31)},
                                     {Int(4), Int(957), Int(3), Int(1), Int(0), Int(0)}};
  std::vector<std::vector<Int>> b;
  for (int j = 0; j < 2; ++j) {
    std::vector<Int> row;
    for (int i = 0; i < 6; ++i) row.push_back(tf.basis.at(i, j));
    b.push_back(row);
  }
  CHECK(unit_row_rank(v) == 2);
  CHECK(unit_row_rank(b) == 2);
  std::vector<std::vector<Int>> both = v;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(unit_row_rank(both) == 2);
}

TEST_CASE("pi_T on the imported Jacobian H^2 has certified rank 1") {
  PadicContext ctx(Int(31), 3);
  auto F = jacobian_h2_31();
  auto proj = projection_matrix(ctx, 6, {5});  // H^2 / F^1 = last coordinate
  CycFactor f{1, cyclotomic(1), 2};
  auto tf = tate_basis(f, 2, F, Int(31), 1, ctx);
  auto pi = pi_i_matrix(tf, F, proj);
  REQUIRE(pi.rows() == 1);
  REQUIRE(pi.cols() == 2);
  CHECK(rank_lower_bound(pi) == 1);
  // pi_T is (31, 0) mod 31^2 up to the basis choice: every entry is divisible
  // by 31, and at least one is a unit multiple of exactly 31.
  Int M2 = pow_int(Int(31), 2);
  bool some_unit_times_p = false;
  for (int j = 0; j < 2; ++j) {
    CHECK(mod_pos(pi.at(0, j), Int(31)) == 0);
    some_unit_times_p = some_unit_times_p || mod_pos(pi.at(0, j), M2) != 0;
  }
  CHECK(some_unit_times_p);
}

TEST_CASE("printed genus-3 pi_T certifies rank 2") {
  PadicContext ctx(Int(31), 3);
  auto pi = PadicMatrix::from_rows(
      ctx, {{Int(31) * 240, Int(0), Int(31)},
            {Int(31) * 515, Int(31), Int(0)},
            {Int(0), Int(0), Int(0)}});
  CHECK(rank_lower_bound(pi) == 2);
}

TEST_CASE("accumulate_bound reproduces the genus-2 Jacobian report") {
  auto F = jacobian_h2_31();
  IntPoly chi = scaled_charpoly(jacobian_h2_P(), Int(31), 1);
  auto split = cyclotomic_split(chi);
  PadicContext ctx(Int(31), 3);
  auto proj = projection_matrix(ctx, 6, {5});
  ObstructionOptions opt;
  opt.mode = "jacobian";
  auto rep = accumulate_bound(split, F, Int(31), 1, 3, proj, opt);
  CHECK(rep.bound == 1);
  CHECK(rep.rank_T == 2);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].factor == "t - 1");
  CHECK(rep.records[0].multiplicity == 2);
  CHECK(rep.records[0].dim_Ti == 2);
  CHECK(rep.records[0].dim_Li == 1);
  auto j = rep.to_json();
  CHECK(j["bound"] == 1);
  CHECK(j["rank T(X_Fpbar)"] == 2);
  CHECK(j["factors"][0][0] == "t - 1");
  CHECK(j["factors"][0][1] == 2);
  CHECK(j["dim Ti"][0] == 2);
  CHECK(j["dim Li"][0] == 1);
  CHECK(j["p"] == "31");
  CHECK(j["precision"] == 3);
  // Vanilla pass gives the same (already sharp) bound; galois <= vanilla.
  ObstructionOptions vopt = opt;
  vopt.galois = false;
  auto vrep = accumulate_bound(split, F, Int(31), 1, 3, proj, vopt);
  CHECK(vrep.bound == 1);
  CHECK(rep.bound <= vrep.bound);
}

TEST_CASE("toy fixtures: full kernels and unobstructed classes") {
  // F = q I: Phi_1 kernel is the whole space.
  PadicContext ctx(Int(31), 3);
  std::vector<std::vector<Int>> F = {{Int(31), Int(0), Int(0)},
                                     {Int(0), Int(31), Int(0)},
                                     {Int(0), Int(0), Int(31)}};
  CycFactor f{1, cyclotomic(1), 3};
  auto tf = tate_basis(f, 3, F, Int(31), 1, ctx);
  CHECK(tf.basis.cols() == 3);
  CHECK(!tf.observed_mismatch);
  // Zero obstruction: bound equals rank_T.
  auto proj0 = projection_matrix(ctx, 3, {});
  auto split = cyclotomic_split(scaled_charpoly(
      IntPoly{Int(1), Int(-93), Int(2883), Int(-29791)}, Int(31), 1));  // (1-31t)^3
  ObstructionOptions opt;
  opt.mode = "toy";
  auto rep = accumulate_bound(split, F, Int(31), 1, 3, proj0, opt);
  CHECK(rep.rank_T == 3);
  CHECK(rep.bound == 3);
  // A Frobenius-stable class inside F^r maps to zero.
  std::vector<std::vector<Int>> G = {{Int(31), Int(0)}, {Int(0), Int(2)}};
  CycFactor f1{1, cyclotomic(1), 1};
  auto tg = tate_basis(f1, 1, G, Int(31), 1, ctx);
  REQUIRE(tg.basis.cols() == 1);
  auto proj1 = projection_matrix(ctx, 2, {1});
  auto pi = pi_i_matrix(tg, G, proj1);
  CHECK(mod_pos(pi.at(0, 0), ctx.modulus) == 0);
  CHECK(rank_lower_bound(pi) == 0);
}
