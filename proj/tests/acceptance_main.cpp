// Acceptance gate: one pass/fail line per criterion.
//
// Each criterion re-derives its expectations from scratch (no doctest): golden
// end-to-end runs, the imported-matrix tier, the point-count oracle, the
// cross-cutting property suite, and the stability suite.  Exit code = number
// of failed criteria.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "cobs/pipeline.hpp"

using namespace cobs;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit Criterion(std::string n) : name(std::move(n)) {}
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void check_budget(double limit_s) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "runtime %.1fs exceeds the %.0fs budget", secs, limit_s);
    require(secs < limit_s, buf);
  }
  void finish() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s: %s (%.1fs)\n", name.c_str(), pass ? "PASS" : "FAIL", secs);
    for (const auto& n : notes) std::printf("    - %s\n", n.c_str());
    if (!pass) ++failures;
  }
};

const char* kGenus2 = "4*x^5 - 36*x^4 + 56*x^3 - 76*x^2 + 44*x - 23";
const char* kGenus3 = "x*y^3 + x^3*z - x*y^2*z + x^2*z^2 + y^2*z^2 - y*z^3";
const char* kQuartic43 = "-y^4 + x^3*z + 2*x^2*z^2 - x*z^3";
const char* kK3 = "y^4 - x^3*z + y*z^3 + z*w^3 + w^4";

std::string poly_str(const IntPoly& P) {
  std::ostringstream os;
  for (size_t i = 0; i < P.size(); ++i) os << (i ? " " : "") << P[i].get_str();
  return os.str();
}

IntPoly poly_from_json(const nlohmann::json& a) {
  IntPoly P;
  for (const auto& c : a) P.emplace_back(c.get<std::string>());
  return P;
}

std::map<std::string, int> factor_multiset(const nlohmann::json& report) {
  std::map<std::string, int> out;
  for (const auto& f : report.at("factors")) out[f[0].get<std::string>()] += f[1].get<int>();
  return out;
}

std::multiset<int> int_multiset(const nlohmann::json& a) {
  std::multiset<int> out;
  for (const auto& v : a) out.insert(v.get<int>());
  return out;
}

nlohmann::json run_curve_cfg(const char* poly, const char* mode, long p, int prec) {
  RunConfig cfg;
  cfg.poly = poly;
  cfg.mode = mode;
  cfg.p = p;
  cfg.precision = prec;
  return run(cfg);
}

// The paper-printed 6x6 Frobenius on H^2 of the genus-2 Jacobian at p = 31.
std::vector<std::vector<Int>> jacobian_h2_31() {
  auto e = [](long m, long u) -> Int { return Int(m) * u; };
  return {{e(961, 19), e(31, 660), e(31, 776), e(31, 843), e(31, 506), Int(22499)},
          {e(961, 18), e(31, 250), e(31, 459), e(31, 270), e(31, 683), Int(10699)},
          {e(961, 3), e(31, 154), e(31, 636), e(31, 261), e(961, 24), Int(3010)},
          {e(961, 22), e(31, 557), e(31, 664), e(31, 392), e(961, 23), Int(10438)},
          {e(961, 30), e(31, 77), e(31, 516), e(961, 26), e(31, 449), Int(3650)},
          {e(961, 7), e(31, 668), e(31, 509), e(31, 277), e(31, 513), Int(17591)}};
}

// Brute-force point count of a projective plane curve over F_p.
long plane_curve_points(const GradedPoly& f, long p) {
  auto eval = [&](long x, long y, long z) {
    long acc = 0;
    for (const auto& [m, c] : f.coeffs) {
      long t = mpz_fdiv_ui(c.get_mpz_t(), p);
      for (int k = 0; k < m.e[0]; ++k) t = t * x % p;
      for (int k = 0; k < m.e[1]; ++k) t = t * y % p;
      for (int k = 0; k < m.e[2]; ++k) t = t * z % p;
      acc = (acc + t) % p;
    }
    return acc;
  };
  long count = 0;
  for (long y = 0; y < p; ++y)
    for (long z = 0; z < p; ++z)
      if (eval(1, y, z) == 0) ++count;
  for (long z = 0; z < p; ++z)
    if (eval(0, 1, z) == 0) ++count;
  if (eval(0, 0, 1) == 0) ++count;
  return count;
}

// Functional-equation identity of a lifted polynomial, exact integers.
bool functional_equation_holds(const IntPoly& P, const Int& q, int w, int sign) {
  int m = ip_deg(P);
  for (int i = 0; i + i <= m; ++i) {
    Int rhs = pow_int(q, static_cast<unsigned long>((static_cast<long>(m - 2 * i) * w) / 2)) *
              P[static_cast<size_t>(i)];
    if (P[static_cast<size_t>(m - i)] != (sign == 1 ? rhs : -rhs)) return false;
  }
  return true;
}

bool reassembles(const IntPoly& chi) {
  auto split = cyclotomic_split(chi);
  IntPoly prod = split.h;
  for (const auto& f : split.factors)
    for (int k = 0; k < f.gamma; ++k) prod = ip_mul(prod, f.phi);
  return prod == chi;
}

}  // namespace

// ---------------------------------------------------------------------------

static nlohmann::json g2_report, g3_report, wedge_report, tensor_report;

void criterion1() {
  Criterion c("criterion 1 (genus-2 golden run)");
  g2_report = run_curve_cfg(kGenus2, "jacobian", 31, 3);
  IntPoly lifted = poly_from_json(g2_report["provenance"]["lifted_charpoly"]);
  IntPoly pinned = {Int(1), Int(-3), Int(14), Int(-93), Int(961)};
  c.require(lifted == pinned,
            "lifted P1 is [" + poly_str(lifted) + "], not the pinned [" + poly_str(pinned) +
                "]; independent brute-force counts #C(F_31) = 42 and #C(F_961) = 998 "
                "confirm the computed polynomial, so the pinned value belongs to a "
                "different curve than the stated equation (upstream fixture "
                "inconsistency; see also criterion 5, where the matrix ecosystem of "
                "the pinned polynomial is reproduced exactly)");
  c.require(g2_report["bound"] == 1, "bound != 1");
  c.require(g2_report["rank T(X_Fpbar)"] == 2, "rank_T != 2");
  c.require(factor_multiset(g2_report) == std::map<std::string, int>{{"t - 1", 2}},
            "factors != [(t-1, 2)]");
  c.require(int_multiset(g2_report["dim Ti"]) == std::multiset<int>{2}, "dim Ti != [2]");
  c.require(int_multiset(g2_report["dim Li"]) == std::multiset<int>{1}, "dim Li != [1]");
  c.check_budget(10.0);
  c.finish();
}

void criterion2() {
  Criterion c("criterion 2 (genus-3 golden run)");
  g3_report = run_curve_cfg(kGenus3, "jacobian", 31, 3);
  IntPoly lifted = poly_from_json(g3_report["provenance"]["lifted_charpoly"]);
  IntPoly pinned = {Int(1), Int(0), Int(78), Int(408), Int(2418), Int(7688), Int(29791)};
  c.require(lifted == pinned,
            "lifted P1 is [" + poly_str(lifted) + "], not the pinned [" + poly_str(pinned) +
                "]; the polynomials differ only in the t-coefficient (8 vs 0), "
                "brute-force #C(F_31) = 40 forces trace -8, and the pinned polynomial "
                "violates its own functional equation filtration consistency "
                "(upstream fixture drops the t term)");
  auto split = cyclotomic_split(
      scaled_charpoly(poly_from_json(g3_report["provenance"]["induced_charpoly"]), Int(31), 1));
  bool structure = split.factors.size() == 1 && split.factors[0].index == 1 &&
                   split.factors[0].gamma == 3;
  c.require(structure, "H^2 cyclotomic part is not (t-1)^3");
  c.require(ip_deg(split.h) == 12,
            "non-cyclotomic H^2 factor has degree " + std::to_string(ip_deg(split.h)) +
                "; H^2 of a genus-3 Jacobian has dimension 15, so after (t-1)^3 the "
                "remainder has degree 12 (the stated 6 is not achievable for any "
                "genus-3 curve)");
  c.require(g3_report["bound"] == 1, "bound != 1");
  c.require(int_multiset(g3_report["dim Ti"]) == std::multiset<int>{3}, "dim Ti != [3]");
  c.require(int_multiset(g3_report["dim Li"]) == std::multiset<int>{1}, "dim Li != [1]");
  int rank = g3_report["dim Ti"][0].get<int>() - g3_report["dim Li"][0].get<int>();
  c.require(rank >= 2, "obstruction rank lower bound < 2");
  c.check_budget(120.0);
  c.finish();
}

void criterion3() {
  Criterion c("criterion 3 (tensor golden run)");
  wedge_report = run_curve_cfg(kQuartic43, "jacobian", 43, 4);
  tensor_report = run_curve_cfg(kQuartic43, "tensor", 43, 4);
  c.require(tensor_report["bound"] == 9, "tensor bound != 9");
  c.require(factor_multiset(tensor_report) ==
                std::map<std::string, int>{{"t - 1", 6}, {"t + 1", 4}, {"t^2 + 1", 4}},
            "tensor factor multiset mismatch");
  c.require(int_multiset(tensor_report["dim Li"]) == std::multiset<int>{2, 3, 4},
            "tensor dim Li multiset != {2,3,4}");
  c.require(wedge_report["bound"] == 5, "wedge bound != 5");
  c.require(factor_multiset(wedge_report) ==
                std::map<std::string, int>{{"t - 1", 3}, {"t + 1", 2}, {"t^2 + 1", 1}},
            "wedge factor multiset mismatch");
  c.require(int_multiset(wedge_report["dim Li"]) == std::multiset<int>{1, 2, 2},
            "wedge dim Li multiset != {1,2,2}");
  c.check_budget(600.0);
  c.finish();
}

void criterion4() {
  Criterion c("criterion 4 (K3 golden run, extended tier)");
  RunConfig cfg;
  cfg.poly = kK3;
  cfg.mode = "surface";
  cfg.p = 89;
  cfg.precision = 3;
  try {
    auto j = run(cfg);
    c.require(j["bound"] == 4, "bound != 4");
    c.require(int_multiset(j["dim Ti"]) == std::multiset<int>{1, 1, 4, 4}, "dim Ti mismatch");
    c.require(int_multiset(j["dim Li"]) == std::multiset<int>{0, 0, 1, 3}, "dim Li mismatch");
  } catch (const ResourceLimit& e) {
    c.require(false,
              std::string("not reachable on this machine: ") + e.what() +
                  ".  Determining the 22-class weight-2 characteristic polynomial at "
                  "p = 89 requires 15 p-adic digits, and the correctness-first "
                  "reduction backend needs a terabyte-scale series workspace at that "
                  "precision; the run fails fast instead of thrashing.");
  }
  c.finish();
}

void criterion5() {
  Criterion c("criterion 5 (imported-matrix tier)");
  PadicContext ctx(Int(31), 3);
  auto F = jacobian_h2_31();
  CycFactor f1{1, cyclotomic(1), 2};
  auto tf = tate_basis(f1, 2, F, Int(31), 1, ctx);
  c.require(tf.basis.cols() == 2 && !tf.observed_mismatch, "T_1 basis is not 2-dimensional");
  // Column equivalence with the printed (v1, v2) mod 31^2: both spans are free
  // of rank 2 with unit pivots, so a rank-2 union certifies equality.
  PadicContext c2(Int(31), 2);
  std::vector<std::vector<Int>> rows = {{Int(356), Int(37), Int(831), Int(0), Int(295), Int(31)},
                                        {Int(4), Int(957), Int(3), Int(1), Int(0), Int(0)}};
  for (int j = 0; j < 2; ++j) {
    std::vector<Int> row;
    for (int i = 0; i < 6; ++i) row.push_back(tf.basis.at(i, j));
    rows.push_back(row);
  }
  auto h = howell_form(PadicMatrix::from_rows(c2, rows));
  bool units = true;
  for (int v : h.pivot_valuations) units = units && v == 0;
  c.require(units && h.pivots.size() == 2,
            "computed T_1 basis is not column-equivalent to the printed (v1, v2)");
  // pi_T = (31, 0) mod 31^2 up to basis: entries divisible by 31, not all by 31^2.
  auto proj = projection_matrix(ctx, 6, {5});
  auto pi = pi_i_matrix(tf, F, proj);
  bool div31 = true, unit31 = false;
  for (int j = 0; j < 2; ++j) {
    div31 = div31 && mod_pos(pi.at(0, j), Int(31)) == 0;
    unit31 = unit31 || mod_pos(pi.at(0, j), Int(961)) != 0;
  }
  c.require(div31 && unit31 && rank_lower_bound(pi) == 1,
            "pi_T is not (31, 0) mod 31^2 up to basis");
  // The genus-3 printed pi_T certifies rank >= 2.
  auto pi3 = PadicMatrix::from_rows(ctx, {{Int(31) * 240, Int(0), Int(31)},
                                          {Int(31) * 515, Int(31), Int(0)},
                                          {Int(0), Int(0), Int(0)}});
  c.require(rank_lower_bound(pi3) == 2, "genus-3 pi_T rank lower bound != 2");
  c.check_budget(1.0);
  c.finish();
}

void criterion6() {
  Criterion c("criterion 6 (point-count oracle suite)");
  std::mt19937 rng(20260823);
  std::uniform_int_distribution<int> dist(-10, 10);
  int total = 0;
  for (long p : {31L, 43L}) {
    for (int d : {3, 4}) {
      int done = 0;
      while (done < 3) {
        GradedPoly f;
        f.vars = 3;
        for (const auto& m : monomials_of_degree(3, d)) {
          int coef = dist(rng);
          if (coef) f.add_term(m, coef);
        }
        if (f.is_zero() || f.degree != d) continue;
        HypersurfaceInput in;
        try {
          in = HypersurfaceInput::plane_curve(f);
        } catch (const BadInput&) {
          continue;
        }
        if (!good_prime_check(in, p, 0).ok) continue;
        auto F = frobenius_matrix(in, p, 2);
        Int trace = 0;
        for (int i = 0; i < F.dim; ++i)
          trace += F.entries[static_cast<size_t>(i)][static_cast<size_t>(i)];
        Int M = pow_int(Int(p), static_cast<unsigned long>(F.prec));
        Int a = symmetric_lift(mod_pos(trace, M), M);
        long pts = plane_curve_points(f, p);
        c.require(a == Int(p + 1 - pts),
                  "trace mismatch at p=" + std::to_string(p) + " d=" + std::to_string(d));
        ++done;
        ++total;
      }
    }
  }
  c.require(total >= 10, "fewer than 10 curves checked");
  c.finish();
}

void criterion7() {
  Criterion c("criterion 7 (property suites)");
  // Functional equation, exact, on every lifted polynomial from criteria 1-3.
  struct Lifted {
    nlohmann::json* rep;
    int w;
  };
  for (auto [rep, w] : {Lifted{&g2_report, 1}, Lifted{&g3_report, 1}, Lifted{&wedge_report, 1},
                        Lifted{&tensor_report, 1}}) {
    IntPoly P = poly_from_json((*rep)["provenance"]["lifted_charpoly"]);
    Int q((*rep)["p"].get<std::string>());
    int sign = (*rep)["provenance"]["sign"].get<int>();
    c.require(functional_equation_holds(P, q, w, sign), "functional equation fails");
  }
  // Cyclotomic reassembly h * prod Phi_i^gamma = chi, exact, on every fixture.
  for (auto* rep : {&wedge_report, &tensor_report}) {
    IntPoly P2 = poly_from_json((*rep)["provenance"]["induced_charpoly"]);
    c.require(reassembles(scaled_charpoly(P2, Int(43), 1)), "reassembly fails");
  }
  c.require(reassembles(scaled_charpoly(
                poly_from_json(g3_report["provenance"]["induced_charpoly"]), Int(31), 1)),
            "reassembly fails (genus 3)");
  // Galois bound <= vanilla bound on the golden fixtures.
  for (auto [poly, mode, p, prec] :
       {std::tuple{kGenus2, "jacobian", 31L, 3}, std::tuple{kQuartic43, "tensor", 43L, 4}}) {
    RunConfig cfg;
    cfg.poly = poly;
    cfg.mode = mode;
    cfg.p = p;
    cfg.precision = prec;
    cfg.vanilla = true;
    auto v = run(cfg);
    cfg.vanilla = false;
    auto g = run(cfg);
    c.require(g["bound"].get<int>() <= v["bound"].get<int>(), "galois bound > vanilla bound");
  }
  // Bound monotone non-increasing in the requested precision.
  {
    auto a = run_curve_cfg(kGenus2, "jacobian", 31, 3);
    auto b = run_curve_cfg(kGenus2, "jacobian", 31, 4);
    c.require(b["bound"].get<int>() <= a["bound"].get<int>(), "bound grew with precision");
  }
  // kernel * matrix = 0 at trusted precision, on the imported fixture.
  {
    PadicContext ctx(Int(31), 3);
    auto Fm = PadicMatrix::from_rows(ctx, jacobian_h2_31());
    CycFactor f1{1, cyclotomic(1), 2};
    auto tf = tate_basis(f1, 2, jacobian_h2_31(), Int(31), 1, ctx);
    // Cleared matrix of Phi_1: F - 31 I.
    auto A = Fm.add_scaled_identity(Int(-31));
    auto prod = A.multiply(tf.basis);
    Int M = pow_int(Int(31), static_cast<unsigned long>(prod.trusted_digits()));
    bool zero = true;
    for (int i = 0; i < prod.rows(); ++i)
      for (int j = 0; j < prod.cols(); ++j) zero = zero && mod_pos(prod.at(i, j), M) == 0;
    c.require(zero && prod.trusted_digits() >= 1, "kernel * matrix != 0 at trusted digits");
  }
  // Howell pivot valuations against the exact Smith-form oracle, >= 100 cases.
  {
    std::mt19937_64 rng(424242);
    PadicContext ctx(Int(5), 4);
    int agree = 0;
    for (int trial = 0; trial < 120; ++trial) {
      int r = 2 + static_cast<int>(rng() % 5);
      int cc = 2 + static_cast<int>(rng() % 5);
      std::vector<std::vector<Int>> M(static_cast<size_t>(r),
                                      std::vector<Int>(static_cast<size_t>(cc)));
      for (auto& row : M)
        for (auto& x : row) {
          x = Int(static_cast<long>(rng() % 625));
          if (trial % 2 && rng() % 3 == 0) x *= 5;
        }
      auto h = howell_form(PadicMatrix::from_rows(ctx, M));
      std::vector<int> got = h.pivot_valuations;
      std::sort(got.begin(), got.end());
      std::vector<int> oracle;
      for (const Int& d : elementary_divisors(M)) {
        int v = valuation(d, ctx.p, ctx.N);
        if (v < ctx.N) oracle.push_back(v);
      }
      std::sort(oracle.begin(), oracle.end());
      if (got == oracle) ++agree;
    }
    c.require(agree == 120, "howell pivots disagree with the Smith oracle");
  }
  c.finish();
}

void criterion8() {
  Criterion c("criterion 8 (stability under truncation+1 and precision+1)");
  struct Fixture {
    HypersurfaceInput in;
    long p;
    int N;
    int policy_j;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({HypersurfaceInput::hyperelliptic(parse_univariate(kGenus2)), 31, 3, 5});
  fixtures.push_back({HypersurfaceInput::plane_curve(parse_homogeneous(kGenus3, 3)), 31, 3, 6});
  fixtures.push_back({HypersurfaceInput::plane_curve(parse_homogeneous(kQuartic43, 3)), 43, 4, 7});
  for (const auto& fx : fixtures) {
    auto base = frobenius_matrix(fx.in, fx.p, fx.N);
    FrobeniusOptions opt;
    opt.truncation = fx.policy_j + 1;
    auto jt = frobenius_matrix(fx.in, fx.p, fx.N, opt);
    auto np = frobenius_matrix(fx.in, fx.p, fx.N + 1);
    for (const auto* other : {&jt, &np}) {
      int trusted = std::min(base.prec, other->prec);
      Int M = pow_int(Int(fx.p), static_cast<unsigned long>(trusted));
      bool same = true;
      for (int i = 0; i < base.dim; ++i)
        for (int j = 0; j < base.dim; ++j)
          same = same &&
                 mod_pos(base.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                             other->entries[static_cast<size_t>(i)][static_cast<size_t>(j)],
                         M) == 0;
      c.require(same, "trusted digits changed at p=" + std::to_string(fx.p));
    }
  }
  c.finish();
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d/8 criteria pass\n", 8 - failures);
  return failures;
}
