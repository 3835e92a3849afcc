#include "cobs/griffiths.hpp"

#include <algorithm>

namespace cobs {

std::string mode_name(InputMode m) {
  switch (m) {
    case InputMode::hypersurface: return "hypersurface";
    case InputMode::jacobian_plane_curve: return "jacobian-plane-curve";
    case InputMode::jacobian_hyperelliptic: return "jacobian-hyperelliptic";
  }
  return "?";
}

int HypersurfaceInput::genus() const {
  if (mode == InputMode::jacobian_hyperelliptic) return (d - 1) / 2;
  if (mode == InputMode::jacobian_plane_curve) return (d - 1) * (d - 2) / 2;
  throw BadInput("genus: not a curve input");
}

HypersurfaceInput HypersurfaceInput::hypersurface(const GradedPoly& f) {
  HypersurfaceInput in;
  in.mode = InputMode::hypersurface;
  in.f = f;
  in.n = f.vars - 2;
  in.d = f.degree;
  if (in.n < 1) throw BadInput("hypersurface: need at least 3 variables");
  if (in.n % 2 != 0)
    throw BadInput("hypersurface: middle Picard bound needs even dimension");
  return in;
}

HypersurfaceInput HypersurfaceInput::plane_curve(const GradedPoly& f) {
  HypersurfaceInput in;
  in.mode = InputMode::jacobian_plane_curve;
  in.f = f;
  in.n = 1;
  in.d = f.degree;
  if (f.vars != 3) throw BadInput("plane curve: need exactly 3 variables");
  if (in.d < 3) throw BadInput("plane curve: degree must be >= 3");
  return in;
}

HypersurfaceInput HypersurfaceInput::hyperelliptic(const IntPoly& f) {
  HypersurfaceInput in;
  in.mode = InputMode::jacobian_hyperelliptic;
  in.hf = f;
  in.n = 1;
  in.d = ip_deg(f);
  if (in.d < 3 || in.d % 2 == 0)
    throw BadInput("hyperelliptic: need odd degree >= 3 (odd-degree model y^2 = f(x))");
  return in;
}

namespace {

// Row rank of an integer matrix mod p (p < 2^31), plain Gauss.
int rank_mod_p(const std::vector<std::vector<Int>>& M0, long p) {
  if (M0.empty() || M0[0].empty()) return 0;
  int rows = static_cast<int>(M0.size()), cols = static_cast<int>(M0[0].size());
  std::vector<std::vector<int64_t>> A(rows, std::vector<int64_t>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A[i][j] = mpz_fdiv_ui(M0[i][j].get_mpz_t(), p);
  auto inv = [&](int64_t a) {
    int64_t r = 1, b = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (A[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[rank], A[piv]);
    int64_t u = inv(A[rank][c]);
    for (int j = c; j < cols; ++j) A[rank][j] = A[rank][j] * u % p;
    for (int i = rank + 1; i < rows; ++i) {
      if (A[i][c] == 0) continue;
      int64_t f = A[i][c];
      for (int j = c; j < cols; ++j) A[i][j] = ((A[i][j] - f * A[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::vector<GradedPoly> partials(const GradedPoly& f) {
  std::vector<GradedPoly> out;
  for (int i = 0; i < f.vars; ++i) out.push_back(gp_derivative(f, i));
  return out;
}

}  // namespace

// Pivot columns of the transposed Macaulay matrix over F_p at degree t, with
// columns in descending grevlex: pivot set = lead monomials of the degree-t
// piece of the Jacobian ideal, complement = standard monomials.
std::vector<bool> nonstandard_mask(const HypersurfaceInput& input, const Int& p, int t) {
  auto M = macaulay_matrix(partials(input.f), t);  // rows: R_t, cols: shifts
  long pl = p.get_si();
  int nrows = static_cast<int>(M.size());
  int ncols = nrows ? static_cast<int>(M[0].size()) : 0;
  // Row-reduce the transpose (rows = ideal generators in degree t).
  std::vector<std::vector<int64_t>> A(ncols, std::vector<int64_t>(nrows));
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) A[j][i] = mpz_fdiv_ui(M[i][j].get_mpz_t(), pl);
  auto inv = [&](int64_t a) {
    int64_t r = 1, b = a % pl, e = pl - 2;
    while (e) {
      if (e & 1) r = r * b % pl;
      b = b * b % pl;
      e >>= 1;
    }
    return r;
  };
  std::vector<bool> pivot(nrows, false);
  int rank = 0;
  for (int c = 0; c < nrows && rank < ncols; ++c) {
    int piv = -1;
    for (int i = rank; i < ncols; ++i)
      if (A[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[rank], A[piv]);
    int64_t u = inv(A[rank][c]);
    for (int j = c; j < nrows; ++j) A[rank][j] = A[rank][j] * u % pl;
    for (int i = rank + 1; i < ncols; ++i) {
      if (A[i][c] == 0) continue;
      int64_t f = A[i][c];
      for (int j = c; j < nrows; ++j) A[i][j] = ((A[i][j] - f * A[rank][j]) % pl + pl) % pl;
    }
    pivot[c] = true;
    ++rank;
  }
  return pivot;  // indexed by descending-grevlex rank in degree t
}

GoodPrime good_prime_check(const HypersurfaceInput& input, const Int& p, int char_bound) {
  GoodPrime res;
  int r = input.r(), n = input.n;
  Int floor_p = std::max<long>(std::max<long>(2 * r + 6, n + 1), char_bound);
  if (input.mode == InputMode::jacobian_hyperelliptic) {
    if (p == 2 || p <= floor_p) {
      res.reason = "BadCharacteristic";
      return res;
    }
    Int bad = discriminant(input.hf) * input.hf[static_cast<size_t>(input.d)];
    if (mpz_divisible_p(bad.get_mpz_t(), p.get_mpz_t())) {
      res.reason = "SingularReduction";
      return res;
    }
    res.ok = true;
    return res;
  }
  if (p <= floor_p) {
    res.reason = "BadCharacteristic";
    return res;
  }
  if (mpz_divisible_p(Int(input.d).get_mpz_t(), p.get_mpz_t())) {
    res.reason = "DividesDegree";
    return res;
  }
  // Smoothness over F_p: the Jacobian ring vanishes just past the socle.
  int t = (input.n + 2) * (input.d - 2) + 1;
  auto M = macaulay_matrix(partials(input.f), t);
  if (rank_mod_p(M, p.get_si()) != static_cast<int>(M.size())) {
    res.reason = "SingularReduction";
    return res;
  }
  res.ok = true;
  return res;
}

GriffithsBasis griffiths_basis(const HypersurfaceInput& input, const Int& p) {
  if (input.mode == InputMode::jacobian_hyperelliptic)
    throw BadInput("griffiths_basis: hyperelliptic mode uses the x^i dx/y basis");
  GriffithsBasis b;
  b.vars = input.n + 2;
  b.n = input.n;
  b.d = input.d;
  b.polarization_slot = input.mode == InputMode::hypersurface && input.n % 2 == 0;
  // Degrees N_j = (n+1-j)d - n - 2, ascending (j = n down to 0).
  for (int j = input.n; j >= 0; --j) {
    int t = (input.n + 1 - j) * input.d - input.n - 2;
    if (t < 0) {
      // Empty Hodge piece (d < (n+2)/(n+1-j), e.g. h^{2,0} of a cubic
      // surface); keep the filtration cut, skip the block.
      b.filtration_cuts.push_back(static_cast<int>(b.monomials.size()));
      continue;
    }
    b.block_degrees.push_back(t);
    auto nonstd = nonstandard_mask(input, p, t);
    auto ms = monomials_of_degree(b.vars, t);  // descending grevlex
    // Within the block: ascending grevlex = reverse enumeration order.
    std::vector<Monomial> block;
    for (int k = static_cast<int>(ms.size()) - 1; k >= 0; --k)
      if (!nonstd[static_cast<size_t>(k)]) block.push_back(ms[static_cast<size_t>(k)]);
    int l = input.n + 1 - j;
    for (auto& m : block) {
      b.monomials.push_back(m);
      b.pole_orders.push_back(l);
    }
    b.filtration_cuts.push_back(static_cast<int>(b.monomials.size()));
  }
  return b;
}

nlohmann::json basis_manifest(const GriffithsBasis& basis) {
  nlohmann::json j;
  std::vector<std::string> vars;
  for (int i = 0; i < basis.vars; ++i) vars.push_back("x" + std::to_string(i));
  j["variable_order"] = vars;
  j["n"] = basis.n;
  j["d"] = basis.d;
  std::vector<std::vector<int>> mons;
  for (const auto& m : basis.monomials) mons.push_back(m.e);
  j["monomials"] = mons;
  j["pole_orders"] = basis.pole_orders;
  j["block_degrees"] = basis.block_degrees;
  j["filtration_cuts"] = basis.filtration_cuts;
  j["polarization_slot"] = basis.polarization_slot;
  return j;
}

}  // namespace cobs
