#include "cobs/tensor.hpp"

namespace cobs {

namespace {

enum class PairKind { wedge, tensor, sym };

std::vector<std::pair<int, int>> pair_basis(int n, PairKind kind) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (kind == PairKind::wedge && !(a < b)) continue;
      if (kind == PairKind::sym && !(a <= b)) continue;
      pairs.push_back({a, b});
    }
  return pairs;
}

InducedStructure induced(const std::vector<std::vector<Int>>& M, int g,
                         const Int& modulus, PairKind kind) {
  int n = static_cast<int>(M.size());
  if (n != 2 * g) throw BadInput("induced structure: matrix must be 2g x 2g");
  InducedStructure out;
  out.pairs = pair_basis(n, kind);
  out.dim = static_cast<int>(out.pairs.size());
  out.matrix.assign(static_cast<size_t>(out.dim),
                    std::vector<Int>(static_cast<size_t>(out.dim), Int(0)));
  for (int row = 0; row < out.dim; ++row) {
    auto [a, b] = out.pairs[static_cast<size_t>(row)];
    if (a >= g && b >= g) out.obstruction_rows.push_back(row);
    for (int col = 0; col < out.dim; ++col) {
      auto [c, d] = out.pairs[static_cast<size_t>(col)];
      const auto& Ma = M[static_cast<size_t>(a)];
      const auto& Mb = M[static_cast<size_t>(b)];
      Int v;
      switch (kind) {
        case PairKind::wedge:
          v = Ma[static_cast<size_t>(c)] * Mb[static_cast<size_t>(d)] -
              Ma[static_cast<size_t>(d)] * Mb[static_cast<size_t>(c)];
          break;
        case PairKind::tensor:
          v = Ma[static_cast<size_t>(c)] * Mb[static_cast<size_t>(d)];
          break;
        case PairKind::sym:
          if (a == b)
            v = Ma[static_cast<size_t>(c)] * Ma[static_cast<size_t>(d)];
          else
            v = Ma[static_cast<size_t>(c)] * Mb[static_cast<size_t>(d)] +
                Ma[static_cast<size_t>(d)] * Mb[static_cast<size_t>(c)];
          break;
      }
      out.matrix[static_cast<size_t>(row)][static_cast<size_t>(col)] =
          modulus == 0 ? v : mod_pos(v, modulus);
    }
  }
  return out;
}

}  // namespace

InducedStructure wedge_square(const std::vector<std::vector<Int>>& M, int g,
                              const Int& modulus) {
  return induced(M, g, modulus, PairKind::wedge);
}

InducedStructure tensor_square(const std::vector<std::vector<Int>>& M, int g,
                               const Int& modulus) {
  return induced(M, g, modulus, PairKind::tensor);
}

InducedStructure sym_square(const std::vector<std::vector<Int>>& M, int g,
                            const Int& modulus) {
  return induced(M, g, modulus, PairKind::sym);
}

namespace {

IntPoly induced_charpoly(const IntPoly& P1, PairKind kind) {
  int m = ip_deg(P1);
  if (m < 2 || P1[0] != 1)
    throw BadInput("induced charpoly: P1 must have constant term 1 and degree >= 2");
  if (m % 2 != 0) throw BadInput("induced charpoly: P1 must have even degree 2g");
  // Work with the exact companion matrix of det(tI - F), the reverse of P1.
  IntPoly a(P1.rbegin(), P1.rend());
  auto C = companion(a);
  // No reduction: pass a modulus of 0 meaning "exact".
  std::vector<std::vector<Int>> ind;
  {
    InducedStructure s = induced(C, m / 2, Int(0), kind);
    ind = std::move(s.matrix);
  }
  IntPoly chi = charpoly_exact(ind);
  return IntPoly(chi.rbegin(), chi.rend());  // back to det(1 - t *)
}

}  // namespace

IntPoly induced_charpoly_wedge(const IntPoly& P1) {
  return induced_charpoly(P1, PairKind::wedge);
}

IntPoly induced_charpoly_tensor(const IntPoly& P1) {
  return induced_charpoly(P1, PairKind::tensor);
}

IntPoly induced_charpoly_sym(const IntPoly& P1) {
  return induced_charpoly(P1, PairKind::sym);
}

}  // namespace cobs
