// Induced structures on H^1 for Jacobian mode: the wedge square (H^2 of the
// Jacobian, Picard bound) and the tensor square (divisorial correspondences,
// endomorphism bound), with their filtrations and exact induced charpolys.
#pragma once

#include "cobs/intpoly.hpp"

namespace cobs {

struct InducedStructure {
  // Induced matrix in the pair basis; entries are products of input entries
  // (no division), so they are trusted at the input's precision.
  std::vector<std::vector<Int>> matrix;
  int dim = 0;
  std::vector<std::pair<int, int>> pairs;  // row/column index -> (a, b)
  // Pairs with both H^1 indices outside F^1 (the obstruction codomain):
  // g(g-1)/2 of them for the wedge, g^2 for the tensor square.
  std::vector<int> obstruction_rows;
};

// Wedge square in lexicographic pair order (a < b).  Requires the H^1 basis
// to be filtration-adapted: the first g columns span F^1.
InducedStructure wedge_square(const std::vector<std::vector<Int>>& M, int g,
                              const Int& modulus);

// Kronecker (tensor) square over all ordered pairs, lexicographic.
InducedStructure tensor_square(const std::vector<std::vector<Int>>& M, int g,
                               const Int& modulus);

// Symmetric square (a <= b pairs); used by the charpoly identity oracle
// charpoly(wedge) * charpoly(sym) = charpoly(tensor).
InducedStructure sym_square(const std::vector<std::vector<Int>>& M, int g,
                            const Int& modulus);

// Exact det(1 - t * Lambda^2 F) (resp. tensor/sym square) for a Frobenius
// with exact reciprocal charpoly P1 = det(1 - t F), via the companion matrix
// of the reversed polynomial.
IntPoly induced_charpoly_wedge(const IntPoly& P1);
IntPoly induced_charpoly_tensor(const IntPoly& P1);
IntPoly induced_charpoly_sym(const IntPoly& P1);

}  // namespace cobs
