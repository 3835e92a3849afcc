// Frobenius action on middle cohomology mod p^prec: a Kedlaya-style backend
// for hyperelliptic curves (odd-degree model) and a Griffiths-Dwork backend
// for smooth hypersurfaces / plane curves riding the reduction engine.
#pragma once

#include <json.hpp>

#include "cobs/reduction.hpp"

namespace cobs {

struct FrobeniusMatrix {
  Int p;
  int prec = 0;  // entries are correct mod p^prec
  int n = 0;     // acting on H^n
  int r = 0;     // weight parameter of the run
  std::string mode;
  int dim = 0;
  int polarization_slot = -1;  // index of the polarization class, -1 if absent
  // Row-major; column i is the image of the i-th basis class.
  std::vector<std::vector<Int>> entries;
  // Filtration twist j per column (Frobenius divides by p^j there); empty for
  // imports that do not carry basis data.
  std::vector<int> col_twist;
  nlohmann::json basis;  // basis manifest (may be empty for imports)
  std::string provenance = "computed";
};

struct FrobeniusOptions {
  int truncation = -1;       // series truncation J; -1 = policy default
  int working_digits = -1;   // internal p-adic digits W; -1 = policy default
  long max_workspace_mb = 12000;  // fail fast (ResourceLimit) beyond this
};

// Computes Frobenius on H^n (curve modes: H^1; hypersurface mode: middle
// cohomology including the polarization class).  Entries are integral and
// correct mod p^prec with prec >= N, else PrecisionExhausted is thrown.
FrobeniusMatrix frobenius_matrix(const HypersurfaceInput& input, const Int& p, int N,
                                 const FrobeniusOptions& opt = {});

// Functional-equation sign: divide the column of each filtration block j by
// p^j, take det, and read the unit as +-1 mod p.  Requires col_twist.
int frobenius_sign(const FrobeniusMatrix& F);

// Interchange format for externally produced Frobenius matrices.
nlohmann::json frobenius_to_json(const FrobeniusMatrix& F);
FrobeniusMatrix frobenius_from_json(const nlohmann::json& j);

}  // namespace cobs
