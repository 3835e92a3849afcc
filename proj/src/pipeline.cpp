#include "cobs/pipeline.hpp"

#include <fstream>
#include <sstream>

namespace cobs {

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("run: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Highest variable index mentioned in the input text (x/y/z/w or x<k>), or -1.
int max_var_index(const std::string& text) {
  int best = -1;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    int idx = -1;
    if (c == 'x') {
      idx = 0;
      size_t j = i + 1;
      if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        idx = 0;
        long v = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
          v = 10 * v + (text[j++] - '0');
        idx = static_cast<int>(v);
      }
    } else if (c == 'y') {
      idx = 1;
    } else if (c == 'z') {
      idx = 2;
    } else if (c == 'w') {
      idx = 3;
    }
    best = std::max(best, idx);
  }
  return best;
}

HypersurfaceInput parse_input(const std::string& text, const std::string& mode) {
  int top = max_var_index(text);
  if (top < 0) throw BadInput("run: no variables in the input polynomial");
  bool curve_mode = mode == "jacobian" || mode == "tensor";
  if (mode == "surface" || (mode == "auto" && top == 3)) {
    if (top != 3)
      throw BadInput("run: surface mode expects a homogeneous form in x, y, z, w");
    return HypersurfaceInput::hypersurface(parse_homogeneous(text, 4));
  }
  if (!curve_mode && mode != "auto") throw BadInput("run: unknown mode " + mode);
  if (top == 0) return HypersurfaceInput::hyperelliptic(parse_univariate(text));
  if (top == 2) return HypersurfaceInput::plane_curve(parse_homogeneous(text, 3));
  throw BadInput("run: curve input must be univariate (y^2 = f(x)) or a plane "
                 "curve in x, y, z");
}

Int choose_prime(const RunConfig& cfg, const HypersurfaceInput& in) {
  if (cfg.p > 0) {
    Int p(cfg.p);
    auto gp = good_prime_check(in, p, cfg.char_bound);
    if (!gp.ok) {
      if (gp.reason == "SingularReduction")
        throw SingularReduction("run: singular reduction at the requested prime");
      throw BadInput("run: bad prime (" + gp.reason + ")");
    }
    return p;
  }
  return next_good_prime(in, Int(2), cfg.char_bound);
}

// The reciprocal charpoly det(1 - t F) mod p^N: coefficient i is the t^{m-i}
// coefficient of det(tI - F).
IntPoly approx_charpoly(const PadicMatrix& Fm) {
  auto chi = charpoly_mod_pN(Fm);
  int m = static_cast<int>(chi.size()) - 1;
  IntPoly approx(static_cast<size_t>(m) + 1);
  for (int i = 0; i <= m; ++i)
    approx[static_cast<size_t>(i)] = chi[static_cast<size_t>(m - i)];
  return approx;
}

void check_entries_agree(const FrobeniusMatrix& a, const FrobeniusMatrix& b,
                         const std::string& what) {
  int t = std::min(a.prec, b.prec);
  Int M = pow_int(a.p, static_cast<unsigned long>(t));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const Int& x = a.entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
      const Int& y = b.entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (mod_pos(x - y, M) != 0)
        throw InvariantViolation("stability recheck (" + what + "): entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") changed within trusted digits");
    }
}

// Recompute at truncation+1 and at precision+1; previously trusted digits
// must be unchanged.
void stability_recheck(const HypersurfaceInput& in, const Int& p, int N,
                       const FrobeniusMatrix& base, const FrobeniusOptions& opt0) {
  int policy_j = in.mode == InputMode::jacobian_hyperelliptic ? N + 2 : N + 3;
  FrobeniusOptions o1 = opt0;
  o1.truncation = (opt0.truncation > 0 ? opt0.truncation : policy_j) + 1;
  check_entries_agree(base, frobenius_matrix(in, p, N, o1), "truncation+1");
  check_entries_agree(base, frobenius_matrix(in, p, N + 1, opt0), "precision+1");
}

std::vector<std::string> poly_strings(const IntPoly& P) {
  std::vector<std::string> out;
  for (const auto& c : P) out.push_back(c.get_str());
  return out;
}

nlohmann::json provenance(const RunConfig& cfg, const FrobeniusMatrix& F, int N,
                          int sign, const IntPoly& lifted) {
  nlohmann::json prov;
  prov["backend"] = F.mode;
  prov["source"] = F.provenance;
  prov["requested_precision"] = cfg.precision;
  prov["working_precision"] = N;
  prov["achieved_digits"] = F.prec;
  int policy_j = F.mode == mode_name(InputMode::jacobian_hyperelliptic) ? N + 2 : N + 3;
  prov["truncation"] = cfg.frobenius.truncation > 0 ? cfg.frobenius.truncation : policy_j;
  prov["sign"] = sign;
  prov["lifted_charpoly"] = poly_strings(lifted);
  prov["stability_recheck"] = cfg.recheck ? "ok" : "skipped";
  return prov;
}

void maybe_emit(const RunConfig& cfg, const FrobeniusMatrix& F) {
  if (cfg.emit_frobenius.empty()) return;
  std::ofstream out(cfg.emit_frobenius);
  if (!out) throw BadInput("run: cannot write " + cfg.emit_frobenius);
  out << frobenius_to_json(F).dump(2) << "\n";
}

// Working digits are raised until the obstruction stage saturates: more
// precision can only sharpen the (always valid) rank certificates, and the
// saturation flag detects when it no longer can.
constexpr int kSaturationHeadroom = 10;

nlohmann::json run_curve(const RunConfig& cfg, const HypersurfaceInput& in,
                         const Int& p, bool tensor_mode) {
  int g = in.genus();
  int m = 2 * g;
  int N0 = min_precision_curve(g, p, cfg.precision);
  for (int N = N0;; ++N) {
    FrobeniusMatrix F = frobenius_matrix(in, p, N, cfg.frobenius);
    int sign = frobenius_sign(F);
    PadicContext ctx(p, N);
    IntPoly P1 = weil_lift(approx_charpoly(PadicMatrix::from_rows(ctx, F.entries)), m, p,
                           /*r=*/0, sign, ctx.modulus, ctx.modulus);
    InducedStructure s = tensor_mode ? tensor_square(F.entries, g, ctx.modulus)
                                     : wedge_square(F.entries, g, ctx.modulus);
    IntPoly P2 = tensor_mode ? induced_charpoly_tensor(P1) : induced_charpoly_wedge(P1);
    auto split = cyclotomic_split(scaled_charpoly(P2, p, 1));
    auto proj = projection_matrix(ctx, s.dim, s.obstruction_rows);
    ObstructionOptions opt;
    opt.galois = !cfg.vanilla;
    opt.mode = tensor_mode ? "tensor" : "jacobian";
    auto rep = accumulate_bound(split, s.matrix, p, /*r=*/1, N, proj, opt);
    if (!rep.saturated && N < N0 + kSaturationHeadroom) continue;
    maybe_emit(cfg, F);
    if (cfg.recheck) stability_recheck(in, p, N, F, cfg.frobenius);
    auto j = rep.to_json();
    j["provenance"] = provenance(cfg, F, N, sign, P1);
    j["provenance"]["induced_charpoly"] = poly_strings(P2);
    j["provenance"]["rank_saturated"] = rep.saturated;
    return j;
  }
}

nlohmann::json run_surface(const RunConfig& cfg, const HypersurfaceInput& in,
                           const Int& p) {
  int r = in.r();
  auto basis = griffiths_basis(in, p);
  int m = basis.full_dim();
  int N0 = min_precision(m, p, r, cfg.precision);
  for (int N = N0;; ++N) {
    FrobeniusMatrix F = frobenius_matrix(in, p, N, cfg.frobenius);
    // Functional-equation sign of det(1 - tF): (-1)^m sign(det F), from
    // P_{m-i} = (-1)^m sign(det F) q^{r(m-2i)} P_i.
    int sign = (m % 2 == 0 ? 1 : -1) * frobenius_sign(F);
    PadicContext ctx(p, N);
    IntPoly P = weil_lift(approx_charpoly(PadicMatrix::from_rows(ctx, F.entries)), m, p,
                          r, sign, ctx.modulus, ctx.modulus);
    auto split = cyclotomic_split(scaled_charpoly(P, p, r));
    auto proj = projection_matrix(ctx, m, obstruction_rows(basis));
    ObstructionOptions opt;
    opt.galois = !cfg.vanilla;
    opt.surface_polarization = true;
    opt.mode = "surface";
    auto rep = accumulate_bound(split, F.entries, p, r, N, proj, opt);
    if (!rep.saturated && N < N0 + kSaturationHeadroom) continue;
    maybe_emit(cfg, F);
    if (cfg.recheck) stability_recheck(in, p, N, F, cfg.frobenius);
    auto j = rep.to_json();
    j["provenance"] = provenance(cfg, F, N, sign, P);
    j["provenance"]["rank_saturated"] = rep.saturated;
    return j;
  }
}

// Imported-matrix flow.  The matrix is taken to be the Frobenius on the
// (induced) middle cohomology of weight 2r; the exact reciprocal charpoly
// comes either from an optional "charpoly" field or from a Weil lift when
// the imported precision suffices.
nlohmann::json run_imported(const RunConfig& cfg) {
  std::ifstream fin(cfg.frobenius_file);
  if (!fin) throw BadInput("run: cannot open " + cfg.frobenius_file);
  nlohmann::json jin;
  try {
    fin >> jin;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("frobenius import: ") + e.what());
  }
  FrobeniusMatrix F = frobenius_from_json(jin);
  if (F.r < 1)
    throw BadInput("run: imports must carry a weight-2r matrix (r >= 1); import the "
                   "induced H^2 matrix for curves");
  int m = F.dim;
  PadicContext ctx(F.p, F.prec);
  auto Fm = PadicMatrix::from_rows(ctx, F.entries);
  IntPoly P;
  if (jin.contains("charpoly")) {
    for (const auto& e : jin["charpoly"]) {
      if (e.is_string())
        P.emplace_back(e.get<std::string>());
      else
        P.emplace_back(e.get<long>());
    }
    if (static_cast<int>(P.size()) != m + 1)
      throw SchemaError("frobenius import: charpoly must have dim+1 coefficients");
    IntPoly approx = approx_charpoly(Fm);
    for (int i = 0; i <= m; ++i)
      if (mod_pos(P[static_cast<size_t>(i)] - approx[static_cast<size_t>(i)],
                  ctx.modulus) != 0)
        throw InconsistentLift(
            "frobenius import: charpoly disagrees with the matrix mod p^N at t^" +
            std::to_string(i));
  } else {
    if (F.prec < min_precision(m, F.p, F.r, 1))
      throw PrecisionExhausted(
          "frobenius import: " + std::to_string(F.prec) +
          " digits cannot determine the charpoly; supply a \"charpoly\" field or " +
          std::to_string(min_precision(m, F.p, F.r, 1)) + " digits");
    int sign = jin.contains("sign") ? jin["sign"].get<int>()
               : !F.col_twist.empty() ? frobenius_sign(F)
                                      : 1;
    P = weil_lift(approx_charpoly(Fm), m, F.p, F.r, sign, ctx.modulus, ctx.modulus);
  }
  // Obstruction coordinates: explicit field, else basis pole orders, else the
  // induced-wedge layout of a Jacobian H^2 (pairs outside F^1 come last).
  std::vector<int> rows;
  if (jin.contains("obstruction_rows")) {
    rows = jin["obstruction_rows"].get<std::vector<int>>();
  } else if (!F.basis.empty() && F.basis.contains("pole_orders")) {
    auto pole = F.basis["pole_orders"].get<std::vector<int>>();
    for (int i = 0; i < static_cast<int>(pole.size()); ++i)
      if (pole[static_cast<size_t>(i)] >= F.n + 2 - F.r) rows.push_back(i);
  } else if (F.mode == "jacobian-h2") {
    int g = 0;
    while (g * (2 * g - 1) < m) ++g;
    if (g * (2 * g - 1) != m)
      throw SchemaError("frobenius import: dimension is not of the form g(2g-1)");
    for (int k = m - g * (g - 1) / 2; k < m; ++k) rows.push_back(k);
  } else {
    throw SchemaError(
        "frobenius import: no obstruction data (need obstruction_rows, a basis "
        "manifest, or mode jacobian-h2)");
  }
  auto split = cyclotomic_split(scaled_charpoly(P, F.p, F.r));
  auto proj = projection_matrix(ctx, m, rows);
  ObstructionOptions opt;
  opt.galois = !cfg.vanilla;
  opt.surface_polarization = F.polarization_slot >= 0;
  opt.mode = F.mode;
  auto rep = accumulate_bound(split, F.entries, F.p, F.r, F.prec, proj, opt);
  auto j = rep.to_json();
  j["provenance"] = provenance(cfg, F, F.prec, 0, P);
  j["provenance"]["rank_saturated"] = rep.saturated;
  return j;
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "poly")
      cfg.poly = value.get<std::string>();
    else if (key == "file")
      cfg.poly_file = value.get<std::string>();
    else if (key == "frobenius")
      cfg.frobenius_file = value.get<std::string>();
    else if (key == "mode")
      cfg.mode = value.get<std::string>();
    else if (key == "p")
      cfg.p = value.get<long>();
    else if (key == "precision")
      cfg.precision = value.get<int>();
    else if (key == "char_bound")
      cfg.char_bound = value.get<int>();
    else if (key == "vanilla")
      cfg.vanilla = value.get<bool>();
    else if (key == "recheck")
      cfg.recheck = value.get<bool>();
    else if (key == "emit_frobenius")
      cfg.emit_frobenius = value.get<std::string>();
    else if (key == "truncation")
      cfg.frobenius.truncation = value.get<int>();
    else
      throw SchemaError("run config: unknown key " + key);
  }
  return cfg;
}

Int next_good_prime(const HypersurfaceInput& input, const Int& lower,
                    int char_bound, long ceiling) {
  Int start = lower;
  Int floor_r(2 * input.r() + 7);
  Int floor_n(input.n + 2);
  if (start < floor_r) start = floor_r;
  if (start < floor_n) start = floor_n;
  Int p = start - 1;
  while (true) {
    p = next_prime(p);
    if (p > ceiling) throw BadInput("next_good_prime: search ceiling exceeded");
    if (good_prime_check(input, p, char_bound).ok) return p;
  }
}

nlohmann::json run(const RunConfig& cfg) {
  int sources = (cfg.poly.empty() ? 0 : 1) + (cfg.poly_file.empty() ? 0 : 1) +
                (cfg.frobenius_file.empty() ? 0 : 1);
  if (sources != 1) throw BadInput("run: exactly one input source required");
  if (cfg.precision < 1) throw BadInput("run: precision must be >= 1");
  if (!cfg.frobenius_file.empty()) return run_imported(cfg);
  std::string text = cfg.poly.empty() ? read_text_file(cfg.poly_file) : cfg.poly;
  HypersurfaceInput in = parse_input(text, cfg.mode);
  Int p = choose_prime(cfg, in);
  if (in.mode == InputMode::hypersurface) {
    if (cfg.mode == "jacobian" || cfg.mode == "tensor")
      throw BadInput("run: curve modes need a curve input");
    return run_surface(cfg, in, p);
  }
  return run_curve(cfg, in, p, cfg.mode == "tensor");
}

}  // namespace cobs
