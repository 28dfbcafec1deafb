#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catmg/functors.hpp"

namespace catmg::cato {

struct VermaHomEntry {
  int x = 0, y = 0;  // Hom(M(x), M(y))
  std::size_t dim = 0;
  bool expected = false;  // y <= x
  bool injective = true;  // every basis map
};
std::vector<VermaHomEntry> verma_hom_table(const Context& ctx, int jobs = 1);

// Subquotient weights x_1, ..., x_n of a Verma flag (x_n on top), or nullopt.
std::optional<std::vector<int>> verma_flag(const Context& ctx, const FinModule& M);

struct ThetaDecomposition {
  std::vector<std::size_t> mult;  // n_y with θ_sP(x) = sum P(y)^{n_y}
  bool cover_bijective = false;
  IsoVerdict doubled = IsoVerdict::Indeterminate;  // against P(x)+P(x), only when xs < x
};
ThetaDecomposition theta_projective(const Context& ctx, int s, int x);

// 0 -> A -> A'_φ -> A -> A/J_s -> 0, blockwise ranks.
struct FourTerm {
  std::size_t dim_A = 0, dim_phi = 0, dim_J = 0, dim_tauA = 0;
  std::size_t rank_eta = 0, rank_eps = 0;
  bool eps_eta_zero = false;
  bool image_is_J = false;
  bool exact() const;
};
FourTerm four_term(const Context& ctx, int s);

struct DerivedDims {
  std::map<int, std::size_t> LT, Ltau;  // homological
  std::map<int, std::size_t> RC;        // cohomological
  std::size_t dim = 0, ker_eta = 0, coker_eps = 0;
  bool complete = false;
  long long euler(const std::map<int, std::size_t>& h) const;
};
DerivedDims derived_dims(const Context& ctx, int s, const FinModule& M, std::size_t len);

// Data reused across the pairs of a duality table.
struct DualityData {
  Resolution R;       // of M over A
  ChainComplex Ltau;  // R ⊗ A/J_s
  Resolution Rdual;   // of DM over A^op
};
DualityData duality_data(const Context& ctx, int s, const FinModule& M, std::size_t len);
struct DualityTable {
  std::map<int, std::size_t> lhs;  // dim R^k Hom(Lτ_sM[-1], N)
  std::map<int, std::size_t> rhs;  // dim R^k Hom(M, Lτ_sN[-1])
};
DualityTable zuckerman_duality(const DualityData& M, const DualityData& N, int kmax);

std::map<int, std::size_t> ext_dims(const FinModule& M, const FinModule& N, int kmax, std::size_t len);

struct Equivalence {
  std::map<int, std::vector<std::size_t>> dims;  // weight dims of H^n RC_sLT_s(M)
  bool concentrated = false;
  IsoVerdict h0 = IsoVerdict::Indeterminate;
};
Equivalence equivalence_check(const Context& ctx, int s, const FinModule& M, std::size_t len);

struct WordCheck {
  std::vector<std::vector<int>> words;
  std::vector<IsoVerdict> verdicts;  // word i against word 0
  bool pass() const;
};
WordCheck word_independence(const Context& ctx, int w, const FinModule& M);

// c_{TM} ∘ T(u_M) = id and C(c_M) ∘ u_{CM} = id for the pair (T_s, C_s).
std::pair<bool, bool> twist_triangle_identities(const Context& ctx, int s, const FinModule& M);

// θ_t φ_s Φ(B(x)) against φ_s θ_t Φ(B(x)).
IsoResult theta_phi_commute(const Context& ctx, int t, int s, int x);

// Graded image dims of a section module in each fiber: [vertex][degree - dmin].
std::vector<std::vector<std::size_t>> stalk_table(const zmod::SectionModule& M, int dmin, int dmax);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct SuiteReport {
  std::string name;
  std::vector<Verdict> verdicts;
  std::vector<std::string> skipped;
  double seconds = 0;
  bool pass() const;
};
struct SuiteOptions {
  int jobs = 1;
  std::size_t resolution_length = 24;
  int kmax = 4;
};

const std::vector<std::string>& suite_names();
// "all", a group name (translation, zuckerman, twisting, verma) or a single suite.
std::vector<std::string> expand_suites(const std::string& selector);
SuiteReport run_suite(const Context& ctx, const std::string& name, const SuiteOptions& opt = {});

}  // namespace catmg::cato
