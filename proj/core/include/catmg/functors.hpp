#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "catmg/modules.hpp"
#include "catmg/zmod.hpp"

namespace catmg::cato {

// φ_s(M) with its V* operators, unit M -> φ_sM and counit φ_sM -> M.
struct PhiApplied {
  FinModule module;
  ModMap eta;
  ModMap eps;
};

// Everything built from one finite Coxeter group: the sheaves B(x), the
// algebra A and the bimodules behind θ_s, φ_s and the ideal J_s.
// Weights are group element indices (identity = 0).
class Context {
 public:
  explicit Context(const coxeter::CoxeterSystem& sys, const zmod::BMPOptions& opt = {});
  ~Context();
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const coxeter::Group& group() const { return *group_; }
  const momentgraph::MomentGraph& graph() const { return *graph_; }
  int size() const { return n_; }
  int rank() const { return group_->system().rank; }
  std::string label(int x) const { return group_->label(x); }
  const zmod::SectionModule& B(int x) const { return *B_[static_cast<std::size_t>(x)]; }
  // Hom_Z(B(src), B(dst)); generator j is the algebra basis element first(dst, src) + j.
  const zmod::HomModule& hom(int src, int dst) const;
  const zmod::FiberMap& rep(std::size_t a) const { return rep_[a]; }
  const FinAlgebra& algebra() const { return A_; }
  const FinAlgebra& opposite() const { return Aop_; }
  std::string basis_label(std::size_t a) const;

  // {x : sx < x}.
  std::vector<int> left_descents(int s) const;
  bool left_descent(int s, int x) const { return len(group_->lmul_gen(s, x)) < len(x); }
  bool right_descent(int x, int s) const { return len(group_->rmul_gen(x, s)) < len(x); }
  int len(int x) const { return (*group_)[static_cast<std::size_t>(x)].length; }

  // Φ(N) ⊗ C: the right A-module sum_y Hom_Z(B(y), N) ⊗ C.
  FinModule shadow(const zmod::SectionModule& N, const std::string& label) const;
  FinModule projective(int x) const;
  const FinModule& verma(int x) const;
  FinModule simple(int x) const;

  const Bimodule& regular() const { return reg_; }
  const BiPresentation& regular_pres() const { return *reg_pres_; }
  const Bimodule& theta_bimodule(int s) const;
  const BiPresentation& theta_pres(int s) const;
  const Bimodule& phi_bimodule(int s) const;
  const BiPresentation& phi_pres(int s) const;
  const BiMap& phi_unit_bimap(int s) const;    // A -> A'_φ
  const BiMap& phi_counit_bimap(int s) const;  // A'_φ -> A
  const Bimodule& J(int s) const;
  const BiPresentation& J_pres(int s) const;
  const BiMap& J_inclusion(int s) const;
  const Bimodule& A_mod_J(int s) const;

  FinModule theta(int s, const FinModule& M) const;         // Hom_A(A'_θ, M)
  FinModule theta_tensor(int s, const FinModule& M) const;  // M ⊗ A'_θ
  PhiApplied phi(int s, const FinModule& M) const;
  FinModule tau(int s, const FinModule& M) const;           // M / trace of {P(x) : sx < x}
  FinModule T(int s, const FinModule& M) const;             // M ⊗ J_s
  FinModule C(int s, const FinModule& M) const;             // Hom_A(J_s, M)
  // φ route: Cok(η_M) and Ker(ε_M); throws RouteMismatch if V* acts nontrivially.
  FinModule T_phi(int s, const FinModule& M) const;
  FinModule C_phi(int s, const FinModule& M) const;
  FinModule twist_word(const std::vector<int>& word, const FinModule& M) const;

  // P_• ⊗ J_s and P_• ⊗ A/J_s for a minimal resolution of M.
  ChainComplex LT(int s, const Resolution& R) const;
  ChainComplex Ltau(int s, const Resolution& R) const;
  // Weight dims of H^n RHom_A(J_s, X) for a bounded complex X (homological indexing, cohomological n).
  std::map<int, std::vector<std::size_t>> RC_dims(int s, const ChainComplex& X, int nmin, int nmax, std::size_t len) const;

 private:
  struct SData;
  const SData& sdata(int s) const;

  std::unique_ptr<coxeter::Group> group_;
  std::unique_ptr<momentgraph::MomentGraph> graph_;
  int n_ = 0;
  std::vector<std::unique_ptr<zmod::SectionModule>> B_;
  mutable std::vector<std::unique_ptr<zmod::SectionModule>> V_;
  std::vector<std::unique_ptr<zmod::HomModule>> homs_;  // [dst * n + src]
  std::vector<std::size_t> first_;                      // [dst * n + src]
  std::vector<zmod::FiberMap> rep_;
  FinAlgebra A_, Aop_;
  Bimodule reg_;
  std::unique_ptr<BiPresentation> reg_pres_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<SData>> s_;
  mutable std::map<int, std::unique_ptr<FinModule>> verma_;
};

}  // namespace catmg::cato
