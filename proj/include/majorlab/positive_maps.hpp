#pragma once

#include <vector>

#include "majorlab/linalg.hpp"
#include "majorlab/random.hpp"

namespace majorlab {

/// Completely positive map M_n -> M_l in Kraus form,
///   X |-> sum_j V_j* X V_j,   V_j of shape n x l.
class KrausMap {
 public:
  KrausMap(Index in_dim, Index out_dim, std::vector<ComplexMatrix> ops);
  static KrausMap identity(Index n);
  static KrausMap zero(Index n, Index l);

  Index in_dim() const noexcept { return in_; }
  Index out_dim() const noexcept { return out_; }
  const std::vector<ComplexMatrix>& kraus_ops() const noexcept { return ops_; }

  /// Linear action on an arbitrary n x n matrix.
  ComplexMatrix apply_raw(const ComplexMatrix& x) const;
  HermitianMatrix apply(const HermitianMatrix& x) const;
  PsdMatrix apply(const PsdMatrix& x) const;
  /// Phi(I_n)
  PsdMatrix apply_identity() const;

  /// The map c * Phi (Kraus operators scaled by sqrt(c)), c >= 0.
  KrausMap scaled(double c) const;

  /// sum_{ij} E_ij (x) Phi(E_ij), of size n*l.
  ComplexMatrix choi() const;

 private:
  void check_input(Index rows, Index cols) const;

  Index in_ = 0;
  Index out_ = 0;
  std::vector<ComplexMatrix> ops_;
};

/// Phi_eps(X) = Phi(X) + eps Tr(X) I_l, realized by n*l extra rank-one
/// Kraus operators sqrt(eps) e_i e_j^T.
KrausMap epsilon_perturb(const KrausMap& phi, double eps);

/// Orthonormal embedding of the lex-ordered basis of the k-fold
/// antisymmetric space into (C^d)^{(x)k}; shape d^k x C(d, k).
ComplexMatrix antisymmetric_isometry(Index d, int k);

/// Phi^(k) = P_wedge Phi^{(x)k}(.) P_wedge as a map from M_n^{(x)k} to the
/// operators on the lex-ordered antisymmetric space of C^l. On tensor powers
/// it satisfies Phi^(k)(X^{(x)k}) = compound(Phi(X), k).
KrausMap lift_antisymmetric(const KrausMap& phi, int k);

/// Largest n^k accepted by lift_antisymmetric.
inline constexpr Index kMaxLiftInput = 1024;

enum class MapMode { plain, unital, subunital };
const char* to_string(MapMode m);

/// Kraus operators with independent standard complex Gaussian entries.
/// unital: right-normalized so Phi(I_n) = I_l (requires n >= l).
/// subunital: map scaled by 1 / (lambda_1(Phi(I_n)) + 0.1).
KrausMap random_map(Index n, Index l, int num_kraus, MapMode mode, Rng& rng);

struct MapPair {
  KrausMap phi;
  KrausMap psi;
  bool contraction_certified = false;
  bool geometric_certified = false;
  /// Factor applied to psi (or to both maps, for the geometric variant).
  double rescale = 1.0;
};

/// lambda_1(Phi(I)^{1/2} Psi(I) Phi(I)^{1/2})
double contraction_level(const KrausMap& phi, const KrausMap& psi);
/// ||Phi(I)||_inf #_alpha ||Psi(I)||_inf
double geometric_level(const KrausMap& phi, const KrausMap& psi, double alpha);

inline constexpr double kCertifyMargin = 1e-6;

/// Rescales psi, if needed, so that contraction_level = 1 / (1 + 1e-6).
MapPair certify_contraction_pair(const KrausMap& phi, const KrausMap& psi);
/// Rescales both maps by one factor so that geometric_level <= 1/(1 + 1e-6).
MapPair certify_geometric_pair(const KrausMap& phi, const KrausMap& psi,
                               double alpha);

/// Positive map given by a dense Choi matrix C = sum E_ij (x) Phi(E_ij).
/// Read-only: positivity of the map is the caller's claim.
class ChoiMap {
 public:
  ChoiMap(Index in_dim, Index out_dim, ComplexMatrix choi);
  Index in_dim() const noexcept { return in_; }
  Index out_dim() const noexcept { return out_; }
  const ComplexMatrix& choi() const noexcept { return choi_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// Kraus form, available when the Choi matrix is PSD (completely
  /// positive map); throws InvariantError otherwise.
  KrausMap to_kraus() const;

 private:
  Index in_, out_;
  ComplexMatrix choi_;
};

}  // namespace majorlab
