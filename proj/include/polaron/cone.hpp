#ifndef POLARON_CONE_HPP
#define POLARON_CONE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "polaron/report.hpp"

// Finite-dimensional order calculus for real matrices with respect to the
// coordinate orthant {x : x_i >= 0}.  A matrix A dominates B ("A keeps the
// orthant ahead of B") exactly when A - B is entrywise nonnegative, and A
// improves positivity when it is entrywise strictly positive.  All sampled
// vectors are real; positive/negative parts are taken componentwise.

namespace polaron {

enum class OrderRelation { dominates, strictly_improves, incomparable };

struct ConeOrderReport {
  OrderRelation relation = OrderRelation::incomparable;
  double min_entry = 0.0;
  bool has_witness = false;
  Eigen::Index witness_row = 0, witness_col = 0;

  nlohmann::json to_json() const;
};

// Orthant comparison of A against B with slack tol.
ConeOrderReport entrywise_order(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                double tol);

// Irreducibility of the nonnegativity pattern: every index reachable from
// every other through entries > 0 (the zeroth power always connects an index
// to itself).  Implemented as reachability closure, no matrix powers.
// Throws if the matrix has a negative entry.
bool is_ergodic(const Eigen::MatrixXd& m);

struct ConeCheckOptions {
  std::vector<double> t_samples{0.1, 1.0, 10.0};
  std::vector<double> s_samples{0.1, 1.0, 10.0};
  int vector_samples = 1000;
  std::uint64_t seed = 20260810;
  double tol = 1e-12;         // slack for ">= 0" comparisons, scale-relative
  double strict_tol = 1e-12;  // "> 0" threshold after max-entry normalization
};

// Four equivalent statements for a real symmetric matrix: the semigroup
// e^{-tA} preserves the orthant; <|x|, A|x|> <= <x, Ax>; and the two
// positive-part variants.  Reports whether the four verdicts agree.
CheckReport beurling_deny_check(const Eigen::MatrixXd& a, const ConeCheckOptions& opt = {});

// Five equivalent statements for a symmetric stoquastic matrix: simple ground
// eigenvalue with strictly positive eigenvector; resolvent positivity
// improving for some / for all shifts; strictly positive semigroup kernels
// between basis vectors; strictly positive semigroup.  Reports agreement.
// Throws if an off-diagonal entry exceeds tol.
CheckReport pf_faris_check(const Eigen::MatrixXd& a, const ConeCheckOptions& opt = {});

// For a family H_1, H_2, ... with each member stoquastic and
// H_n - H_{n+1} entrywise >= 0, the ground energies must be non-increasing.
// Hypothesis failures are reported separately from conclusion failures.
CheckReport monotone_energy_check(const std::vector<Eigen::MatrixXd>& family,
                                  const ConeCheckOptions& opt = {});

// Equivalence of the three order statements  B >= A  <=>
// (A+s)^{-1} >= (B+s)^{-1}  <=>  e^{-tA} >= e^{-tB}  for positive
// semidefinite stoquastic A, B (a common shift is applied when needed).
CheckReport monotonicity_equivalence_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                           const ConeCheckOptions& opt = {});

// For stoquastic A and entrywise nonpositive symmetric B:
// e^{-t(A+B)} >= e^{-tA} >= 0 entrywise at each sampled t.
CheckReport semigroup_domination_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                       const ConeCheckOptions& opt = {});

// Helpers shared by the checks and their tests.
void require_square(const Eigen::MatrixXd& a, const char* where);
void require_symmetric(const Eigen::MatrixXd& a, const char* where);
bool is_stoquastic(const Eigen::MatrixXd& a, double tol);

}  // namespace polaron

#endif
