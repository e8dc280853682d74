#ifndef POLARON_EIGENSOLVE_HPP
#define POLARON_EIGENSOLVE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polaron/report.hpp"

namespace polaron {

struct SolverConfig {
  double tol = 1e-10;      // residual ||H x - e0 x||
  int max_iter = 5000;     // total matrix-vector products
  int max_krylov = 300;    // Krylov span before an implicit restart
  enum class Start { ones, seeded_random };
  Start start = Start::ones;
  std::uint64_t seed = 1;
};

struct SpectralResult {
  double e0 = 0.0;
  Eigen::VectorXd ground_vector;
  double residual = 0.0;
  double gap = 0.0;  // second Ritz value minus e0
  int iterations = 0;
  bool gap_caveat = false;  // set when the second Ritz pair has not converged
  std::string start_descriptor;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, SpectralResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const SpectralResult& best() const { return best_; }

 private:
  SpectralResult best_;
};

// All eigenvalues of a symmetric matrix, ascending.
Eigen::VectorXd dense_spectrum(const Eigen::MatrixXd& h, Eigen::Index cap = 4096);
// Eigenvalues ascending plus the orthonormal eigenvector columns.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> dense_spectrum_vectors(
    const Eigen::MatrixXd& h, Eigen::Index cap = 4096);

// exp(-t h) by scaling and squaring with a diagonal Pade approximant.
// Verification paths only; capped to keep the dense work desk-scale.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& h, double t,
                                   Eigen::Index cap = 2048);

// Strict positivity of a computed ground vector after sign normalization.
// Refuses (throws) when gap <= 10 * residual: positivity of a near-degenerate
// ground space is not well defined.
CheckReport ground_positivity_check(const SpectralResult& res,
                                    double strict_tol = 1e-13);

namespace detail {

SpectralResult lanczos_ground_impl(
    Eigen::Index dim,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& matvec,
    const SolverConfig& cfg);

}  // namespace detail

// Ground eigenpair of a symmetric operator by Lanczos with full
// reorthogonalization.  Works for any Eigen expression supporting rows() and
// operator*(VectorXd).  The default start vector is the normalized all-ones
// vector; it lies strictly inside the positive orthant, so for an irreducible
// stoquastic matrix it cannot be orthogonal to the ground state.
template <class Op>
SpectralResult lanczos_ground(const Op& h, const SolverConfig& cfg = {}) {
  const Eigen::Index dim = h.rows();
  auto matvec = [&h](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = h * x; };
  return detail::lanczos_ground_impl(dim, matvec, cfg);
}

}  // namespace polaron

#endif
