#include "polaron/eigensolve.hpp"

#include <algorithm>
#include <cmath>

#include "polaron/rng.hpp"

namespace polaron {

Eigen::VectorXd dense_spectrum(const Eigen::MatrixXd& h, Eigen::Index cap) {
  if (h.rows() != h.cols()) throw std::invalid_argument("dense_spectrum: matrix not square");
  if (h.rows() > cap)
    throw std::invalid_argument("dense_spectrum: dim " + std::to_string(h.rows()) +
                                " exceeds cap " + std::to_string(cap));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> dense_spectrum_vectors(const Eigen::MatrixXd& h,
                                                                   Eigen::Index cap) {
  if (h.rows() != h.cols()) throw std::invalid_argument("dense_spectrum: matrix not square");
  if (h.rows() > cap)
    throw std::invalid_argument("dense_spectrum: dim " + std::to_string(h.rows()) +
                                " exceeds cap " + std::to_string(cap));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// Diagonal Pade approximant of exp(A) of order 2m, m in {3,5,7,9,13}.
Eigen::MatrixXd pade_exp(const Eigen::MatrixXd& a) {
  using Eigen::MatrixXd;
  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068e0;
  static const double theta13 = 5.371920351148152e0;

  const Eigen::Index n = a.rows();
  const MatrixXd id = MatrixXd::Identity(n, n);
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm

  MatrixXd u, v;
  auto solve = [&](const MatrixXd& uu, const MatrixXd& vv) {
    return MatrixXd((vv - uu).partialPivLu().solve(vv + uu));
  };

  if (norm <= theta3) {
    static const double b[] = {120, 60, 12, 1};
    MatrixXd a2 = a * a;
    u = a * (b[3] * a2 + b[1] * id);
    v = b[2] * a2 + b[0] * id;
    return solve(u, v);
  }
  if (norm <= theta5) {
    static const double b[] = {30240, 15120, 3360, 420, 30, 1};
    MatrixXd a2 = a * a, a4 = a2 * a2;
    u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[4] * a4 + b[2] * a2 + b[0] * id;
    return solve(u, v);
  }
  if (norm <= theta7) {
    static const double b[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
    MatrixXd a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
    u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return solve(u, v);
  }
  if (norm <= theta9) {
    static const double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                               2162160.,     110880.,     3960.,       90.,        1.};
    MatrixXd a2 = a * a, a4 = a2 * a2, a6 = a4 * a2, a8 = a6 * a2;
    u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return solve(u, v);
  }

  // degree 13 with scaling and squaring
  static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                             1187353796428800.,  129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,       1323241920.,
                             40840800.,          960960.,            16380.,
                             182.,               1.};
  int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  MatrixXd as = a / std::pow(2.0, squarings);
  MatrixXd a2 = as * as, a4 = a2 * a2, a6 = a4 * a2;
  u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
            b[1] * id);
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  MatrixXd r = solve(u, v);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

}  // namespace

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& h, double t, Eigen::Index cap) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix_exponential: matrix not square");
  if (h.rows() > cap)
    throw std::invalid_argument("matrix_exponential: dim " + std::to_string(h.rows()) +
                                " exceeds cap " + std::to_string(cap));
  if (t < 0) throw std::invalid_argument("matrix_exponential: negative time");
  if (t == 0) return Eigen::MatrixXd::Identity(h.rows(), h.cols());
  return pade_exp(Eigen::MatrixXd(-t * h));
}

namespace detail {

namespace {

// Ritz data of the current tridiagonal section.
struct RitzState {
  double theta0 = 0.0, theta1 = 0.0;
  Eigen::VectorXd y0;          // ground eigenvector of the section
  double bottom0 = 0.0, bottom1 = 0.0;  // |last entries| of the two lowest section vectors
};

RitzState solve_section(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const Eigen::Index k = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) tm(i, i) = alpha[i];
  for (Eigen::Index i = 0; i + 1 < k; ++i) tm(i, i + 1) = tm(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tm);
  RitzState r;
  r.theta0 = es.eigenvalues()[0];
  r.theta1 = k > 1 ? es.eigenvalues()[1] : es.eigenvalues()[0];
  r.y0 = es.eigenvectors().col(0);
  r.bottom0 = std::abs(es.eigenvectors()(k - 1, 0));
  r.bottom1 = k > 1 ? std::abs(es.eigenvectors()(k - 1, 1)) : 0.0;
  return r;
}

}  // namespace

SpectralResult lanczos_ground_impl(
    Eigen::Index dim,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& matvec,
    const SolverConfig& cfg) {
  using Eigen::VectorXd;
  if (dim < 1) throw std::invalid_argument("lanczos_ground: empty operator");
  if (cfg.tol <= 0) throw std::invalid_argument("lanczos_ground: tol must be positive");

  Rng rng(cfg.seed);
  VectorXd v0;
  std::string start_desc;
  if (cfg.start == SolverConfig::Start::ones) {
    v0 = VectorXd::Ones(dim) / std::sqrt(static_cast<double>(dim));
    start_desc = "ones";
  } else {
    v0 = rng.normal_vector(dim).normalized();
    start_desc = "random(seed=" + std::to_string(cfg.seed) + ")";
  }

  const int max_krylov = std::max(2, static_cast<int>(std::min<Eigen::Index>(cfg.max_krylov, dim)));
  SpectralResult best;
  best.start_descriptor = start_desc;
  int total_matvecs = 0;
  bool have_best = false;

  VectorXd w(dim), hx(dim);

  while (total_matvecs < cfg.max_iter) {
    // Lanczos sweep with full reorthogonalization against all stored vectors.
    std::vector<VectorXd> basis;
    basis.reserve(max_krylov);
    std::vector<double> alpha, beta;
    basis.push_back(v0);
    RitzState ritz;
    bool section_ready = false;
    int k = 0;

    while (k < max_krylov && total_matvecs < cfg.max_iter) {
      matvec(basis[k], w);
      ++total_matvecs;
      double a = basis[k].dot(w);
      alpha.push_back(a);
      w -= a * basis[k];
      if (k > 0) w -= beta[k - 1] * basis[k - 1];
      // two passes of classical Gram-Schmidt against the full basis
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) w -= q.dot(w) * q;
      ++k;

      const bool check_now = (k <= 50) || (k % 10 == 0) || (k == max_krylov);
      if (check_now) {
        ritz = solve_section(alpha, beta);
        section_ready = true;
        const double bnext = w.norm();
        const double est_res = bnext * ritz.bottom0;
        if (est_res <= 0.5 * cfg.tol || k == static_cast<int>(dim) || bnext < 1e-14) {
          // assemble the Ritz vector and test the true residual
          VectorXd x = VectorXd::Zero(dim);
          for (int i = 0; i < k; ++i) x += ritz.y0[i] * basis[i];
          x.normalize();
          matvec(x, hx);
          ++total_matvecs;
          const double theta = x.dot(hx);
          const double res = (hx - theta * x).norm();
          if (!have_best || res < best.residual) {
            best.e0 = theta;
            best.ground_vector = x;
            best.residual = res;
            best.gap = ritz.theta1 - ritz.theta0;
            best.gap_caveat = (k < static_cast<int>(dim)) && (bnext * ritz.bottom1 > 10 * cfg.tol);
            have_best = true;
          }
          best.iterations = total_matvecs;
          if (res <= cfg.tol) return best;
          if (k == static_cast<int>(dim)) break;
        }
        if (bnext < 1e-14) {
          // invariant subspace that misses the target: inject a fresh direction
          w = rng.normal_vector(dim);
          for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) w -= q.dot(w) * q;
          if (w.norm() < 1e-12) break;  // space exhausted
        }
      }
      if (k == max_krylov || k == static_cast<int>(dim)) break;
      const double b = w.norm();
      if (b < 1e-300) break;
      beta.push_back(b);
      basis.push_back(w / b);
    }

    // restart from the best Ritz vector so far
    if (!section_ready) break;
    if (!have_best) {
      VectorXd x = VectorXd::Zero(dim);
      const int kk = static_cast<int>(alpha.size());
      for (int i = 0; i < kk && i < ritz.y0.size(); ++i) x += ritz.y0[i] * basis[i];
      if (x.norm() > 0) {
        x.normalize();
        matvec(x, hx);
        ++total_matvecs;
        best.e0 = x.dot(hx);
        best.ground_vector = x;
        best.residual = (hx - best.e0 * x).norm();
        best.gap = ritz.theta1 - ritz.theta0;
        best.gap_caveat = true;
        best.iterations = total_matvecs;
        have_best = true;
      }
    }
    if (have_best && best.residual <= cfg.tol) return best;
    if (!have_best) break;
    v0 = best.ground_vector;
  }

  best.iterations = total_matvecs;
  throw NonConvergenceError(
      "lanczos_ground: no convergence after " + std::to_string(total_matvecs) +
          " matrix-vector products (best residual " +
          std::to_string(have_best ? best.residual : -1.0) + ")",
      best);
}

}  // namespace detail

CheckReport ground_positivity_check(const SpectralResult& res, double strict_tol) {
  if (res.gap <= 10 * res.residual)
    throw std::runtime_error("ground_positivity_check: degenerate, positivity undefined (gap " +
                             std::to_string(res.gap) + " <= 10 * residual " +
                             std::to_string(res.residual) + ")");
  CheckReport rep;
  rep.check = "ground_positivity";
  rep.dim = res.ground_vector.size();
  rep.tolerances["strict_tol"] = strict_tol;

  Eigen::Index imax = 0;
  res.ground_vector.cwiseAbs().maxCoeff(&imax);
  const double scale = res.ground_vector[imax];
  Eigen::VectorXd v = res.ground_vector / scale;  // flips sign if needed, max entry 1

  Eigen::Index imin = 0;
  const double vmin = v.minCoeff(&imin);
  rep.verdicts["strictly_positive"] = vmin > strict_tol;
  rep.passed = rep.verdicts["strictly_positive"];
  rep.details["min_coordinate"] = vmin;
  rep.details["min_index"] = imin;
  rep.details["gap"] = res.gap;
  rep.details["residual"] = res.residual;
  if (!rep.passed) rep.note_witness({{"index", imin}, {"value", vmin}});
  return rep;
}

}  // namespace polaron
