#include "polaron/cone.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "polaron/eigensolve.hpp"
#include "polaron/rng.hpp"

namespace polaron {

void require_square(const Eigen::MatrixXd& a, const char* where) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(where) + ": matrix not square");
  if (a.rows() < 1) throw std::invalid_argument(std::string(where) + ": empty matrix");
}

void require_symmetric(const Eigen::MatrixXd& a, const char* where) {
  require_square(a, where);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = j + 1; i < a.rows(); ++i)
      if (a(i, j) != a(j, i))
        throw std::invalid_argument(std::string(where) + ": matrix not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
}

bool is_stoquastic(const Eigen::MatrixXd& a, double tol) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j && a(i, j) > tol) return false;
  return true;
}

nlohmann::json ConeOrderReport::to_json() const {
  const char* rel = relation == OrderRelation::dominates          ? "dominates"
                    : relation == OrderRelation::strictly_improves ? "strictly_improves"
                                                                   : "incomparable";
  nlohmann::json j{{"relation", rel}, {"min_entry", min_entry}};
  if (has_witness) j["witness"] = {witness_row, witness_col};
  return j;
}

ConeOrderReport entrywise_order(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  require_square(a, "entrywise_order");
  require_square(b, "entrywise_order");
  if (a.rows() != b.rows())
    throw std::invalid_argument("entrywise_order: dimension mismatch " +
                                std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
  if (tol < 0) throw std::invalid_argument("entrywise_order: negative tolerance");

  ConeOrderReport rep;
  rep.min_entry = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double d = a(i, j) - b(i, j);
      if (d < rep.min_entry) {
        rep.min_entry = d;
        rep.witness_row = i;
        rep.witness_col = j;
      }
    }
  if (rep.min_entry > tol)
    rep.relation = OrderRelation::strictly_improves;
  else if (rep.min_entry >= -tol)
    rep.relation = OrderRelation::dominates;
  else {
    rep.relation = OrderRelation::incomparable;
    rep.has_witness = true;
  }
  return rep;
}

bool is_ergodic(const Eigen::MatrixXd& m) {
  require_square(m, "is_ergodic");
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (m(i, j) < 0)
        throw std::invalid_argument("is_ergodic: negative entry at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
  if (n == 1) return true;

  // breadth-first reachability from every start index
  std::vector<char> seen(static_cast<std::size_t>(n));
  std::deque<Eigen::Index> queue;
  for (Eigen::Index s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    seen[static_cast<std::size_t>(s)] = 1;
    queue.assign(1, s);
    Eigen::Index reached = 1;
    while (!queue.empty()) {
      const Eigen::Index x = queue.front();
      queue.pop_front();
      for (Eigen::Index y = 0; y < n; ++y)
        if (!seen[static_cast<std::size_t>(y)] && m(x, y) > 0) {
          seen[static_cast<std::size_t>(y)] = 1;
          ++reached;
          queue.push_back(y);
        }
    }
    if (reached < n) return false;
  }
  return true;
}

namespace {

double scale_of(const Eigen::MatrixXd& m) {
  const double s = m.cwiseAbs().maxCoeff();
  return s > 0 ? s : 1.0;
}

bool entrywise_nonneg(const Eigen::MatrixXd& m, double tol) {
  return m.minCoeff() >= -tol * scale_of(m);
}

bool entrywise_strictly_positive(const Eigen::MatrixXd& m, double strict_tol) {
  return m.minCoeff() > strict_tol * scale_of(m);
}

}  // namespace

CheckReport beurling_deny_check(const Eigen::MatrixXd& a, const ConeCheckOptions& opt) {
  require_symmetric(a, "beurling_deny_check");
  const Eigen::Index n = a.rows();

  CheckReport rep;
  rep.check = "beurling_deny";
  rep.dim = n;
  rep.seed = opt.seed;
  rep.tolerances["tol"] = opt.tol;

  const double scale = scale_of(a);
  const double slack = opt.tol * std::max(1.0, scale);

  bool semigroup = true;
  for (double t : opt.t_samples)
    if (!entrywise_nonneg(matrix_exponential(a, t), opt.tol)) {
      semigroup = false;
      rep.note_witness({{"clause", "semigroup"}, {"t", t}});
      break;
    }

  // Sample set: seeded Gaussian vectors plus the pair probes e_p - e_q, whose
  // form difference isolates a single off-diagonal entry.
  Rng rng(opt.seed);
  bool abs_ok = true, plus_ok = true, split_ok = true;
  auto probe = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd xp = x.cwiseMax(0.0), xm = (-x).cwiseMax(0.0);
    const Eigen::VectorXd xabs = xp + xm;
    const double qx = x.dot(a * x);
    if (xabs.dot(a * xabs) > qx + slack) {
      if (abs_ok) rep.note_witness({{"clause", "abs"}, {"excess", xabs.dot(a * xabs) - qx}});
      abs_ok = false;
    }
    if (xp.dot(a * xp) > qx + slack) plus_ok = false;
    if (xp.dot(a * xp) + xm.dot(a * xm) > qx + slack) split_ok = false;
  };
  for (Eigen::Index p = 0; p < n && p < 64; ++p)
    for (Eigen::Index q = p + 1; q < n && q < 64; ++q) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      x[p] = 1.0;
      x[q] = -1.0;
      probe(x);
    }
  for (int s = 0; s < opt.vector_samples; ++s) probe(rng.normal_vector(n));

  rep.verdicts["semigroup_nonnegative"] = semigroup;
  rep.verdicts["abs_form_contraction"] = abs_ok;
  rep.verdicts["positive_part_form"] = plus_ok;
  rep.verdicts["split_parts_form"] = split_ok;
  rep.details["criterion_holds"] = semigroup;
  rep.passed = (semigroup == abs_ok) && (semigroup == plus_ok) && (semigroup == split_ok);
  return rep;
}

CheckReport pf_faris_check(const Eigen::MatrixXd& a, const ConeCheckOptions& opt) {
  require_symmetric(a, "pf_faris_check");
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j && a(i, j) > opt.tol)
        throw std::invalid_argument("pf_faris_check: positive off-diagonal entry " +
                                    std::to_string(a(i, j)) + " at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");

  CheckReport rep;
  rep.check = "pf_faris";
  rep.dim = n;
  rep.seed = opt.seed;
  rep.tolerances["tol"] = opt.tol;
  rep.tolerances["strict_tol"] = opt.strict_tol;

  auto [evals, evecs] = dense_spectrum_vectors(a);
  const double lam0 = evals[0];
  const double gap = n > 1 ? evals[1] - lam0 : std::numeric_limits<double>::infinity();
  const bool degenerate = !(gap > opt.tol);
  rep.details["gap"] = n > 1 ? evals[1] - lam0 : 0.0;
  if (degenerate) rep.details["degenerate"] = true;

  // (i) simple lowest eigenvalue with strictly positive eigenvector
  bool simple_positive = !degenerate;
  if (simple_positive) {
    Eigen::VectorXd v = evecs.col(0);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v /= v[imax];
    simple_positive = v.minCoeff() > opt.strict_tol;
  }

  // (ii)/(iv) resolvent positivity improving for some / for all sampled shifts
  bool res_some = false, res_all = true;
  for (double s : opt.s_samples) {
    Eigen::MatrixXd shifted = a - (lam0 - s) * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd inv = shifted.ldlt().solve(Eigen::MatrixXd::Identity(n, n));
    const bool pos = entrywise_strictly_positive(inv, opt.strict_tol);
    res_some = res_some || pos;
    res_all = res_all && pos;
  }

  // (iii) between every pair of basis vectors some sampled time connects,
  // (v) strictly positive semigroup at every sampled time
  Eigen::MatrixXd connected = Eigen::MatrixXd::Zero(n, n);
  bool semigroup_strict = true;
  for (double t : opt.t_samples) {
    Eigen::MatrixXd e = matrix_exponential(a, t);
    const double thr = opt.strict_tol * scale_of(e);
    semigroup_strict = semigroup_strict && (e.minCoeff() > thr);
    connected = connected.cwiseMax((e.array() > thr).cast<double>().matrix());
  }
  const bool pairs_connect = connected.minCoeff() > 0.5;

  rep.verdicts["simple_positive_ground"] = simple_positive;
  rep.verdicts["resolvent_some_shift"] = res_some;
  rep.verdicts["basis_pairs_connect"] = pairs_connect;
  rep.verdicts["resolvent_all_shifts"] = res_all;
  rep.verdicts["semigroup_strict"] = semigroup_strict;

  rep.passed = (simple_positive == res_some) && (simple_positive == pairs_connect) &&
               (simple_positive == res_all) && (simple_positive == semigroup_strict);
  if (!rep.passed)
    rep.note_witness({{"i", simple_positive},
                      {"ii", res_some},
                      {"iii", pairs_connect},
                      {"iv", res_all},
                      {"v", semigroup_strict}});
  return rep;
}

CheckReport monotone_energy_check(const std::vector<Eigen::MatrixXd>& family,
                                  const ConeCheckOptions& opt) {
  if (family.empty()) throw std::invalid_argument("monotone_energy_check: empty family");
  const Eigen::Index n = family.front().rows();
  for (const auto& h : family) {
    require_symmetric(h, "monotone_energy_check");
    if (h.rows() != n) throw std::invalid_argument("monotone_energy_check: dimension mismatch");
  }

  CheckReport rep;
  rep.check = "monotone_energy";
  rep.dim = n;
  rep.tolerances["tol"] = opt.tol;

  bool stoq_ok = true, order_ok = true;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (!is_stoquastic(family[i], opt.tol)) {
      stoq_ok = false;
      rep.note_witness({{"hypothesis", "stoquastic"}, {"member", i}});
    }
  for (std::size_t i = 0; i + 1 < family.size(); ++i) {
    auto ord = entrywise_order(family[i], family[i + 1], opt.tol);
    if (ord.relation == OrderRelation::incomparable) {
      order_ok = false;
      rep.note_witness({{"hypothesis", "ordered"}, {"pair", i}, {"min_entry", ord.min_entry}});
    }
  }
  rep.verdicts["hypothesis_stoquastic"] = stoq_ok;
  rep.verdicts["hypothesis_ordered"] = order_ok;

  const bool hypotheses = stoq_ok && order_ok;
  bool monotone = true;
  if (hypotheses) {
    std::vector<double> energies;
    energies.reserve(family.size());
    for (const auto& h : family) energies.push_back(dense_spectrum(h)[0]);
    for (std::size_t i = 0; i + 1 < energies.size(); ++i)
      if (!(energies[i] >= energies[i + 1] - opt.tol)) {
        monotone = false;
        rep.note_witness(
            {{"conclusion", "monotone"}, {"pair", i}, {"e", energies[i]}, {"e_next", energies[i + 1]}});
      }
    rep.details["energies"] = energies;
    rep.verdicts["conclusion_monotone"] = monotone;
  } else {
    rep.details["conclusion_skipped"] = "hypotheses failed";
  }
  rep.passed = hypotheses && monotone;
  return rep;
}

CheckReport monotonicity_equivalence_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                           const ConeCheckOptions& opt) {
  require_symmetric(a, "monotonicity_equivalence_check");
  require_symmetric(b, "monotonicity_equivalence_check");
  if (a.rows() != b.rows())
    throw std::invalid_argument("monotonicity_equivalence_check: dimension mismatch");
  if (!is_stoquastic(a, opt.tol) || !is_stoquastic(b, opt.tol))
    throw std::invalid_argument("monotonicity_equivalence_check: non-stoquastic input");
  const Eigen::Index n = a.rows();

  CheckReport rep;
  rep.check = "monotonicity_equivalence";
  rep.dim = n;
  rep.tolerances["tol"] = opt.tol;

  // common shift making both positive semidefinite; leaves all three
  // statements unchanged
  const double lam = std::min(dense_spectrum(a)[0], dense_spectrum(b)[0]);
  Eigen::MatrixXd as = a, bs = b;
  if (lam < 0) {
    as -= lam * Eigen::MatrixXd::Identity(n, n);
    bs -= lam * Eigen::MatrixXd::Identity(n, n);
    rep.details["shift"] = -lam;
  }

  const bool order_direct =
      entrywise_order(bs, as, opt.tol).relation != OrderRelation::incomparable;

  bool order_resolvent = true;
  for (double s : opt.s_samples) {
    Eigen::MatrixXd ra =
        (as + s * Eigen::MatrixXd::Identity(n, n)).ldlt().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::MatrixXd rb =
        (bs + s * Eigen::MatrixXd::Identity(n, n)).ldlt().solve(Eigen::MatrixXd::Identity(n, n));
    if (entrywise_order(ra, rb, opt.tol * std::max(1.0, scale_of(ra))).relation ==
        OrderRelation::incomparable) {
      order_resolvent = false;
      rep.note_witness({{"clause", "resolvent"}, {"s", s}});
      break;
    }
  }

  bool order_semigroup = true;
  for (double t : opt.t_samples) {
    Eigen::MatrixXd ea = matrix_exponential(as, t);
    Eigen::MatrixXd eb = matrix_exponential(bs, t);
    if (entrywise_order(ea, eb, opt.tol * std::max(1.0, scale_of(ea))).relation ==
        OrderRelation::incomparable) {
      order_semigroup = false;
      rep.note_witness({{"clause", "semigroup"}, {"t", t}});
      break;
    }
  }

  rep.verdicts["order_direct"] = order_direct;
  rep.verdicts["order_resolvent"] = order_resolvent;
  rep.verdicts["order_semigroup"] = order_semigroup;
  rep.passed = (order_direct == order_resolvent) && (order_direct == order_semigroup);
  return rep;
}

CheckReport semigroup_domination_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                       const ConeCheckOptions& opt) {
  require_symmetric(a, "semigroup_domination_check");
  require_symmetric(b, "semigroup_domination_check");
  if (a.rows() != b.rows())
    throw std::invalid_argument("semigroup_domination_check: dimension mismatch");
  if (!is_stoquastic(a, opt.tol))
    throw std::invalid_argument("semigroup_domination_check: A not stoquastic");
  if (b.maxCoeff() > opt.tol)
    throw std::invalid_argument("semigroup_domination_check: B has a positive entry");

  CheckReport rep;
  rep.check = "semigroup_domination";
  rep.dim = a.rows();
  rep.tolerances["tol"] = opt.tol;

  bool dominated = true, nonneg = true;
  double worst = 0.0;
  for (double t : opt.t_samples) {
    Eigen::MatrixXd ea = matrix_exponential(a, t);
    Eigen::MatrixXd eab = matrix_exponential(a + b, t);
    const double slack = opt.tol * std::max(1.0, scale_of(eab));
    const double dmin = (eab - ea).minCoeff();
    worst = std::min(worst, dmin);
    if (dmin < -slack) {
      dominated = false;
      rep.note_witness({{"clause", "domination"}, {"t", t}, {"min_entry", dmin}});
    }
    if (ea.minCoeff() < -opt.tol * std::max(1.0, scale_of(ea))) {
      nonneg = false;
      rep.note_witness({{"clause", "semigroup_nonneg"}, {"t", t}});
    }
  }
  rep.verdicts["domination"] = dominated;
  rep.verdicts["semigroup_nonnegative"] = nonneg;
  rep.details["worst_margin"] = worst;
  rep.passed = dominated && nonneg;
  return rep;
}

}  // namespace polaron
