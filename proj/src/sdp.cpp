#include "divmax/sdp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "divmax/error.hpp"
#include "divmax/greedy.hpp"
#include "divmax/rng.hpp"

namespace divmax {

namespace {

// One coefficient of a symmetric constraint matrix, upper triangle, 0-based.
// Block 1 is the bordered matrix, block 2 the diagonal slack block.
struct Term {
  int blk;
  std::size_t i;
  std::size_t j;
  double v;
};

struct StandardForm {
  std::size_t n = 0;       // bordered dimension is n + 1
  std::size_t slacks = 0;  // diagonal block size
  std::vector<std::vector<Term>> rows;
  std::vector<double> rhs;
};

StandardForm standard_form(const SdpProblem& prob) {
  const std::size_t n = prob.size();
  StandardForm f;
  f.n = n;
  f.slacks = prob.diagonal_cut ? 2 : 1;
  f.rows.push_back({Term{1, n, n, 1.0}});
  f.rhs.push_back(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    f.rows.push_back({Term{1, i, i, 1.0}, Term{1, i, n, -0.5}});
    f.rhs.push_back(0.0);
  }
  std::vector<Term> knap;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = prob.costs[i] * prob.costs[j];
      if (v != 0.0) knap.push_back(Term{1, i, j, v});
    }
  }
  const double k2 = prob.budget * prob.budget;
  knap.push_back(Term{2, 0, 0, std::max(1.0, k2)});
  f.rows.push_back(std::move(knap));
  f.rhs.push_back(k2);
  if (prob.diagonal_cut) {
    std::vector<Term> cut;
    for (std::size_t i = 0; i < n; ++i) {
      if (prob.costs[i] != 0.0) cut.push_back(Term{1, i, i, prob.costs[i]});
    }
    cut.push_back(Term{2, 1, 1, std::max(1.0, prob.budget)});
    f.rows.push_back(std::move(cut));
    f.rhs.push_back(prob.budget);
  }
  return f;
}

double term_weight(const Term& t) { return t.i == t.j ? 1.0 : 2.0; }

double frob_norm(const std::vector<Term>& row) {
  double s = 0.0;
  for (const Term& t : row) s += term_weight(t) * t.v * t.v;
  return std::sqrt(s);
}

// A(Y) for row-scaled constraints.
Eigen::VectorXd apply_a(const StandardForm& f, const Eigen::VectorXd& scale, const Eigen::MatrixXd& Y1,
                        const Eigen::VectorXd& y2) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(f.rows.size()));
  for (std::size_t k = 0; k < f.rows.size(); ++k) {
    double s = 0.0;
    for (const Term& t : f.rows[k]) {
      if (t.blk == 1) {
        s += term_weight(t) * t.v * Y1(static_cast<Eigen::Index>(t.i), static_cast<Eigen::Index>(t.j));
      } else {
        s += t.v * y2(static_cast<Eigen::Index>(t.i));
      }
    }
    out(static_cast<Eigen::Index>(k)) = s * scale(static_cast<Eigen::Index>(k));
  }
  return out;
}

// A^*(y) for row-scaled constraints.
void apply_adjoint(const StandardForm& f, const Eigen::VectorXd& scale, const Eigen::VectorXd& y,
                   Eigen::MatrixXd& M1, Eigen::VectorXd& m2) {
  M1.setZero(static_cast<Eigen::Index>(f.n + 1), static_cast<Eigen::Index>(f.n + 1));
  m2.setZero(static_cast<Eigen::Index>(f.slacks));
  for (std::size_t k = 0; k < f.rows.size(); ++k) {
    const double yk = y(static_cast<Eigen::Index>(k)) * scale(static_cast<Eigen::Index>(k));
    if (yk == 0.0) continue;
    for (const Term& t : f.rows[k]) {
      const auto i = static_cast<Eigen::Index>(t.i);
      const auto j = static_cast<Eigen::Index>(t.j);
      if (t.blk == 1) {
        M1(i, j) += yk * t.v;
        if (i != j) M1(j, i) += yk * t.v;
      } else {
        m2(i) += yk * t.v;
      }
    }
  }
}

Eigen::MatrixXd gram_matrix(const StandardForm& f, const Eigen::VectorXd& scale) {
  std::map<std::tuple<int, std::size_t, std::size_t>, std::vector<std::pair<std::size_t, double>>> touched;
  for (std::size_t k = 0; k < f.rows.size(); ++k) {
    for (const Term& t : f.rows[k]) touched[{t.blk, t.i, t.j}].emplace_back(k, t.v);
  }
  const auto m = static_cast<Eigen::Index>(f.rows.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  for (const auto& [pos, list] : touched) {
    const double w = std::get<1>(pos) == std::get<2>(pos) ? 1.0 : 2.0;
    for (const auto& [a, va] : list) {
      for (const auto& [b, vb] : list) {
        G(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += w * va * vb;
      }
    }
  }
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) G(a, b) *= scale(a) * scale(b);
  }
  return G;
}

double trace_inner(const ObjectiveMatrix& p, const Eigen::MatrixXd& Y) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    s += p.diagonal(i) * Y(ii, ii);
    for (const Neighbor& e : p.row(i)) s += e.weight * Y(ii, static_cast<Eigen::Index>(e.node));
  }
  return s;
}

double max_abs_entry(const ObjectiveMatrix& p) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    m = std::max(m, std::abs(p.diagonal(i)));
    for (const Neighbor& e : p.row(i)) m = std::max(m, std::abs(e.weight));
  }
  return m;
}

Eigen::VectorXd clamped_x(const Eigen::MatrixXd& Y) {
  const Eigen::Index n = Y.rows() - 1;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = std::clamp(Y(i, n), 0.0, 1.0);
  return x;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SdpProblem make_sdp_problem(const Instance& inst, const ObjectiveMatrix& p, bool diagonal_cut) {
  if (p.size() != inst.size()) throw Error(ErrorCode::LengthMismatch, "objective and instance sizes differ");
  return SdpProblem{p, inst.costs, inst.budget, diagonal_cut};
}

double SdpResiduals::max() const { return std::max({diag_violation, knapsack_violation, psd_violation}); }

SdpResiduals compute_residuals(const SdpProblem& prob, const Eigen::MatrixXd& Y, const Eigen::VectorXd&) {
  const auto n = static_cast<Eigen::Index>(prob.size());
  if (Y.rows() != n + 1 || Y.cols() != n + 1) throw Error(ErrorCode::DimensionMismatch, "bordered matrix size");
  SdpResiduals r;
  r.diag_violation = std::abs(Y(n, n) - 1.0);
  for (Eigen::Index i = 0; i < n; ++i) r.diag_violation = std::max(r.diag_violation, std::abs(Y(i, i) - Y(i, n)));
  double knap = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      knap += prob.costs[static_cast<std::size_t>(i)] * prob.costs[static_cast<std::size_t>(j)] * Y(i, j);
    }
  }
  const double k2 = prob.budget * prob.budget;
  r.knapsack_violation = std::max(0.0, knap - k2) / std::max(1.0, k2);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Y, Eigen::EigenvaluesOnly);
  r.psd_violation = std::max(0.0, -es.eigenvalues()(0));
  return r;
}

namespace {

// Upper bound on tr(Y) over the feasible set: x_i <= 1 and (b^T x)^2 <= b^T X b <= k^2.
double trace_ceiling(const SdpProblem& prob) {
  std::size_t free_nodes = 0;
  double min_cost = std::numeric_limits<double>::infinity();
  for (double c : prob.costs) {
    if (c <= 0.0) {
      ++free_nodes;
    } else {
      min_cost = std::min(min_cost, c);
    }
  }
  const double n = static_cast<double>(prob.size());
  const double paid = std::isfinite(min_cost) ? prob.budget / min_cost : 0.0;
  return 1.0 + std::min(n, static_cast<double>(free_nodes) + paid);
}

// c^T y for the SDPA-convention multipliers, corrected by the PSD defect of
// Z = sum_k y_k F_k - F0 charged against tr(Y) <= trace_ceiling and slacks <= 1.
// Valid for any y.
double certified_dual_bound(const SdpProblem& prob, const StandardForm& f, const Eigen::VectorXd& y) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(f.rows.size()));
  Eigen::MatrixXd Z1;
  Eigen::VectorXd z2;
  apply_adjoint(f, ones, y, Z1, z2);
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    Z1(ii, ii) -= prob.objective.diagonal(i);
    for (const Neighbor& e : prob.objective.row(i)) Z1(ii, static_cast<Eigen::Index>(e.node)) -= e.weight;
  }
  double bound = 0.0;
  for (std::size_t k = 0; k < f.rhs.size(); ++k) bound += f.rhs[k] * y(static_cast<Eigen::Index>(k));
  const double lam_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Z1, Eigen::EigenvaluesOnly).eigenvalues()(0);
  return bound - std::min(0.0, lam_min) * trace_ceiling(prob) - z2.cwiseMin(0.0).sum();
}

}  // namespace

SdpSolution solve_sdp_relaxation(const SdpProblem& prob, const SdpOptions& opts) {
  const std::size_t n = prob.size();
  if (n > opts.max_dimension) {
    throw Error(ErrorCode::DimensionTooLarge,
                "n = " + std::to_string(n) + " exceeds the dense ceiling " + std::to_string(opts.max_dimension));
  }
  if (prob.costs.size() != n) throw Error(ErrorCode::LengthMismatch, "costs and objective sizes differ");

  const StandardForm f = standard_form(prob);
  const auto m = static_cast<Eigen::Index>(f.rows.size());
  const auto N = static_cast<Eigen::Index>(n + 1);
  const auto ns = static_cast<Eigen::Index>(f.slacks);

  Eigen::VectorXd scale(m), b(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    scale(k) = 1.0 / frob_norm(f.rows[static_cast<std::size_t>(k)]);
    b(k) = f.rhs[static_cast<std::size_t>(k)] * scale(k);
  }
  const Eigen::LLT<Eigen::MatrixXd> gram(gram_matrix(f, scale));

  const double cscale = std::max(1.0, max_abs_entry(prob.objective));
  Eigen::MatrixXd C1 = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    C1(ii, ii) = -prob.objective.diagonal(i) / cscale;
    for (const Neighbor& e : prob.objective.row(i)) C1(ii, static_cast<Eigen::Index>(e.node)) = -e.weight / cscale;
  }
  const Eigen::VectorXd C2 = Eigen::VectorXd::Zero(ns);
  const double c_norm = C1.norm();
  const double b_norm = b.norm();

  Eigen::MatrixXd X1 = Eigen::MatrixXd::Zero(N, N);
  X1(N - 1, N - 1) = 1.0;
  Eigen::VectorXd x2 = Eigen::VectorXd::Zero(ns);
  Eigen::MatrixXd S1 = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd s2 = Eigen::VectorXd::Zero(ns);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd M1;
  Eigen::VectorXd m2;
  double mu = opts.mu0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;

  SdpSolution sol;
  std::size_t it = 0;
  for (; it < opts.max_iters; ++it) {
    const Eigen::VectorXd ax = apply_a(f, scale, X1, x2);
    const Eigen::VectorXd asc = apply_a(f, scale, S1 - C1, s2 - C2);
    y = gram.solve(mu * (b - ax) - asc);

    apply_adjoint(f, scale, y, M1, m2);
    const Eigen::MatrixXd V1 = C1 - M1 - mu * X1;
    const Eigen::VectorXd v2 = C2 - m2 - mu * x2;
    es.compute(V1);
    const Eigen::VectorXd lam = es.eigenvalues();
    const Eigen::MatrixXd& Q = es.eigenvectors();
    S1 = Q * lam.cwiseMax(0.0).asDiagonal() * Q.transpose();
    X1 = Q * (-lam.cwiseMin(0.0) / mu).asDiagonal() * Q.transpose();
    s2 = v2.cwiseMax(0.0);
    x2 = (-v2.cwiseMin(0.0)) / mu;

    const double pinf = (apply_a(f, scale, X1, x2) - b).norm() / (1.0 + b_norm);
    const double dinf =
        std::sqrt((C1 - M1 - S1).squaredNorm() + (C2 - m2 - s2).squaredNorm()) / (1.0 + c_norm);
    const double pobj = (C1.cwiseProduct(X1)).sum() + C2.dot(x2);
    const double dobj = b.dot(y);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (pinf <= opts.tol && dinf <= opts.tol && gap <= opts.tol) {
      const SdpResiduals r = compute_residuals(prob, X1, x2);
      if (r.max() <= opts.tol) {
        sol.converged = true;
        ++it;
        break;
      }
    }
    if (it % 20 == 19) {
      if (pinf > 5.0 * dinf) {
        mu *= 2.0;
      } else if (pinf < dinf / 5.0) {
        mu *= 0.5;
      }
    }
  }

  sol.Y = X1;
  sol.X = X1.topLeftCorner(N - 1, N - 1);
  sol.x = clamped_x(X1);
  sol.slack = x2;
  sol.y.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) sol.y(k) = -y(k) * scale(k) * cscale;
  sol.S = S1 * cscale;
  sol.S_diag = s2 * cscale;
  sol.objective_value = trace_inner(prob.objective, X1);
  sol.dual_bound = certified_dual_bound(prob, f, sol.y);
  sol.residuals = compute_residuals(prob, X1, x2);
  sol.iterations = it;
  return sol;
}

SolverReport gaussian_round(const SdpSolution& sol, const Instance& inst, const ObjectiveMatrix& p,
                            const RoundingOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto n = static_cast<Eigen::Index>(inst.size());
  if (sol.X.rows() != n || sol.x.size() != n || p.size() != inst.size()) {
    throw Error(ErrorCode::DimensionMismatch, "solution and instance sizes differ");
  }

  // Sigma = X - x x^T may be rank deficient: factor through its spectrum.
  const Eigen::MatrixXd sigma = sol.X - sol.x * sol.x.transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (es.eigenvalues()(i) > 1e-9) keep.push_back(i);
  }
  Eigen::MatrixXd V(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    V.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) * std::sqrt(es.eigenvalues()(keep[c]));
  }

  const Rng root(opts.seed);
  FlipSet best = FlipSet::from_nodes(p, inst.costs, {});
  std::vector<double> z(static_cast<std::size_t>(n));
  Eigen::VectorXd r(V.cols());
  for (std::size_t s = 0; s < opts.samples; ++s) {
    Rng rng = root.split(s);
    for (Eigen::Index c = 0; c < r.size(); ++c) r(c) = rng.normal();
    const Eigen::VectorXd zz = sol.x + V * r;
    for (Eigen::Index i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::clamp(zz(i), 0.0, 1.0);
    FlipSet cand = FlipSet::from_nodes(p, inst.costs, bernoulli_round(z, inst, p, rng, opts.attempts_cap));
    if (s == 0 || cand.value() > best.value()) best = std::move(cand);
  }

  if (opts.polish) {
    GreedyConfig cfg;
    cfg.iterations = std::max<std::size_t>(1, opts.polish_iterations);
    cfg.seed = opts.seed;
    SolverReport polished = i_greedy_from(inst, p, cfg, best);
    if (polished.selection.value() > best.value()) best = polished.selection;
  }

  SolverReport rep = make_report("sdp", inst, std::move(best), opts.seed);
  rep.work = opts.samples;
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

SolverReport sdp_relax(const Instance& inst, const ObjectiveMatrix& p, const SdpOptions& sdp,
                       const RoundingOptions& rounding) {
  const auto t0 = std::chrono::steady_clock::now();
  const SdpSolution sol = solve_sdp_relaxation(make_sdp_problem(inst, p), sdp);
  SolverReport rep = gaussian_round(sol, inst, p, rounding);
  rep.relaxation_bound = sol.objective_value;
  rep.status = sol.converged ? "ok" : "nonconvergence";
  rep.work = sol.iterations;
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

void export_sdpa(const SdpProblem& prob, std::ostream& out) {
  const StandardForm f = standard_form(prob);
  const std::size_t n = prob.size();
  out << f.rows.size() << "\n2\n" << (n + 1) << " -" << f.slacks << "\n";
  for (std::size_t k = 0; k < f.rhs.size(); ++k) out << (k ? " " : "") << fmt17(f.rhs[k]);
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    if (prob.objective.diagonal(i) != 0.0) {
      out << "0 1 " << i + 1 << ' ' << i + 1 << ' ' << fmt17(prob.objective.diagonal(i)) << "\n";
    }
    for (const Neighbor& e : prob.objective.row(i)) {
      if (e.node > i && e.weight != 0.0) out << "0 1 " << i + 1 << ' ' << e.node + 1 << ' ' << fmt17(e.weight) << "\n";
    }
  }
  for (std::size_t k = 0; k < f.rows.size(); ++k) {
    for (const Term& t : f.rows[k]) {
      out << k + 1 << ' ' << t.blk << ' ' << t.i + 1 << ' ' << t.j + 1 << ' ' << fmt17(t.v) << "\n";
    }
  }
  if (!out) throw Error(ErrorCode::IoFailure, "writing SDPA problem");
}

void export_sdpa_solution(const SdpProblem& prob, const SdpSolution& sol, std::ostream& out) {
  const auto N = static_cast<Eigen::Index>(prob.size() + 1);
  if (sol.Y.rows() != N || sol.y.size() != static_cast<Eigen::Index>(prob.constraint_count())) {
    throw Error(ErrorCode::DimensionMismatch, "solution does not match problem");
  }
  for (Eigen::Index k = 0; k < sol.y.size(); ++k) out << (k ? " " : "") << fmt17(sol.y(k));
  out << "\n";
  auto write_block = [&](int matno, const Eigen::MatrixXd& M, const Eigen::VectorXd& d) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      for (Eigen::Index j = i; j < M.cols(); ++j) {
        if (M(i, j) != 0.0) out << matno << " 1 " << i + 1 << ' ' << j + 1 << ' ' << fmt17(M(i, j)) << "\n";
      }
    }
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (d(i) != 0.0) out << matno << " 2 " << i + 1 << ' ' << i + 1 << ' ' << fmt17(d(i)) << "\n";
    }
  };
  write_block(1, sol.S, sol.S_diag);
  write_block(2, sol.Y, sol.slack);
  if (!out) throw Error(ErrorCode::IoFailure, "writing SDPA solution");
}

SdpSolution import_sdpa_solution(std::istream& in, const SdpProblem& prob) {
  const std::size_t n = prob.size();
  const auto N = static_cast<Eigen::Index>(n + 1);
  const std::size_t m = prob.constraint_count();
  const auto ns = static_cast<Eigen::Index>(prob.diagonal_cut ? 2 : 1);

  std::string line;
  std::size_t line_no = 0;
  auto parse_error = [&](const std::string& what) {
    return Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
  };

  std::vector<double> yv;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double v = 0.0;
    while (ls >> v) yv.push_back(v);
    if (!ls.eof()) throw parse_error("non-numeric dual vector entry");
    break;
  }
  if (yv.empty()) throw parse_error("missing dual vector");
  if (yv.size() != m) {
    throw Error(ErrorCode::DimensionMismatch,
                "dual vector has " + std::to_string(yv.size()) + " entries, expected " + std::to_string(m));
  }

  SdpSolution sol;
  sol.y = Eigen::Map<const Eigen::VectorXd>(yv.data(), static_cast<Eigen::Index>(m));
  sol.Y = Eigen::MatrixXd::Zero(N, N);
  sol.S = Eigen::MatrixXd::Zero(N, N);
  sol.slack = Eigen::VectorXd::Zero(ns);
  sol.S_diag = Eigen::VectorXd::Zero(ns);
  bool corner_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long matno = 0, blk = 0, i = 0, j = 0;
    double v = 0.0;
    if (!(ls >> matno >> blk >> i >> j >> v)) throw parse_error("expected 'matno blk i j value'");
    std::string extra;
    if (ls >> extra) throw parse_error("trailing text");
    if ((matno != 1 && matno != 2) || (blk != 1 && blk != 2)) throw parse_error("matrix or block number out of range");
    const Eigen::Index lim = blk == 1 ? N : ns;
    if (i < 1 || j < 1 || i > lim || j > lim) throw Error(ErrorCode::DimensionMismatch, "entry index out of range");
    const auto a = static_cast<Eigen::Index>(i - 1);
    const auto c = static_cast<Eigen::Index>(j - 1);
    if (blk == 2) {
      if (a != c) throw parse_error("off-diagonal entry in diagonal block");
      (matno == 2 ? sol.slack : sol.S_diag)(a) = v;
      continue;
    }
    Eigen::MatrixXd& M = matno == 2 ? sol.Y : sol.S;
    M(a, c) = v;
    M(c, a) = v;
    if (matno == 2 && a == N - 1 && c == N - 1) corner_seen = true;
  }
  if (!corner_seen) throw parse_error("primal matrix has no corner entry");

  sol.X = sol.Y.topLeftCorner(N - 1, N - 1);
  sol.x = clamped_x(sol.Y);
  sol.objective_value = trace_inner(prob.objective, sol.Y);
  sol.dual_bound = certified_dual_bound(prob, standard_form(prob), sol.y);
  sol.residuals = compute_residuals(prob, sol.Y, sol.slack);
  sol.converged = sol.residuals.max() <= 1e-5;
  return sol;
}

}  // namespace divmax
