#include "mbd/eigsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <lapacke.h>

namespace mbd {

namespace {

std::vector<Index> lexicographic_order(const ComplexVector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });
  return order;
}

lapack_complex_double* lapack_ptr(Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); }

double lu_condition(const Eigen::PartialPivLU<ComplexMatrix>& lu) {
  const auto diag = lu.matrixLU().diagonal();
  for (Index i = 0; i < diag.size(); ++i)
    if (diag(i) == Complex(0.0)) return std::numeric_limits<double>::infinity();
  const double rcond = lu.rcond();
  return rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
}

}  // namespace

EigResult eig_hermitean(const ComplexMatrix& A, std::optional<double> hermitean_tol) {
  require_square_finite(A, "eig_hermitean input");
  const double tol = hermitean_tol.value_or(default_hermitean_tol(A.rows()));
  if (!is_hermitean(A, tol)) throw Error(ErrorCode::not_hermitean, "eig_hermitean input is not hermitean");

  // Symmetrize so the solver sees an exactly hermitean matrix.
  const Index n = A.rows();
  EigResult out;
  out.vectors = (A + A.adjoint()) * 0.5;
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                                         lapack_ptr(out.vectors.data()), static_cast<lapack_int>(n), w.data());
  if (info != 0) throw Error(ErrorCode::no_convergence, "hermitean eigensolver (zheevd info " + std::to_string(info) + ")");
  out.values = w.cast<Complex>();
  out.condition_estimate = 1.0;
  return out;
}

Eigen::VectorXd eigenvalues_hermitean(const ComplexMatrix& A) {
  require_square_finite(A, "eigenvalue input");
  const Index n = A.rows();
  ComplexMatrix work = (A + A.adjoint()) * 0.5;
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(n),
                                         lapack_ptr(work.data()), static_cast<lapack_int>(n), w.data());
  if (info != 0) throw Error(ErrorCode::no_convergence, "hermitean eigensolver (zheevd info " + std::to_string(info) + ")");
  return w;
}

EigResult eig_general(const ComplexMatrix& A) {
  require_square_finite(A, "eig_general input");
  const Index n = A.rows();
  ComplexMatrix work = A;
  ComplexVector raw_values(n);
  ComplexMatrix raw_vectors(n, n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n), lapack_ptr(work.data()),
                    static_cast<lapack_int>(n), lapack_ptr(raw_values.data()), nullptr, 1,
                    lapack_ptr(raw_vectors.data()), static_cast<lapack_int>(n));
  if (info != 0) throw Error(ErrorCode::no_convergence, "complex eigensolver (zgeev info " + std::to_string(info) + ")");

  const auto order = lexicographic_order(raw_values);
  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = raw_values(src);
    const double norm = raw_vectors.col(src).norm();
    out.vectors.col(k) = raw_vectors.col(src) / (norm > 0.0 ? norm : 1.0);
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(out.vectors);
  out.condition_estimate = lu_condition(lu);
  return out;
}

ComplexVector eigenvalues_general(const ComplexMatrix& A) {
  require_square_finite(A, "eigenvalue input");
  const Index n = A.rows();
  ComplexMatrix work = A;
  ComplexVector raw(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n), lapack_ptr(work.data()),
                                        static_cast<lapack_int>(n), lapack_ptr(raw.data()), nullptr, 1, nullptr, 1);
  if (info != 0) throw Error(ErrorCode::no_convergence, "complex eigensolver (zgeev info " + std::to_string(info) + ")");
  const auto order = lexicographic_order(raw);
  ComplexVector values(n);
  for (Index k = 0; k < n; ++k) values(k) = raw(order[static_cast<std::size_t>(k)]);
  return values;
}

std::vector<Index> coalesced_clusters(const ComplexVector& values, const Eigen::VectorXd& conditions,
                                      double radius_scale) {
  const Index n = values.size();
  if (conditions.size() != n) throw Error(ErrorCode::size_mismatch, "one condition number per eigenvalue expected");
  const auto m = static_cast<std::size_t>(n);
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double radius = radius_scale * std::max(conditions(i), conditions(j));
      if (std::abs(values(i) - values(j)) <= radius)
        parent[find(static_cast<std::size_t>(i))] = find(static_cast<std::size_t>(j));
    }
  std::vector<Index> labels(m, -1);
  std::vector<Index> root_label(m, -1);
  Index next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    auto& l = root_label[find(i)];
    if (l < 0) l = next++;
    labels[i] = l;
  }
  return labels;
}

double sylvester_separation(const ComplexMatrix& X, const ComplexMatrix& Y) {
  const Index p = X.rows();
  const Index q = Y.rows();
  if (p == 1 && q == 1) return std::abs(X(0, 0) - Y(0, 0));
  // vec(X Z - Z Y) = (I_q kron X - Y^T kron I_p) vec(Z)
  ComplexMatrix K = ComplexMatrix::Zero(p * q, p * q);
  for (Index b = 0; b < q; ++b) K.block(b * p, b * p, p, p) = X;
  for (Index b = 0; b < q; ++b)
    for (Index a = 0; a < q; ++a)
      for (Index i = 0; i < p; ++i) K(b * p + i, a * p + i) -= Y(a, b);
  const Eigen::VectorXd sv = Eigen::BDCSVD<ComplexMatrix>(K).singularValues();
  return sv(sv.size() - 1);
}

SchurForm::SchurForm(const ComplexMatrix& A) {
  require_square_finite(A, "Schur input");
  const Index n = A.rows();
  T_ = A;
  Q_.resize(n, n);
  ComplexVector w(n);
  lapack_int sdim = 0;
  const lapack_int info =
      LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, static_cast<lapack_int>(n), lapack_ptr(T_.data()),
                    static_cast<lapack_int>(n), &sdim, lapack_ptr(w.data()), lapack_ptr(Q_.data()),
                    static_cast<lapack_int>(n));
  if (info != 0) throw Error(ErrorCode::no_convergence, "complex Schur iteration did not converge");
  T_.triangularView<Eigen::StrictlyLower>().setZero();
}

void SchurForm::move_up(ComplexMatrix& T, ComplexMatrix& Q, Index from, Index to) {
  const Index n = T.rows();
  for (Index k = from - 1; k >= to; --k) {
    // Swap diagonal entries k and k+1 with one plane rotation.
    const Complex t11 = T(k, k);
    const Complex t22 = T(k + 1, k + 1);
    const Complex f = T(k, k + 1);
    const Complex g = t22 - t11;
    const double rho = std::hypot(std::abs(f), std::abs(g));
    if (rho == 0.0) continue;
    double cs;
    Complex sn;
    if (std::abs(f) == 0.0) {
      cs = 0.0;
      sn = std::conj(g) / std::abs(g);
    } else {
      cs = std::abs(f) / rho;
      sn = (f / std::abs(f)) * std::conj(g) / rho;
    }
    for (Index j = k + 2; j < n; ++j) {
      const Complex x = T(k, j), y = T(k + 1, j);
      T(k, j) = cs * x + sn * y;
      T(k + 1, j) = cs * y - std::conj(sn) * x;
    }
    for (Index i = 0; i < k; ++i) {
      const Complex x = T(i, k), y = T(i, k + 1);
      T(i, k) = cs * x + std::conj(sn) * y;
      T(i, k + 1) = cs * y - sn * x;
    }
    T(k, k) = t22;
    T(k + 1, k + 1) = t11;
    for (Index i = 0; i < n; ++i) {
      const Complex x = Q(i, k), y = Q(i, k + 1);
      Q(i, k) = cs * x + std::conj(sn) * y;
      Q(i, k + 1) = cs * y - sn * x;
    }
  }
}

ComplexMatrix SchurForm::invariant_subspace(const std::vector<Complex>& targets) const {
  const Index n = T_.rows();
  const auto k = static_cast<Index>(targets.size());
  if (k > n) throw Error(ErrorCode::size_mismatch, "more targets than eigenvalues");
  ComplexMatrix T = T_;
  ComplexMatrix Q = Q_;
  // Entries at positions < placed are the ones already moved to the top.
  Index placed = 0;
  for (const auto& target : targets) {
    Index best = placed;
    for (Index i = placed + 1; i < n; ++i)
      if (std::abs(T(i, i) - target) < std::abs(T(best, best) - target)) best = i;
    move_up(T, Q, best, placed);
    ++placed;
  }
  return Q.leftCols(k);
}

TransformSolver::TransformSolver(const ComplexMatrix& W) {
  require_square_finite(W, "transform");
  lu_.compute(W);
  condition_ = lu_condition(lu_);
  if (std::isinf(condition_)) throw Error(ErrorCode::exactly_singular, "transform has a zero pivot");
}

ComplexMatrix TransformSolver::solve(const ComplexMatrix& B) const {
  if (B.rows() != lu_.rows()) throw Error(ErrorCode::size_mismatch, "right-hand side rows differ from transform");
  return lu_.solve(B);
}

bool TransformSolver::ill_conditioned() const {
  return condition_ > 1.0 / (static_cast<double>(lu_.rows()) * machine_epsilon);
}

SolveResult solve_right(const ComplexMatrix& W, const ComplexMatrix& B) {
  TransformSolver solver(W);
  return {solver.solve(B), solver.condition_estimate(), solver.ill_conditioned()};
}

}  // namespace mbd
