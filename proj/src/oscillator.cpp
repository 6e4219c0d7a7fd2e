#include "prerep/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "prerep/errors.hpp"

namespace prerep {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

cdouble to_c(const ExactScalar& s) { return {s.real_double(), s.imag_double()}; }

void accumulate(NumPoly& p, const Monomial& m, cdouble c) {
  if (c == cdouble(0.0, 0.0)) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cdouble(0.0, 0.0)) p.erase(it);
  }
}

class VarIndex {
 public:
  explicit VarIndex(const std::vector<VarId>& vars) {
    for (std::size_t k = 0; k < vars.size(); ++k) index_.emplace(vars[k], k);
  }
  std::optional<std::size_t> find(VarId v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t at(VarId v) const {
    auto k = find(v);
    if (!k) throw DomainError("variable " + v.name() + " is not a coordinate of the Gaussian state");
    return *k;
  }

 private:
  std::map<VarId, std::size_t> index_;
};

// D_z p = d_z p - 2 (M z)_z p: the derivative conjugated by the Gaussian.
NumPoly conjugated_derivative(const NumPoly& p, VarId z, const GaussianState& st, const VarIndex& idx) {
  NumPoly out;
  for (const auto& [m, c] : p) {
    const std::uint32_t e = m.exponent(z);
    if (e > 0) accumulate(out, m.divide(Monomial(z)), c * static_cast<double>(e));
  }
  if (auto row = idx.find(z)) {
    for (std::size_t b = 0; b < st.vars.size(); ++b) {
      const cdouble mab = st.M(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(b));
      if (mab == cdouble(0.0, 0.0)) continue;
      const Monomial zb(st.vars[b]);
      for (const auto& [m, c] : p) accumulate(out, m * zb, -2.0 * mab * c);
    }
  }
  return out;
}

std::string spectrum_text(const std::vector<cdouble>& ev) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t k = 0; k < ev.size(); ++k) os << (k ? ", " : "") << ev[k].real() << (ev[k].imag() < 0 ? "-" : "+") << std::abs(ev[k].imag()) << "i";
  return os.str();
}

// Rows of the Hamiltonian eigenvalue problem grouped by nearly equal eigenvalues.
struct Cluster {
  cdouble value;
  std::vector<Eigen::Index> members;
};

std::vector<Cluster> cluster_eigenvalues(const VectorXcd& ev, double tol) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index k = 0; k < ev.size(); ++k) order[static_cast<std::size_t>(k)] = k;
  std::sort(order.begin(), order.end(), [&ev](Eigen::Index a, Eigen::Index b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });
  std::vector<Cluster> clusters;
  for (Eigen::Index k : order) {
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(ev(k) - c.value) < tol) {
        c.members.push_back(k);
        cdouble sum = 0;
        for (auto m : c.members) sum += ev(m);
        c.value = sum / static_cast<double>(c.members.size());
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({ev(k), {k}});
  }
  return clusters;
}

// Orthonormal basis of ker(H - mu I) with the expected dimension (or fewer when defective).
MatrixXcd cluster_nullspace(const MatrixXcd& H, cdouble mu, Eigen::Index expected, double tol) {
  const MatrixXcd K = H - mu * MatrixXcd::Identity(H.rows(), H.cols());
  Eigen::JacobiSVD<MatrixXcd> svd(K, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index null = 0;
  for (Eigen::Index k = s.size() - 1; k >= 0 && null < expected; --k) {
    if (s(k) < tol) ++null;
    else break;
  }
  return svd.matrixV().rightCols(null);
}

// Expectation of a product of centered Gaussian coordinates (Wick/Isserlis).
cdouble wick(const MatrixXcd& S, std::vector<Eigen::Index> idx) {
  if (idx.empty()) return 1.0;
  if (idx.size() % 2 == 1) return 0.0;
  const Eigen::Index a = idx.back();
  idx.pop_back();
  cdouble total = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const cdouble sab = S(a, idx[k]);
    if (sab == cdouble(0.0, 0.0)) continue;
    std::vector<Eigen::Index> rest = idx;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    total += sab * wick(S, std::move(rest));
  }
  return total;
}

void append_indices(std::vector<Eigen::Index>& out, const Monomial& m, const VarIndex& idx, bool conjugate) {
  for (const auto& [v, e] : m.entries()) {
    VarId target = v;
    if (conjugate) {
      const VarId p = v.partner();
      if (idx.find(p)) target = p;
    }
    const auto k = static_cast<Eigen::Index>(idx.at(target));
    for (std::uint32_t r = 0; r < e; ++r) out.push_back(k);
  }
}

}  // namespace

GaussianState solve_gaussian_ground(const WeylOperator& op, GroundPolicy policy, std::vector<VarId> vars) {
  if (vars.empty()) {
    const auto vs = op.variables();
    vars.assign(vs.begin(), vs.end());
  }
  if (vars.empty()) throw DomainError("operator has no variables");
  const VarIndex idx(vars);
  const auto d = static_cast<Eigen::Index>(vars.size());

  MatrixXcd A = MatrixXcd::Zero(d, d);
  MatrixXcd B = MatrixXcd::Zero(d, d);
  cdouble c0 = 0.0;
  auto pair_of = [&](const Monomial& m) {
    const auto& e = m.entries();
    const auto a = static_cast<Eigen::Index>(idx.at(e.front().first));
    const auto b = static_cast<Eigen::Index>(idx.at(e.back().first));
    return std::make_pair(a, b);
  };
  for (const auto& [wm, c] : op.terms()) {
    const cdouble cc = to_c(c);
    if (wm.mul.empty() && wm.der.empty()) {
      c0 += cc;
    } else if (wm.mul.empty() && wm.der.degree() == 2) {
      const auto [a, b] = pair_of(wm.der);
      if (a == b) A(a, a) += cc;
      else {
        A(a, b) += cc / 2.0;
        A(b, a) += cc / 2.0;
      }
    } else if (wm.der.empty() && wm.mul.degree() == 2) {
      const auto [a, b] = pair_of(wm.mul);
      if (a == b) B(a, a) += cc;
      else {
        B(a, b) += cc / 2.0;
        B(b, a) += cc / 2.0;
      }
    } else {
      throw DomainError("operator is not quadratic: term " + WeylOperator(wm, c).to_string());
    }
  }

  // Real coordinates: w = a + i b, conj(w) = a - i b; unpaired variables are real.
  MatrixXcd L = MatrixXcd::Zero(d, d);
  {
    std::vector<bool> done(static_cast<std::size_t>(d), false);
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < d; ++k) {
      if (done[static_cast<std::size_t>(k)]) continue;
      const VarId v = vars[static_cast<std::size_t>(k)];
      const auto p = idx.find(v.partner());
      done[static_cast<std::size_t>(k)] = true;
      if (!p) {
        L(k, col++) = 1.0;
        continue;
      }
      done[*p] = true;
      const Eigen::Index holo = v.conjugated() ? static_cast<Eigen::Index>(*p) : k;
      const Eigen::Index anti = v.conjugated() ? k : static_cast<Eigen::Index>(*p);
      L(holo, col) = 1.0;
      L(holo, col + 1) = cdouble(0.0, 1.0);
      L(anti, col) = 1.0;
      L(anti, col + 1) = cdouble(0.0, -1.0);
      col += 2;
    }
  }
  const MatrixXcd Linv = L.inverse();
  const MatrixXcd At = Linv * A * Linv.transpose();
  const MatrixXcd Bt = L.transpose() * B * L;
  const MatrixXcd Ct = -Bt / 4.0;

  MatrixXcd H = MatrixXcd::Zero(2 * d, 2 * d);
  H.topRightCorner(d, d) = At;
  H.bottomLeftCorner(d, d) = Ct;
  Eigen::ComplexEigenSolver<MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition of the Riccati matrix failed");
  const VectorXcd ev = es.eigenvalues();

  GaussianState st;
  st.vars = vars;
  st.policy = policy;
  st.L = L;
  for (Eigen::Index k = 0; k < ev.size(); ++k) st.hamiltonian_spectrum.push_back(ev(k));
  std::sort(st.hamiltonian_spectrum.begin(), st.hamiltonian_spectrum.end(), [](cdouble a, cdouble b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  const double cluster_tol = 1e-6 * scale;
  const double null_tol = 1e-6 * scale;
  const auto clusters = cluster_eigenvalues(ev, cluster_tol);

  MatrixXcd G = MatrixXcd::Zero(2 * d, 2 * d);
  G.topRightCorner(d, d) = MatrixXcd::Identity(d, d);
  G.bottomLeftCorner(d, d) = MatrixXcd::Identity(d, d);

  std::vector<VectorXcd> chosen;
  for (const auto& c : clusters) {
    const auto m = static_cast<Eigen::Index>(c.members.size());
    if (policy == GroundPolicy::Decaying) {
      if (c.value.real() >= -cluster_tol) continue;
      const MatrixXcd V = cluster_nullspace(H, c.value, m, null_tol);
      for (Eigen::Index k = 0; k < V.cols(); ++k) chosen.emplace_back(V.col(k));
    } else {
      if (std::abs(c.value.imag()) >= cluster_tol) continue;
      const MatrixXcd V = cluster_nullspace(H, c.value, m, null_tol);
      if (V.cols() == 0) continue;
      MatrixXcd Q = V.adjoint() * G * V;
      Q = (Q + Q.adjoint()).eval() / 2.0;
      Eigen::SelfAdjointEigenSolver<MatrixXcd> qs(Q);
      for (Eigen::Index k = 0; k < qs.eigenvalues().size(); ++k) {
        if (qs.eigenvalues()(k) > 1e-9) chosen.emplace_back(V * qs.eigenvectors().col(k));
      }
    }
  }
  if (static_cast<Eigen::Index>(chosen.size()) != d) {
    throw NumericalError("no admissible Gaussian solution: found " + std::to_string(chosen.size()) + " of " +
                         std::to_string(d) + " directions; Riccati spectrum {" + spectrum_text(st.hamiltonian_spectrum) +
                         "}");
  }
  MatrixXcd V(2 * d, d);
  for (Eigen::Index k = 0; k < d; ++k) V.col(k) = chosen[static_cast<std::size_t>(k)];
  const MatrixXcd V1 = V.topRows(d);
  const MatrixXcd V2 = V.bottomRows(d);
  Eigen::FullPivLU<MatrixXcd> lu(V1);
  if (!lu.isInvertible()) {
    throw NumericalError("invariant subspace is not a graph; Riccati spectrum {" +
                         spectrum_text(st.hamiltonian_spectrum) + "}");
  }
  MatrixXcd X = V2 * lu.inverse();
  X = (X + X.transpose()).eval() / 2.0;

  st.M_real = X;
  st.M = Linv.transpose() * X * Linv;
  st.eigenvalue = -2.0 * (At * X).trace() + c0;
  st.riccati_residual = (4.0 * st.M * A * st.M + B).cwiseAbs().maxCoeff();
  const MatrixXd re = X.real();
  Eigen::SelfAdjointEigenSolver<MatrixXd> rs((re + re.transpose()) / 2.0);
  st.min_real_eigenvalue = rs.eigenvalues().minCoeff();
  st.normalizable = st.min_real_eigenvalue > 1e-12;
  return st;
}

NumPoly conjugated_apply(const WeylOperator& op, const GaussianState& state, const NumPoly& p) {
  const VarIndex idx(state.vars);
  NumPoly out;
  for (const auto& [wm, c] : op.terms()) {
    NumPoly q = p;
    for (const auto& [z, e] : wm.der.entries()) {
      for (std::uint32_t r = 0; r < e; ++r) q = conjugated_derivative(q, z, state, idx);
    }
    const cdouble cc = to_c(c);
    for (const auto& [m, x] : q) accumulate(out, m * wm.mul, cc * x);
  }
  return out;
}

ResidualReport ground_residual(const WeylOperator& op, const GaussianState& state) {
  const NumPoly image = conjugated_apply(op, state, NumPoly{{Monomial(), 1.0}});
  ResidualReport r;
  auto it = image.find(Monomial());
  r.constant = it == image.end() ? cdouble(0.0, 0.0) : it->second;
  r.max_residual = std::abs(r.constant - state.eigenvalue);
  for (const auto& [m, c] : image) {
    if (m.empty()) continue;
    r.max_residual = std::max(r.max_residual, std::abs(c));
    if (std::abs(c) > 1e-12) ++r.residual_terms;
  }
  return r;
}

MonomialBasis monomial_basis(const std::vector<VarId>& vars, int min_degree, int max_degree) {
  if (min_degree < 0 || max_degree < min_degree) throw DomainError("invalid degree range");
  MonomialBasis basis;
  std::vector<Monomial> layer{Monomial()};
  for (int deg = 0; deg <= max_degree; ++deg) {
    if (deg >= min_degree) {
      for (const auto& m : layer) basis.monomials.push_back(m);
    }
    if (deg == max_degree) break;
    std::vector<Monomial> next;
    for (const auto& m : layer) {
      // extend only with variables >= the largest one present, so each monomial appears once
      const VarId* last = m.empty() ? nullptr : &m.entries().back().first;
      for (const auto& v : vars) {
        if (last != nullptr && v < *last) continue;
        next.push_back(m * Monomial(v));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  for (std::size_t k = 0; k < basis.monomials.size(); ++k) basis.index.emplace(basis.monomials[k], k);
  return basis;
}

namespace {

// <rows_i psi, cols_j psi> via Gaussian moments; z = L r with r ~ N(0, (2W)^-1).
MatrixXcd gram_block(const GaussianState& state, const MonomialBasis& rows, const MonomialBasis& cols) {
  const VarIndex idx(state.vars);
  const MatrixXd W = 2.0 * state.M_real.real();
  Eigen::LLT<MatrixXd> llt(W);
  if (!state.normalizable || llt.info() != Eigen::Success) throw DomainError("Gaussian state is not normalizable");
  const auto d = W.rows();
  const MatrixXd sigma = (2.0 * W).inverse();
  const MatrixXcd S = state.L * sigma.cast<cdouble>() * state.L.transpose();
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) logdet += 2.0 * std::log(llt.matrixL()(k, k));
  const double norm = std::exp(0.5 * static_cast<double>(d) * std::log(std::numbers::pi) - 0.5 * logdet);

  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(cols.size());
  MatrixXcd gram(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    std::vector<Eigen::Index> left;
    append_indices(left, rows.monomials[static_cast<std::size_t>(i)], idx, true);
    for (Eigen::Index j = 0; j < nc; ++j) {
      std::vector<Eigen::Index> ids = left;
      append_indices(ids, cols.monomials[static_cast<std::size_t>(j)], idx, false);
      gram(i, j) = norm * wick(S, std::move(ids));
    }
  }
  return gram;
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const GaussianState& state, const MonomialBasis& basis) {
  MatrixXcd g = gram_block(state, basis, basis);
  return (g + g.adjoint()) / 2.0;
}

Eigen::MatrixXcd gram_matrix(const GaussianState& state, int degree) {
  return gram_matrix(state, monomial_basis(state.vars, 0, degree));
}

TruncatedRep truncated_matrix(const WeylOperator& op, const GaussianState& state, const MonomialBasis& basis) {
  TruncatedRep rep;
  rep.basis = basis;
  rep.degree = basis.monomials.empty() ? 0 : static_cast<int>(basis.monomials.back().degree());
  const auto n = static_cast<Eigen::Index>(basis.size());
  rep.matrix = MatrixXcd::Zero(n, n);
  rep.truncation_norm.assign(basis.size(), 0.0);
  rep.interior.assign(basis.size(), true);
  for (Eigen::Index j = 0; j < n; ++j) {
    const NumPoly image = conjugated_apply(op, state, NumPoly{{basis.monomials[static_cast<std::size_t>(j)], 1.0}});
    double dropped = 0.0;
    for (const auto& [m, c] : image) {
      auto it = basis.index.find(m);
      if (it == basis.index.end()) dropped += std::norm(c);
      else rep.matrix(static_cast<Eigen::Index>(it->second), j) = c;
    }
    rep.truncation_norm[static_cast<std::size_t>(j)] = std::sqrt(dropped);
    rep.interior[static_cast<std::size_t>(j)] = std::sqrt(dropped) < 1e-9;
  }
  rep.gram = gram_matrix(state, basis);
  return rep;
}

TruncatedRep truncated_matrix(const WeylOperator& op, const GaussianState& state, int degree) {
  return truncated_matrix(op, state, monomial_basis(state.vars, 0, degree));
}

namespace {

// Images of the domain monomials expanded in a larger codomain basis.
MatrixXcd image_matrix(const WeylOperator& op, const GaussianState& state, const MonomialBasis& domain,
                       const MonomialBasis& codomain, std::vector<bool>& interior) {
  const auto rows = static_cast<Eigen::Index>(codomain.size());
  const auto cols = static_cast<Eigen::Index>(domain.size());
  MatrixXcd T = MatrixXcd::Zero(rows, cols);
  interior.assign(domain.size(), true);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const NumPoly image = conjugated_apply(op, state, NumPoly{{domain.monomials[static_cast<std::size_t>(j)], 1.0}});
    double dropped = 0.0;
    for (const auto& [m, c] : image) {
      auto it = codomain.index.find(m);
      if (it == codomain.index.end()) dropped += std::norm(c);
      else T(static_cast<Eigen::Index>(it->second), j) = c;
    }
    interior[static_cast<std::size_t>(j)] = std::sqrt(dropped) < 1e-9;
  }
  return T;
}

}  // namespace

AdjointCrossCheck adjoint_crosscheck(const WeylOperator& op, const GaussianState& state, int degree) {
  return adjoint_crosscheck(op, formal_adjoint(op), state, degree);
}

AdjointCrossCheck adjoint_crosscheck(const WeylOperator& op, const WeylOperator& adj, const GaussianState& state,
                                     int degree) {
  // Conjugation by the Gaussian raises degree by at most the multiplication
  // degree plus the derivative order, so this codomain loses nothing.
  const int raise = static_cast<int>(std::max(op.max_mul_degree() + op.max_der_degree(),
                                              adj.max_mul_degree() + adj.max_der_degree()));
  const MonomialBasis domain = monomial_basis(state.vars, 0, degree);
  const MonomialBasis codomain = monomial_basis(state.vars, 0, degree + raise);
  std::vector<bool> in_x, in_a;
  const MatrixXcd tx = image_matrix(op, state, domain, codomain, in_x);
  const MatrixXcd ta = image_matrix(adj, state, domain, codomain, in_a);
  const MatrixXcd gram = gram_block(state, domain, codomain);
  const auto n = static_cast<Eigen::Index>(domain.size());
  // <p_i, X^dagger p_j> against <X p_i, p_j>.
  const MatrixXcd lhs = gram * ta;
  const MatrixXcd rhs = tx.adjoint() * gram.adjoint();
  const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
  AdjointCrossCheck out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!in_x[static_cast<std::size_t>(i)]) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!in_a[static_cast<std::size_t>(j)]) continue;
      out.max_deviation = std::max(out.max_deviation, std::abs(lhs(i, j) - rhs(i, j)) / scale);
      ++out.pairs_compared;
    }
  }
  return out;
}

WeylOperator casimir(const std::array<WeylOperator, 3>& J) { return J[0] * J[0] + J[1] * J[1] + J[2] * J[2]; }

namespace {

void joint_split(const std::vector<MatrixXcd>& mats, std::size_t t, const MatrixXcd& Q, std::vector<double>& prefix,
                 double tol, std::vector<Multiplet>& out) {
  if (t == mats.size()) {
    out.push_back({prefix, static_cast<std::size_t>(Q.cols()), -1.0});
    return;
  }
  MatrixXcd B = Q.adjoint() * mats[t] * Q;
  B = (B + B.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(B);
  const auto& ev = es.eigenvalues();
  Eigen::Index start = 0;
  while (start < ev.size()) {
    Eigen::Index end = start + 1;
    while (end < ev.size() && ev(end) - ev(end - 1) < tol) ++end;
    double mean = 0.0;
    for (Eigen::Index k = start; k < end; ++k) mean += ev(k);
    mean /= static_cast<double>(end - start);
    const MatrixXcd sub = Q * es.eigenvectors().middleCols(start, end - start);
    prefix.push_back(mean);
    joint_split(mats, t + 1, sub, prefix, tol, out);
    prefix.pop_back();
    start = end;
  }
}

}  // namespace

std::vector<Multiplet> spectrum(const std::vector<WeylOperator>& ops, const GaussianState& state, int sector_degree,
                                const SpectrumOptions& opts) {
  if (ops.empty()) throw DomainError("spectrum needs at least one operator");
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = a + 1; b < ops.size(); ++b)
      if (!commutator(ops[a], ops[b]).is_zero()) {
        throw DomainError("operators " + std::to_string(a) + " and " + std::to_string(b) + " do not commute");
      }
  MonomialBasis basis = monomial_basis(state.vars, sector_degree, sector_degree);
  if (!opts.permutation.empty()) {
    if (opts.permutation.size() != basis.size()) throw DomainError("permutation size does not match the sector");
    MonomialBasis reordered;
    for (std::size_t k : opts.permutation) {
      if (k >= basis.size() || reordered.index.count(basis.monomials[k]) != 0) throw DomainError("invalid permutation");
      reordered.index.emplace(basis.monomials[k], reordered.monomials.size());
      reordered.monomials.push_back(basis.monomials[k]);
    }
    basis = std::move(reordered);
  }
  const MatrixXcd gram = gram_matrix(state, basis);
  Eigen::LLT<MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success) throw NumericalError("sector Gram matrix is not positive definite");
  const MatrixXcd Lc = llt.matrixL();
  const MatrixXcd Linv = Lc.inverse();

  std::vector<MatrixXcd> mats;
  for (const auto& op : ops) {
    const TruncatedRep rep = truncated_matrix(op, state, basis);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (!rep.interior[j]) throw DomainError("operator does not preserve the degree-" + std::to_string(sector_degree) + " sector");
    }
    mats.push_back(Lc.adjoint() * rep.matrix * Linv.adjoint());
  }
  std::vector<Multiplet> out;
  std::vector<double> prefix;
  const auto n = static_cast<Eigen::Index>(basis.size());
  joint_split(mats, 0, MatrixXcd::Identity(n, n), prefix, opts.tolerance, out);
  if (opts.spin_labels) {
    for (auto& m : out) {
      const double j = (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * m.eigenvalues.front()))) / 2.0;
      const double snapped = std::round(2.0 * j) / 2.0;
      m.spin = std::abs(j - snapped) < 1e-6 ? snapped : j;
    }
  }
  return out;
}

}  // namespace prerep
