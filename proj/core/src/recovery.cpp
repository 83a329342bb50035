// Copyright 2026 The convcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "convcs/recovery.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "convcs/rng.hpp"

namespace convcs {
namespace {

using Eigen::Index;

class ColumnCache {
 public:
  explicit ColumnCache(const LinearOperator& op) : op_(op) {}
  const CVec& get(std::size_t j) {
    auto it = cols_.find(j);
    if (it == cols_.end()) it = cols_.emplace(j, op_.column(j)).first;
    return it->second;
  }

 private:
  const LinearOperator& op_;
  std::map<std::size_t, CVec> cols_;
};

CVec ls_cached(ColumnCache& cache, CSpan y, const std::vector<std::size_t>& s) {
  const auto m = static_cast<Index>(y.size());
  const auto k = static_cast<Index>(s.size());
  Matrix a(m, k);
  for (Index c = 0; c < k; ++c) {
    const CVec& col = cache.get(s[static_cast<std::size_t>(c)]);
    for (Index r = 0; r < m; ++r) a(r, c) = col[static_cast<std::size_t>(r)];
  }
  const Eigen::Map<const Eigen::VectorXcd> yv(y.data(), m);
  Matrix g = a.adjoint() * a;
  g.diagonal().array() += 1e-12;
  const Eigen::VectorXcd x = g.ldlt().solve(a.adjoint() * yv);
  return CVec(x.data(), x.data() + x.size());
}

CVec residual(ColumnCache& cache, CSpan y, const std::vector<std::size_t>& s, CSpan coef) {
  CVec r(y.begin(), y.end());
  for (std::size_t c = 0; c < s.size(); ++c) {
    const CVec& col = cache.get(s[c]);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= col[i] * coef[c];
  }
  return r;
}

// Indices of the `count` largest |v_j| over j not excluded; ties go to the
// lower index.
std::vector<std::size_t> top_k(CSpan v, std::size_t count, const std::vector<bool>& excluded) {
  std::vector<std::size_t> idx;
  idx.reserve(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    if (excluded.empty() || !excluded[j]) idx.push_back(j);
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double ma = std::abs(v[a]), mb = std::abs(v[b]);
                      return ma > mb || (ma == mb && a < b);
                    });
  idx.resize(count);
  return idx;
}

RecoveryResult assemble(std::size_t n, std::vector<std::size_t> support, CSpan coef, CVec r,
                        int iterations, bool converged) {
  RecoveryResult res;
  res.f_hat.assign(n, cplx{0.0, 0.0});
  for (std::size_t c = 0; c < support.size(); ++c) res.f_hat[support[c]] = coef[c];
  std::sort(support.begin(), support.end());
  res.support = std::move(support);
  res.iterations = iterations;
  res.residual_norm = norm2(r);
  res.converged = converged;
  return res;
}

void check_greedy(const LinearOperator& op, CSpan y, std::size_t k) {
  if (y.size() != op.rows()) throw std::invalid_argument("recovery: measurement length mismatch");
  if (k == 0) throw std::invalid_argument("recovery: K must be at least 1");
  if (k > op.rows()) throw std::invalid_argument("recovery: K exceeds M");
}

cplx soft(cplx z, double t) {
  const double m = std::abs(z);
  return m <= t ? cplx{0.0, 0.0} : z * ((m - t) / m);
}

double l1(CSpan f) {
  double s = 0.0;
  for (const auto& v : f) s += std::abs(v);
  return s;
}

CVec sub(CSpan a, CSpan b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::OMP: return "omp";
    case SolverKind::SubspacePursuit: return "sp";
    case SolverKind::FISTA: return "fista";
  }
  return "?";
}

SolverKind solver_kind_from_string(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "omp") return SolverKind::OMP;
  if (key == "sp" || key == "subspacepursuit") return SolverKind::SubspacePursuit;
  if (key == "fista" || key == "lasso") return SolverKind::FISTA;
  throw std::invalid_argument("unknown solver: " + std::string(name));
}

CVec least_squares_on_support(const LinearOperator& op, CSpan y,
                              const std::vector<std::size_t>& support) {
  ColumnCache cache(op);
  return ls_cached(cache, y, support);
}

RecoveryResult omp(const LinearOperator& op, CSpan y, std::size_t k, const OmpOptions& opt) {
  check_greedy(op, y, k);
  const std::size_t n = op.cols();
  const double stop = opt.residual_tol * norm2(y);
  ColumnCache cache(op);
  std::vector<std::size_t> s;
  std::vector<bool> in(n, false);
  CVec coef;
  CVec r(y.begin(), y.end());
  int it = 0;
  while (s.size() < k && norm2(r) > stop) {
    const CVec c = op.adjoint(r);
    const auto pick = top_k(c, 1, in);
    if (pick.empty()) break;
    s.push_back(pick[0]);
    in[pick[0]] = true;
    coef = ls_cached(cache, y, s);
    r = residual(cache, y, s, coef);
    ++it;
  }
  const bool converged = norm2(r) <= stop || s.size() == k;
  return assemble(n, s, coef, std::move(r), it, converged);
}

RecoveryResult subspace_pursuit(const LinearOperator& op, CSpan y, std::size_t k,
                                const SubspacePursuitOptions& opt) {
  check_greedy(op, y, k);
  if (2 * k > op.rows()) throw std::invalid_argument("subspace_pursuit: 2K exceeds M");
  const std::size_t n = op.cols();
  ColumnCache cache(op);

  std::vector<std::size_t> t = top_k(op.adjoint(y), k, {});
  CVec coef = ls_cached(cache, y, t);
  CVec r = residual(cache, y, t, coef);
  double rn = norm2(r);
  int it = 1;
  bool converged = false;
  const double floor = 1e-14 * norm2(y);

  while (it < opt.max_iters) {
    if (rn <= floor) {
      converged = true;
      break;
    }
    std::vector<bool> in(n, false);
    for (auto j : t) in[j] = true;
    std::vector<std::size_t> cand = t;
    for (auto j : top_k(op.adjoint(r), k, in)) cand.push_back(j);
    std::sort(cand.begin(), cand.end());

    const CVec wide = ls_cached(cache, y, cand);
    const auto keep = top_k(wide, k, {});
    std::vector<std::size_t> t_new;
    for (auto p : keep) t_new.push_back(cand[p]);
    std::sort(t_new.begin(), t_new.end());

    CVec coef_new = ls_cached(cache, y, t_new);
    CVec r_new = residual(cache, y, t_new, coef_new);
    const double rn_new = norm2(r_new);
    ++it;
    if (rn_new > rn) {
      converged = true;  // keep the previous estimate
      break;
    }
    const bool small_gain = rn - rn_new <= opt.rel_tol * rn;
    t = std::move(t_new);
    coef = std::move(coef_new);
    r = std::move(r_new);
    rn = rn_new;
    if (small_gain) {
      converged = true;
      break;
    }
  }
  return assemble(n, t, coef, std::move(r), it, converged);
}

double operator_norm_sq(const LinearOperator& op, int iters, double tol) {
  Rng rng(0x6c61737375ULL);
  CVec v(op.cols());
  for (auto& x : v) x = rng.complex_normal();
  double nv = norm2(v);
  for (auto& x : v) x /= nv;
  double lambda = 0.0;
  for (int i = 0; i < iters; ++i) {
    CVec w = op.adjoint(op.forward(v));
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    for (auto& x : w) x /= nw;
    v = std::move(w);
    const bool done = std::abs(nw - lambda) <= tol * nw;
    lambda = nw;
    if (done) break;
  }
  return lambda;
}

double lasso_objective(const LinearOperator& op, CSpan y, CSpan f, double lambda) {
  const CVec r = sub(y, op.forward(f));
  const double rn = norm2(r);
  return 0.5 * rn * rn + lambda * l1(f);
}

RecoveryResult fista_lasso(const LinearOperator& op, CSpan y, double lambda, const FistaOptions& opt) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fista_lasso: lambda must be positive");
  if (y.size() != op.rows()) throw std::invalid_argument("fista_lasso: measurement length mismatch");
  const std::size_t n = op.cols();
  double lip = operator_norm_sq(op, opt.power_iters, opt.power_tol);
  if (!(lip > 0.0)) lip = 1.0;

  CVec x_prev(n, cplx{0.0, 0.0});
  CVec z = x_prev;
  double t = 1.0;
  double f_prev = lasso_objective(op, y, x_prev, lambda);
  int it = 0;
  bool converged = false;
  bool from_restart = false;

  while (it < opt.max_iters) {
    ++it;
    const CVec rz = sub(op.forward(z), y);  // Theta z - y
    const double hz = 0.5 * std::pow(norm2(rz), 2);
    const CVec g = op.adjoint(rz);

    CVec x(n);
    double hx = 0.0;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) x[i] = soft(z[i] - g[i] / lip, lambda / lip);
      const CVec d = sub(x, z);
      double lin = 0.0;
      for (std::size_t i = 0; i < n; ++i) lin += (std::conj(g[i]) * d[i]).real();
      const double dn = norm2(d);
      hx = 0.5 * std::pow(norm2(sub(op.forward(x), y)), 2);
      if (hx <= hz + lin + 0.5 * lip * dn * dn + 1e-12 * std::max(1.0, hz)) break;
      lip *= 2.0;
    }
    const double fx = hx + lambda * l1(x);

    if (fx > f_prev) {
      if (from_restart) {
        // A plain gradient step from the accepted iterate no longer descends.
        converged = true;
        break;
      }
      // Restart from the last accepted iterate without momentum.
      t = 1.0;
      z = x_prev;
      from_restart = true;
      continue;
    }
    from_restart = false;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] + beta * (x[i] - x_prev[i]);
    const bool done = std::abs(f_prev - fx) <= opt.rel_tol * std::max(f_prev, 1e-300);
    x_prev = std::move(x);
    t = t_next;
    f_prev = fx;
    if (done) {
      converged = true;
      break;
    }
  }

  RecoveryResult res;
  double peak = 0.0;
  for (const auto& v : x_prev) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    if (peak > 0.0 && std::abs(x_prev[i]) > opt.support_threshold * peak) res.support.push_back(i);
  res.residual_norm = norm2(sub(y, op.forward(x_prev)));
  res.f_hat = std::move(x_prev);
  res.iterations = it;
  res.converged = converged;
  return res;
}

RecoveryResult solve(const RecoveryProblem& p, SolverKind solver) {
  if (p.op == nullptr) throw std::invalid_argument("solve: no operator");
  switch (solver) {
    case SolverKind::OMP: return omp(*p.op, p.y, p.k);
    case SolverKind::SubspacePursuit: return subspace_pursuit(*p.op, p.y, p.k);
    case SolverKind::FISTA: return fista_lasso(*p.op, p.y, p.lambda);
  }
  throw std::invalid_argument("solve: unknown solver");
}

}  // namespace convcs
