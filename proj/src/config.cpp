#include "shapecone/config.hpp"
#include "shapecone/cone.hpp"

#include <algorithm>
#include <functional>

namespace shapecone {

Caps& caps() {
  static Caps c;
  return c;
}

namespace {

void validate(const Matrix& V) {
  const int n = static_cast<int>(V.rows());
  const int d = static_cast<int>(V.cols());
  if (n > caps().max_n || d > caps().max_d || n - d > caps().max_codim)
    throw TooLarge("configuration exceeds size caps");
  if (n <= d) throw BadConfiguration("need more vectors than the dimension");
  double scale = V.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    if (V.row(i).norm() <= epsilon() * scale)
      throw BadConfiguration("zero row in configuration");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector a = V.row(i).normalized(), b = V.row(j).normalized();
      if ((a - b).norm() <= epsilon())
        throw BadConfiguration("two rows are positive multiples of each other");
    }
  if (rank_of(V) < d) throw RankDeficient();
}

// Independent rows of V by magnitude-pivoted elimination on V^T; the pivot
// order is the greedy section choice.
template <typename Mat>
std::vector<int> greedy_basis_rows(const Mat& V, double eps) {
  Mat A = V.transpose();
  std::vector<int> piv;
  detail::echelon(A, piv, eps);
  return piv;
}

}  // namespace

VectorConfiguration VectorConfiguration::make(const Matrix& V) {
  validate(V);
  VectorConfiguration cfg;
  cfg.V = V;
  cfg.unit_normalized = true;
  for (int i = 0; i < V.rows(); ++i)
    if (std::abs(V.row(i).norm() - 1.0) > epsilon()) cfg.unit_normalized = false;
  return cfg;
}

VectorConfiguration VectorConfiguration::make(const RatMatrix& Vq) {
  Matrix V = to_double(Vq);
  validate(V);
  VectorConfiguration cfg;
  cfg.V = V;
  cfg.exactV = Vq;
  cfg.unit_normalized = true;
  for (int i = 0; i < V.rows(); ++i)
    if (std::abs(V.row(i).norm() - 1.0) > epsilon()) cfg.unit_normalized = false;
  return cfg;
}

Vector GaleDiagram::lift(const Vector& y) const {
  const int nn = n(), mm = m();
  Matrix M(mm, mm);
  std::vector<int> free_idx;
  for (int i = 0; i < nn; ++i)
    if (std::find(section.begin(), section.end(), i) == section.end())
      free_idx.push_back(i);
  for (int j = 0; j < mm; ++j) M.col(j) = Vbar.row(free_idx[j]).transpose();
  Vector z = M.partialPivLu().solve(y);
  Vector h = Vector::Zero(nn);
  for (int j = 0; j < mm; ++j) h(free_idx[j]) = z(j);
  return h;
}

GaleDiagram gale_dual(const VectorConfiguration& cfg) {
  const int n = cfg.n(), d = cfg.d();
  if (rank_of(cfg.V) < d) throw RankDeficient();
  GaleDiagram G;
  if (cfg.exact()) {
    RatMatrix K = kernel_basis(RatMatrix(cfg.exactV->transpose()));
    std::vector<int> B = greedy_basis_rows(*cfg.exactV, 0.0);
    std::sort(B.begin(), B.end());
    std::vector<int> S;
    for (int i = 0; i < n; ++i)
      if (std::find(B.begin(), B.end(), i) == B.end()) S.push_back(i);
    RatMatrix KS(n - d, n - d);
    for (int j = 0; j < n - d; ++j) KS.row(j) = K.row(S[j]);
    RatMatrix Vbar = K * KS.inverse();
    G.exactVbar = Vbar;
    G.Vbar = to_double(Vbar);
    G.section = B;
  } else {
    Matrix K = kernel_basis(Matrix(cfg.V.transpose()));
    std::vector<int> B = greedy_basis_rows(cfg.V, epsilon());
    std::sort(B.begin(), B.end());
    std::vector<int> S;
    for (int i = 0; i < n; ++i)
      if (std::find(B.begin(), B.end(), i) == B.end()) S.push_back(i);
    Matrix KS(n - d, n - d);
    for (int j = 0; j < n - d; ++j) KS.row(j) = K.row(S[j]);
    G.Vbar = K * KS.partialPivLu().inverse();
    G.section = B;
  }
  G.projection = G.Vbar.transpose();
  return G;
}

bool gale_involution_check(const VectorConfiguration& cfg) {
  GaleDiagram G = gale_dual(cfg);
  VectorConfiguration dual;  // bypass validation: duals may repeat rows
  dual.V = G.Vbar;
  dual.exactV = G.exactVbar;
  GaleDiagram GG = gale_dual(dual);
  Matrix stacked(cfg.n(), cfg.d() + GG.m());
  stacked.leftCols(cfg.d()) = cfg.V;
  stacked.rightCols(GG.m()) = GG.Vbar;
  return rank_of(stacked) == cfg.d();
}

namespace {

template <typename Mat>
std::optional<typename Mat::PlainObject> circuit_kernel_vector(const Mat& VC, double eps) {
  using Plain = typename Mat::PlainObject;
  Plain K = kernel_basis(Plain(VC.transpose()), eps);
  if (K.cols() != 1) return std::nullopt;
  // Minimality: a zero coefficient means a smaller dependent subset exists.
  double scale = 0;
  for (int i = 0; i < K.rows(); ++i)
    scale = std::max(scale, static_cast<double>(abs(K(i, 0))));
  for (int i = 0; i < K.rows(); ++i)
    if (static_cast<double>(abs(K(i, 0))) <= eps * scale) return std::nullopt;
  return Plain(K.col(0));
}

void classify_and_normalize(Circuit& c, int n) {
  int pos = 0, neg = 0;
  for (int i : c.support) {
    int s = sign_of(c.lambda(i));
    if (s > 0) ++pos;
    else ++neg;
  }
  if (neg > pos || (neg == pos && sign_of(c.lambda(c.support.front())) < 0)) {
    c.lambda = -c.lambda;
    std::swap(pos, neg);
  }
  if (neg == 0) {
    c.kind = CircuitKind::Positive;
    c.lambda /= c.lambda.sum();
  } else if (neg == 1) {
    c.kind = CircuitKind::Hyperbolic;
    for (int i : c.support)
      if (sign_of(c.lambda(i)) < 0) c.p = i;
    // Convention: lambda_p = 1, the rest negative.
    c.lambda /= c.lambda(c.p);
  } else {
    c.kind = CircuitKind::Mixed;
    double mx = 0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(c.lambda(i)));
    c.lambda /= mx;
    if (sign_of(c.lambda(c.support.front())) < 0) c.lambda = -c.lambda;
  }
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int pos) {
    if (pos == k) { f(idx); return; }
    for (int i = start; i <= n - (k - pos); ++i) {
      idx[pos] = i;
      rec(i + 1, pos + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<Circuit> enumerate_circuits(const VectorConfiguration& cfg, const GaleDiagram& G) {
  const int n = cfg.n(), d = cfg.d();
  if (n > caps().max_circuit_n) throw TooLarge("circuit enumeration cap exceeded");
  std::vector<Circuit> out;
  for (int k = 2; k <= d + 1; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& C) {
      Circuit c;
      c.support = C;
      if (cfg.exact()) {
        RatMatrix VC(k, d);
        for (int i = 0; i < k; ++i) VC.row(i) = cfg.exactV->row(C[i]);
        auto lam = circuit_kernel_vector(VC, 0.0);
        if (!lam) return;
        c.lambda = Vector::Zero(n);
        for (int i = 0; i < k; ++i) c.lambda(C[i]) = static_cast<double>((*lam)(i));
      } else {
        Matrix VC(k, d);
        for (int i = 0; i < k; ++i) VC.row(i) = cfg.V.row(C[i]);
        auto lam = circuit_kernel_vector(VC, epsilon());
        if (!lam) return;
        c.lambda = Vector::Zero(n);
        for (int i = 0; i < k; ++i) c.lambda(C[i]) = (*lam)(i);
      }
      classify_and_normalize(c, n);
      auto mu = solve_linear(G.Vbar, c.lambda);
      if (!mu) throw std::runtime_error("circuit dependence not in the image of the dual");
      c.mu = *mu;
      out.push_back(std::move(c));
    });
  }
  std::sort(out.begin(), out.end(),
            [](const Circuit& a, const Circuit& b) { return a.support < b.support; });
  return out;
}

bool is_positively_spanning(const VectorConfiguration& cfg) {
  // pos(V) = R^d exactly when the dual cone { y : V y >= 0 } is trivial.
  Matrix rays, lin;
  double_description(cfg.V, Matrix(0, cfg.d()), rays, lin);
  return rays.rows() == 0 && lin.rows() == 0;
}

std::vector<AffineGalePoint> affine_gale(const GaleDiagram& G) {
  const int n = G.n(), m = G.m();
  double scale = G.Vbar.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    if (G.Vbar.row(i).norm() <= epsilon() * scale) throw ZeroDualVector();
  // Hyperplane normal: the normalized-row sum if usable, else a coordinate
  // axis, else a fixed deterministic mix; must be non-orthogonal to every
  // dual vector.
  std::vector<Vector> candidates;
  Vector s = Vector::Zero(m);
  for (int i = 0; i < n; ++i) s += G.Vbar.row(i).normalized().transpose();
  if (s.norm() > epsilon()) candidates.push_back(s.normalized());
  for (int j = 0; j < m; ++j) candidates.push_back(Vector::Unit(m, j));
  Vector mix(m);
  for (int j = 0; j < m; ++j) mix(j) = 1.0 / (2 + j) + 0.01 * j;
  candidates.push_back(mix.normalized());
  Vector w;
  bool found = false;
  for (const auto& cand : candidates) {
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (std::abs(G.Vbar.row(i).dot(cand)) <= epsilon() * G.Vbar.row(i).norm()) ok = false;
    if (ok) { w = cand; found = true; break; }
  }
  if (!found) throw BadConfiguration("no affine hyperplane avoids all dual vectors");
  std::vector<AffineGalePoint> pts;
  for (int i = 0; i < n; ++i) {
    double alpha = G.Vbar.row(i).dot(w);
    AffineGalePoint p;
    p.point = G.Vbar.row(i).transpose() / alpha;
    p.black = alpha > 0;
    p.source = i;
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace shapecone
