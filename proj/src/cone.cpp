#include "shapecone/cone.hpp"

#include <algorithm>
#include <set>

namespace shapecone {

namespace {

struct Ray {
  Vector x;
  std::set<int> tight;  // indices of processed constraints tight at this ray
};

bool subset_of(const std::set<int>& a, const std::set<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::set<int> intersect(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

// One Motzkin step: intersect the current (lineality, rays) pair with
// { x : a.x >= 0 } (or a.x = 0 when equality).
void dd_step(std::vector<Vector>& lin, std::vector<Ray>& rays, const Vector& a,
             int constraint_id, bool equality, double eps) {
  // Lineality case: a generator of the lineality space leaves the halfspace.
  int best = -1;
  double best_mag = 0;
  for (int i = 0; i < static_cast<int>(lin.size()); ++i) {
    double m = std::abs(a.dot(lin[i]));
    if (m > best_mag) { best_mag = m; best = i; }
  }
  if (best >= 0 && best_mag > eps) {
    Vector l0 = lin[best];
    if (a.dot(l0) < 0) l0 = -l0;
    lin.erase(lin.begin() + best);
    double al0 = a.dot(l0);
    for (auto& l : lin) l -= (a.dot(l) / al0) * l0;
    for (auto& r : rays) {
      r.x -= (a.dot(r.x) / al0) * l0;
      double nrm = r.x.norm();
      if (nrm > 0) r.x /= nrm;
      r.tight.insert(constraint_id);
    }
    if (!equality) {
      Ray nr;
      nr.x = l0.normalized();
      // A former lineality generator is tight on every earlier constraint.
      for (int k = 0; k < constraint_id; ++k) nr.tight.insert(k);
      rays.push_back(std::move(nr));
    }
    return;
  }
  // Ray case: split by sign, combine adjacent opposite pairs.
  std::vector<Ray> plus, zero, minus;
  for (auto& r : rays) {
    double v = a.dot(r.x);
    int s = sign_of(v, eps);
    if (s > 0) plus.push_back(std::move(r));
    else if (s < 0) minus.push_back(std::move(r));
    else {
      r.tight.insert(constraint_id);
      zero.push_back(std::move(r));
    }
  }
  std::vector<Ray> next = zero;
  if (!equality)
    for (auto& r : plus) next.push_back(r);
  std::vector<const Ray*> all;
  for (const auto& r : plus) all.push_back(&r);
  for (const auto& r : zero) all.push_back(&r);
  for (const auto& r : minus) all.push_back(&r);
  auto adjacent = [&](const Ray& p, const Ray& q) {
    std::set<int> common = intersect(p.tight, q.tight);
    for (const Ray* r : all) {
      if (r == &p || r == &q) continue;
      if (subset_of(common, r->tight)) return false;
    }
    return true;
  };
  for (const auto& p : plus)
    for (const auto& q : minus) {
      if (!adjacent(p, q)) continue;
      Ray w;
      w.x = a.dot(p.x) * q.x - a.dot(q.x) * p.x;
      double nrm = w.x.norm();
      if (nrm <= eps) continue;
      w.x /= nrm;
      w.tight = intersect(p.tight, q.tight);
      w.tight.insert(constraint_id);
      next.push_back(std::move(w));
    }
  rays = std::move(next);
}

Matrix stack_rows(const std::vector<Vector>& rows, int m) {
  Matrix M(static_cast<int>(rows.size()), m);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) M.row(i) = rows[i].transpose();
  return M;
}

}  // namespace

void double_description(const Matrix& A, const Matrix& E, Matrix& rays_out,
                        Matrix& lineality_out) {
  const int m = static_cast<int>(A.cols() ? A.cols() : E.cols());
  const double eps = epsilon();
  std::vector<Vector> lin;
  for (int j = 0; j < m; ++j) lin.push_back(Vector::Unit(m, j));
  std::vector<Ray> rays;
  int id = 0;
  for (int i = 0; i < E.rows(); ++i) {
    Vector a = E.row(i).transpose();
    double nrm = a.norm();
    if (nrm <= eps) continue;
    dd_step(lin, rays, a / nrm, id++, true, eps);
  }
  for (int i = 0; i < A.rows(); ++i) {
    Vector a = A.row(i).transpose();
    double nrm = a.norm();
    if (nrm <= eps) continue;
    dd_step(lin, rays, a / nrm, id++, false, eps);
  }
  // Orthogonalize rays against the lineality space and dedupe.
  Matrix L = stack_rows(lin, m);
  std::vector<Vector> cleaned;
  for (auto& r : rays) {
    Vector x = r.x;
    for (int i = 0; i < L.rows(); ++i) {
      Vector li = L.row(i).transpose();
      x -= x.dot(li) / li.squaredNorm() * li;
    }
    if (x.norm() <= eps) continue;
    x.normalize();
    bool dup = false;
    for (const auto& c : cleaned)
      if ((c - x).norm() <= 1e2 * eps) dup = true;
    if (!dup) cleaned.push_back(x);
  }
  rays_out = stack_rows(cleaned, m);
  lineality_out = L;
}

PolyCone PolyCone::from_inequalities(const Matrix& ineqs, const Matrix& eqs) {
  const int m = static_cast<int>(ineqs.cols() ? ineqs.cols() : eqs.cols());
  const double eps = epsilon();
  PolyCone c;
  c.ambient = m;
  double_description(ineqs, eqs, c.rays, c.lineality);
  // Span of the cone and its orthogonal complement (the equation system).
  Matrix span(c.rays.rows() + c.lineality.rows(), m);
  span.topRows(c.rays.rows()) = c.rays;
  span.bottomRows(c.lineality.rows()) = c.lineality;
  Matrix K = span.rows() ? kernel_basis(span) : Matrix::Identity(m, m);
  c.eqs = K.transpose();
  int dim = m - static_cast<int>(c.eqs.rows());
  // Facet filtering: an input inequality is a facet iff its tight subcone
  // has dimension dim - 1.
  std::vector<Vector> facets;
  std::vector<std::vector<int>> facet_keys;
  for (int i = 0; i < ineqs.rows(); ++i) {
    Vector a = ineqs.row(i).transpose();
    double nrm = a.norm();
    if (nrm <= eps) continue;
    a /= nrm;
    std::vector<int> tight_rays;
    bool valid = true;
    for (int j = 0; j < c.rays.rows(); ++j) {
      double v = a.dot(c.rays.row(j).transpose());
      if (v < -eps) { valid = false; break; }
      if (v <= eps) tight_rays.push_back(j);
    }
    if (!valid) continue;  // implied-equality artifacts handled below
    bool on_lineality = true;
    for (int j = 0; j < c.lineality.rows(); ++j)
      if (std::abs(a.dot(c.lineality.row(j).transpose())) > eps) on_lineality = false;
    if (!on_lineality) continue;
    Matrix T(static_cast<int>(tight_rays.size()) + c.lineality.rows(), m);
    for (int j = 0; j < static_cast<int>(tight_rays.size()); ++j)
      T.row(j) = c.rays.row(tight_rays[j]);
    T.bottomRows(c.lineality.rows()) = c.lineality;
    if ((T.rows() ? rank_of(T) : 0) != dim - 1) continue;
    bool dup = false;
    for (size_t k = 0; k < facet_keys.size(); ++k)
      if (facet_keys[k] == tight_rays) dup = true;
    if (dup) continue;
    facets.push_back(a);
    facet_keys.push_back(tight_rays);
  }
  c.ineqs = stack_rows(facets, m);
  return c;
}

PolyCone PolyCone::from_rays(const Matrix& rays) {
  const int m = static_cast<int>(rays.cols());
  // The dual cone's generators are the facet normals; its lineality is the
  // orthogonal complement of the span.
  Matrix dual_rays, dual_lin;
  double_description(rays, Matrix(0, m), dual_rays, dual_lin);
  return from_inequalities(dual_rays, dual_lin);
}

int PolyCone::dim() const { return ambient - static_cast<int>(eqs.rows()); }

bool PolyCone::contains(const Vector& x, double margin) const {
  double scale = epsilon() * std::max(1.0, x.norm());
  for (int i = 0; i < eqs.rows(); ++i)
    if (std::abs(eqs.row(i).dot(x)) > scale) return false;
  for (int i = 0; i < ineqs.rows(); ++i)
    if (ineqs.row(i).dot(x) < margin - scale) return false;
  return true;
}

bool PolyCone::relint_contains(const Vector& x) const {
  double scale = epsilon() * std::max(1.0, x.norm());
  for (int i = 0; i < eqs.rows(); ++i)
    if (std::abs(eqs.row(i).dot(x)) > scale) return false;
  for (int i = 0; i < ineqs.rows(); ++i)
    if (ineqs.row(i).dot(x) <= scale) return false;
  return true;
}

Vector PolyCone::relint_point() const {
  Vector p = Vector::Zero(ambient);
  for (int i = 0; i < rays.rows(); ++i) p += rays.row(i).transpose();
  return p;
}

}  // namespace shapecone
