#ifndef SHAPECONE_CONE_HPP
#define SHAPECONE_CONE_HPP

#include "shapecone/numeric.hpp"

#include <vector>

namespace shapecone {

// Convex polyhedral cone with both descriptions kept in sync:
//   { x : eqs x = 0, ineqs x >= 0 } = lineality + pos(rows of rays).
// Inequalities are irredundant (facets of the cone within its span) and rays
// are extreme modulo lineality; both sides are produced by the double
// description method.
struct PolyCone {
  int ambient = 0;
  Matrix rays;       // each row an extreme ray, unit length
  Matrix lineality;  // rows a basis of the lineality space
  Matrix ineqs;      // rows a with a.x >= 0, facet-defining
  Matrix eqs;        // rows a with a.x = 0, a basis of span(cone)^perp

  static PolyCone from_inequalities(const Matrix& ineqs, const Matrix& eqs);
  static PolyCone from_rays(const Matrix& rays);

  int dim() const;
  bool pointed() const { return lineality.rows() == 0; }
  bool contains(const Vector& x, double margin = 0.0) const;
  // Strict satisfaction of every facet inequality plus span membership.
  bool relint_contains(const Vector& x) const;
  // A canonical relative-interior point (sum of rays; for a subspace, 0).
  Vector relint_point() const;
  bool is_all_space() const { return eqs.rows() == 0 && ineqs.rows() == 0; }
};

// Extreme rays + lineality of { x : A x >= 0, E x = 0 } (core DD routine).
void double_description(const Matrix& A, const Matrix& E, Matrix& rays_out,
                        Matrix& lineality_out);

}  // namespace shapecone

#endif
