#ifndef SHAPECONE_FORMS_HPP
#define SHAPECONE_FORMS_HPP

#include "shapecone/domains.hpp"

#include <array>

namespace shapecone {

struct DegenerateSum : std::runtime_error {
  DegenerateSum() : std::runtime_error("volume interpolation system is ill-conditioned") {}
};
struct UnsupportedBall : std::runtime_error {
  UnsupportedBall() : std::runtime_error("the unit ball is only supported for d = 3") {}
};
struct NotSpanning : std::runtime_error {
  NotSpanning() : std::runtime_error("vectors are not positively spanning") {}
};
struct NotSimplicial : std::runtime_error {
  NotSimplicial() : std::runtime_error("fan is not simplicial") {}
};

// A body entering a mixed volume: a polytope P(h) on the ambient
// configuration, or the unit ball (d = 3 surface-area path only).
struct BodySpec {
  enum class Kind { Polytope, UnitBall };
  Kind kind = Kind::Polytope;
  Vector h;

  static BodySpec ball() { return BodySpec{Kind::UnitBall, Vector()}; }
  static BodySpec polytope(const Vector& h) { return BodySpec{Kind::Polytope, h}; }
};

// q(h) = vol(P(h), P(h), K_1, ..., K_{d-2}) as a quadratic form, both in
// quotient coordinates (gram, (n-d) x (n-d)) and in support coordinates
// (gram_full, n x n; annihilates im V).
struct QuadraticForm {
  Matrix gram;
  Matrix gram_full;
  AbstractFan fan;
  std::vector<BodySpec> bodies;
  Signature signature;

  double eval(const Vector& y) const { return y.dot(gram * y); }
  double eval_full(const Vector& h) const { return h.dot(gram_full * h); }
};

// Minkowski sum with exact facet directions (rays of the common normal-fan
// refinement, collected from pairwise vertex normal-cone intersections).
ConcretePolytope minkowski_sum(const ConcretePolytope& A, const ConcretePolytope& B);

// vol(K_1, ..., K_d): polarization of the volume polynomial by
// inclusion-exclusion over Minkowski sums of subfamilies.
double mixed_volume(const std::vector<ConcretePolytope>& bodies);
// Independent route: fit the volume polynomial on the grid {1..d}^d and
// read off the mixed coefficient. Throws DegenerateSum when the fit is bad.
double mixed_volume_grid(const std::vector<ConcretePolytope>& bodies);

// True iff one can choose segments s_i inside K_i with linearly independent
// directions; equivalent to mixed_volume(bodies) > 0.
bool positivity_witness(const std::vector<ConcretePolytope>& bodies);

QuadraticForm q_form(const VectorConfiguration& cfg, const GaleDiagram& G, const TypeCone& tc,
                     const std::vector<BodySpec>& bodies);

enum class AFVerdict { Strict, Equality, Violation };
struct AFCheck {
  AFVerdict verdict = AFVerdict::Strict;
  double gap = 0;  // vol(K,L,.)^2 - vol(K,K,.) vol(L,L,.)
  double vKL = 0, vKK = 0, vLL = 0;
};
AFCheck af_check(const VectorConfiguration& cfg, const Vector& hK, const Vector& hL,
                 const std::vector<BodySpec>& bodies);

// The form of h -> sum_i h0_i area(F_i(h)) on the chamber tc (d = 3);
// requires pi(h0) interior to the irredundancy domain.
QuadraticForm weighted_area_form(const VectorConfiguration& cfg, const GaleDiagram& G,
                                 const DomainPair& dp, const TypeCone& tc, const Vector& h0);

// Face areas of the tetrahedron with outer facet normals v0..v3 and
// altitude h0scale over the face normal to v0.
std::array<double, 4> tetra_face_areas(const Vector& v0, const Vector& v1, const Vector& v2,
                                       const Vector& v3, double h0scale);

// Surface-area form of a complete simplicial fan (d = 3) assembled from the
// dihedral angles of the normals; returns the same normalization as
// q_form(..., {ball}) (i.e. gram_full = area Hessian / 6, q = area / 3).
QuadraticForm area_form_from_angles(const VectorConfiguration& cfg, const GaleDiagram& G,
                                    const AbstractFan& fan);

}  // namespace shapecone

#endif
