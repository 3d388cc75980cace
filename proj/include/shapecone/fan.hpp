#ifndef SHAPECONE_FAN_HPP
#define SHAPECONE_FAN_HPP

#include "shapecone/cone.hpp"
#include "shapecone/config.hpp"

#include <string>
#include <vector>

namespace shapecone {

// A fan over the configuration V: every cone is pos(V_sigma) for an index
// set sigma, stored combinatorially. Maximal cones are the d-dimensional
// ones; the face closure is kept explicitly.
struct AbstractFan {
  int n = 0;
  int d = 0;
  std::vector<std::vector<int>> maximal;   // sorted index sets, rank d
  std::vector<std::vector<int>> cones;     // full face closure, sorted sets
  std::vector<int> cone_dims;              // rank(V_sigma) per entry of cones
  bool complete = false;
  bool pointed = true;
  bool simplicial = false;

  std::string hash() const;  // canonical key: the sorted maximal cones
  bool operator==(const AbstractFan& o) const { return hash() == o.hash(); }
};

struct Wall {
  std::vector<int> sigma;  // the (d-1)-dimensional cone
  std::vector<int> rho1;   // the two flanking maximal cones
  std::vector<int> rho2;
};

AbstractFan fan_from_maximal(const VectorConfiguration& cfg,
                             std::vector<std::vector<int>> maximal);
std::vector<Wall> fan_walls(const VectorConfiguration& cfg, const AbstractFan& fan);

// A full-dimensional chamber of the secondary fan in quotient coordinates
// R^{n-d}: its fan, the edge-length inequalities (rows w with w.y >= 0),
// refinement equations for non-simplicial fans, and the chamber cone.
struct TypeCone {
  AbstractFan fan;
  Matrix inequalities;  // in quotient coordinates
  Matrix equations;
  PolyCone cone;
  Matrix rays;  // convenience copy of cone.rays
};

}  // namespace shapecone

#endif
