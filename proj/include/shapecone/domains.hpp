#ifndef SHAPECONE_DOMAINS_HPP
#define SHAPECONE_DOMAINS_HPP

#include "shapecone/polytope.hpp"

#include <map>

namespace shapecone {

struct NotInterior : std::runtime_error {
  NotInterior() : std::runtime_error("point is not interior to the irredundancy domain") {}
};
struct NotAFacet : std::runtime_error {
  NotAFacet() : std::runtime_error("index is not a facet of the chamber") {}
};

struct DomainPair {
  PolyCone co;
  PolyCone clir;
  // For each facet row of clir.ineqs, the circuit supporting it.
  std::map<int, Circuit> facet_circuits;
};

PolyCone compatibility_domain(const VectorConfiguration& cfg, const GaleDiagram& G,
                              const std::vector<Circuit>& circuits);
PolyCone k_core(const Matrix& W, int k);
DomainPair irredundancy_domain(const VectorConfiguration& cfg, const GaleDiagram& G,
                               const std::vector<Circuit>& circuits);

enum class Membership { IntIr, BoundaryIr, IntCoOnly, BoundaryCo, Outside };
Membership interior_membership(const Vector& y, const DomainPair& dp);

// Memoized cones pos(Vbar_I) keyed by index-set bitmask.
struct SubconeCache {
  const GaleDiagram* G = nullptr;
  std::map<uint32_t, PolyCone> memo;
  const PolyCone& subcone(uint32_t mask);
};

AbstractFan chamber_of(const Vector& y, const VectorConfiguration& cfg, SubconeCache& cache,
                       const DomainPair& dp);
bool is_polytopal(const AbstractFan& fan, SubconeCache& cache);

struct WallCrossResult {
  bool flip = false;
  AbstractFan to;           // adjacent chamber's fan when flip
  std::vector<std::vector<int>> gained;  // walls appearing in the new fan
  std::vector<std::vector<int>> lost;    // walls disappearing
  Circuit circuit;          // supporting circuit when on the clir boundary
};

struct ChamberComplex {
  std::vector<TypeCone> chambers;
  std::vector<std::pair<int, int>> flips;  // adjacent chamber index pairs
};

ChamberComplex enumerate_type_cones(const VectorConfiguration& cfg, const GaleDiagram& G,
                                    const std::vector<Circuit>& circuits);
// Exhaustive hyperplane-arrangement slicing (n - d <= 3): chambers of the
// cocircuit arrangement inside int clir; validates the flip BFS.
std::vector<AbstractFan> arrangement_chambers(const VectorConfiguration& cfg,
                                              const GaleDiagram& G,
                                              const std::vector<Circuit>& circuits);

WallCrossResult wall_cross(const VectorConfiguration& cfg, const GaleDiagram& G,
                           const std::vector<Circuit>& circuits, const TypeCone& tc,
                           int facet_index);

}  // namespace shapecone

#endif
