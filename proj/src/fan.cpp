#include "shapecone/fan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace shapecone {

namespace {

int set_rank(const VectorConfiguration& cfg, const std::vector<int>& sigma) {
  Matrix M(static_cast<int>(sigma.size()), cfg.d());
  for (size_t i = 0; i < sigma.size(); ++i) M.row(static_cast<int>(i)) = cfg.V.row(sigma[i]);
  return rank_of(M);
}

}  // namespace

std::string AbstractFan::hash() const {
  auto sorted = maximal;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream os;
  for (const auto& c : sorted) {
    for (int i : c) os << i << ',';
    os << ';';
  }
  return os.str();
}

AbstractFan fan_from_maximal(const VectorConfiguration& cfg,
                             std::vector<std::vector<int>> maximal) {
  AbstractFan fan;
  fan.n = cfg.n();
  fan.d = cfg.d();
  for (auto& c : maximal) std::sort(c.begin(), c.end());
  std::sort(maximal.begin(), maximal.end());
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
  fan.maximal = maximal;
  // Face closure: intersections of maximal cones, iterated to a fixpoint.
  std::set<std::vector<int>> faces(maximal.begin(), maximal.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> current(faces.begin(), faces.end());
    for (size_t i = 0; i < current.size(); ++i)
      for (size_t j = i + 1; j < current.size(); ++j) {
        std::vector<int> isect;
        std::set_intersection(current[i].begin(), current[i].end(), current[j].begin(),
                              current[j].end(), std::back_inserter(isect));
        if (!isect.empty() && faces.insert(isect).second) grew = true;
      }
  }
  fan.cones.assign(faces.begin(), faces.end());
  fan.cone_dims.clear();
  for (const auto& c : fan.cones) fan.cone_dims.push_back(set_rank(cfg, c));
  fan.simplicial = true;
  for (const auto& c : fan.maximal)
    if (static_cast<int>(c.size()) != fan.d) fan.simplicial = false;
  // Completeness: every (d-1)-dimensional cone flanked by exactly two
  // maximal cones.
  fan.complete = !fan.maximal.empty();
  for (size_t i = 0; i < fan.cones.size(); ++i) {
    if (fan.cone_dims[i] != fan.d - 1) continue;
    int count = 0;
    for (const auto& rho : fan.maximal)
      if (std::includes(rho.begin(), rho.end(), fan.cones[i].begin(), fan.cones[i].end()))
        ++count;
    if (count != 2) fan.complete = false;
  }
  for (const auto& rho : fan.maximal)
    if (set_rank(cfg, rho) != fan.d) fan.complete = false;
  return fan;
}

std::vector<Wall> fan_walls(const VectorConfiguration& cfg, const AbstractFan& fan) {
  std::vector<Wall> walls;
  for (size_t i = 0; i < fan.cones.size(); ++i) {
    if (fan.cone_dims[i] != fan.d - 1) continue;
    std::vector<const std::vector<int>*> flanking;
    for (const auto& rho : fan.maximal)
      if (std::includes(rho.begin(), rho.end(), fan.cones[i].begin(), fan.cones[i].end()))
        flanking.push_back(&rho);
    if (flanking.size() != 2) continue;
    Wall w;
    w.sigma = fan.cones[i];
    w.rho1 = *flanking[0];
    w.rho2 = *flanking[1];
    walls.push_back(std::move(w));
  }
  return walls;
}

}  // namespace shapecone
