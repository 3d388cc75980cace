#include "shapecone/domains.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace shapecone {

namespace {

Matrix stack(const std::vector<Vector>& rows, int m) {
  Matrix M(static_cast<int>(rows.size()), m);
  for (size_t i = 0; i < rows.size(); ++i) M.row(static_cast<int>(i)) = rows[i].transpose();
  return M;
}

bool same_cone(const PolyCone& A, const PolyCone& B) {
  if (A.dim() != B.dim()) return false;
  for (int i = 0; i < A.rays.rows(); ++i)
    if (!B.contains(A.rays.row(i).transpose())) return false;
  for (int i = 0; i < B.rays.rows(); ++i)
    if (!A.contains(B.rays.row(i).transpose())) return false;
  return true;
}

}  // namespace

PolyCone compatibility_domain(const VectorConfiguration& cfg, const GaleDiagram& G,
                              const std::vector<Circuit>& circuits) {
  PolyCone vrep = PolyCone::from_rays(G.Vbar);
  std::vector<Vector> mus;
  for (const auto& c : circuits)
    if (c.kind == CircuitKind::Positive) mus.push_back(c.mu);
  PolyCone hrep = PolyCone::from_inequalities(stack(mus, G.m()), Matrix(0, G.m()));
  if (!same_cone(vrep, hrep))
    throw std::runtime_error("compatibility domain V/H cross-check failed");
  return vrep;
}

PolyCone k_core(const Matrix& W, int k) {
  const int n = static_cast<int>(W.rows()), m = static_cast<int>(W.cols());
  if (k <= 1) return PolyCone::from_rays(W);
  // Intersect pos(W minus D) over all (k-1)-element deletions D.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vector> ineqs, eqs;
  std::vector<int> comb(k - 1);
  std::function<void(int, int)> rec = [&](int start, int pos) {
    if (pos == k - 1) {
      Matrix sub(n - (k - 1), m);
      int r = 0;
      for (int i = 0; i < n; ++i)
        if (std::find(comb.begin(), comb.end(), i) == comb.end()) sub.row(r++) = W.row(i);
      PolyCone c = PolyCone::from_rays(sub);
      for (int j = 0; j < c.ineqs.rows(); ++j) ineqs.push_back(c.ineqs.row(j).transpose());
      for (int j = 0; j < c.eqs.rows(); ++j) eqs.push_back(c.eqs.row(j).transpose());
      return;
    }
    for (int i = start; i < n; ++i) {
      comb[pos] = i;
      rec(i + 1, pos + 1);
    }
  };
  rec(0, 0);
  return PolyCone::from_inequalities(stack(ineqs, m), stack(eqs, m));
}

DomainPair irredundancy_domain(const VectorConfiguration& cfg, const GaleDiagram& G,
                               const std::vector<Circuit>& circuits) {
  DomainPair dp;
  dp.co = compatibility_domain(cfg, G, circuits);
  std::vector<Vector> rows;
  std::vector<const Circuit*> row_circuits;
  for (const auto& c : circuits) {
    if (c.kind == CircuitKind::Positive) {
      rows.push_back(c.mu);
      row_circuits.push_back(&c);
    } else if (c.kind == CircuitKind::Hyperbolic) {
      rows.push_back(-c.mu);
      row_circuits.push_back(&c);
    }
  }
  dp.clir = PolyCone::from_inequalities(stack(rows, G.m()), Matrix(0, G.m()));
  for (int f = 0; f < dp.clir.ineqs.rows(); ++f) {
    Vector a = dp.clir.ineqs.row(f).transpose();
    for (size_t r = 0; r < rows.size(); ++r) {
      Vector b = rows[r].normalized();
      if ((a - b).norm() <= 1e2 * epsilon()) {
        dp.facet_circuits[f] = *row_circuits[r];
        break;
      }
    }
  }
  PolyCone core2 = k_core(G.Vbar, 2);
  if (!same_cone(dp.clir, core2))
    throw std::runtime_error("irredundancy domain disagrees with the 2-core");
  return dp;
}

Membership interior_membership(const Vector& y, const DomainPair& dp) {
  if (!dp.co.contains(y)) return Membership::Outside;
  if (dp.clir.contains(y)) {
    if (dp.clir.dim() == dp.clir.ambient && dp.clir.relint_contains(y))
      return Membership::IntIr;
    return Membership::BoundaryIr;
  }
  if (dp.co.dim() == dp.co.ambient && dp.co.relint_contains(y)) return Membership::IntCoOnly;
  return Membership::BoundaryCo;
}

const PolyCone& SubconeCache::subcone(uint32_t mask) {
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  const int n = G->n();
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) idx.push_back(i);
  Matrix W(static_cast<int>(idx.size()), G->m());
  for (size_t i = 0; i < idx.size(); ++i) W.row(static_cast<int>(i)) = G->Vbar.row(idx[i]);
  return memo.emplace(mask, PolyCone::from_rays(W)).first->second;
}

AbstractFan chamber_of(const Vector& y, const VectorConfiguration& cfg, SubconeCache& cache,
                       const DomainPair& dp) {
  const int n = cfg.n();
  if (n > 14) throw TooLarge("chamber_of subset scan capped at n = 14");
  if (interior_membership(y, dp) != Membership::IntIr) throw NotInterior();
  const uint32_t full = (1u << n) - 1;
  std::vector<std::vector<int>> members;
  for (uint32_t sigma = 1; sigma < full; ++sigma) {
    uint32_t comp = full & ~sigma;
    if (!cache.subcone(comp).relint_contains(y)) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (sigma & (1u << i)) s.push_back(i);
    members.push_back(std::move(s));
  }
  std::vector<std::vector<int>> maximal;
  for (const auto& s : members) {
    bool contained = false;
    for (const auto& t : members)
      if (t != s && std::includes(t.begin(), t.end(), s.begin(), s.end())) contained = true;
    if (!contained) maximal.push_back(s);
  }
  return fan_from_maximal(cfg, maximal);
}

bool is_polytopal(const AbstractFan& fan, SubconeCache& cache) {
  const int n = fan.n;
  const uint32_t full = (1u << n) - 1;
  std::vector<Vector> ineqs, eqs;
  std::vector<uint32_t> comps;
  for (const auto& rho : fan.maximal) {
    uint32_t mask = 0;
    for (int i : rho) mask |= 1u << i;
    uint32_t comp = full & ~mask;
    comps.push_back(comp);
    const PolyCone& c = cache.subcone(comp);
    for (int j = 0; j < c.ineqs.rows(); ++j) ineqs.push_back(c.ineqs.row(j).transpose());
    for (int j = 0; j < c.eqs.rows(); ++j) eqs.push_back(c.eqs.row(j).transpose());
  }
  const int m = cache.G->m();
  PolyCone K = PolyCone::from_inequalities(stack(ineqs, m), stack(eqs, m));
  Vector p = K.relint_point();
  if (p.norm() <= epsilon()) return false;
  for (uint32_t comp : comps)
    if (!cache.subcone(comp).relint_contains(p)) return false;
  return true;
}

namespace {

// A point just past the relative interior of a chamber facet, used to find
// the adjacent chamber.
std::optional<AbstractFan> cross_facet(const VectorConfiguration& cfg, const TypeCone& tc,
                                       int facet, SubconeCache& cache, const DomainPair& dp) {
  Vector nrm = tc.cone.ineqs.row(facet).transpose();
  const double eps = epsilon();
  std::vector<int> tight;
  for (int r = 0; r < tc.cone.rays.rows(); ++r)
    if (std::abs(nrm.dot(tc.cone.rays.row(r).transpose())) <= eps * 10) tight.push_back(r);
  if (tight.empty()) return std::nullopt;
  for (int variant = 0; variant < 4; ++variant) {
    Vector z = Vector::Zero(tc.cone.ambient);
    for (size_t i = 0; i < tight.size(); ++i)
      z += (1.0 + 0.1 * variant * static_cast<double>(i + 1)) *
           tc.cone.rays.row(tight[i]).transpose();
    z.normalize();
    for (double delta : {1e-6, 1e-7, 1e-5, 1e-4}) {
      Vector y = z - delta * nrm;
      if (interior_membership(y, dp) != Membership::IntIr) continue;
      try {
        AbstractFan f = chamber_of(y, cfg, cache, dp);
        if (f.hash() != tc.fan.hash()) return f;
      } catch (const NotInterior&) {
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ChamberComplex enumerate_type_cones(const VectorConfiguration& cfg, const GaleDiagram& G,
                                    const std::vector<Circuit>& circuits) {
  DomainPair dp = irredundancy_domain(cfg, G, circuits);
  SubconeCache cache;
  cache.G = &G;
  const int m = G.m();
  // Seed at pi(1); perturb deterministically if that lands on a wall.
  Vector y0 = G.project(Vector::Ones(cfg.n()));
  std::optional<TypeCone> seed;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int attempt = 0; attempt < 200 && !seed; ++attempt) {
    Vector y = y0;
    if (attempt > 0) {
      Vector jitter(m);
      for (int j = 0; j < m; ++j) jitter(j) = U(rng);
      y += 1e-3 * std::pow(1.3, attempt % 20) * y0.norm() * jitter;
    }
    if (interior_membership(y, dp) != Membership::IntIr) continue;
    AbstractFan f = chamber_of(y, cfg, cache, dp);
    TypeCone tc = type_cone_inequalities(cfg, G, f);
    if (tc.cone.dim() == m) seed = std::move(tc);
  }
  if (!seed) throw std::runtime_error("no full-dimensional chamber found from the seed");
  ChamberComplex cc;
  std::map<std::string, int> index_of;
  std::queue<int> todo;
  cc.chambers.push_back(*seed);
  index_of[seed->fan.hash()] = 0;
  todo.push(0);
  std::set<std::pair<int, int>> flips;
  while (!todo.empty()) {
    int cur = todo.front();
    todo.pop();
    if (cc.chambers.size() > 1000) throw TooLarge("chamber enumeration exceeded 1000 cells");
    TypeCone tc = cc.chambers[cur];  // copy: vector may reallocate below
    for (int f = 0; f < tc.cone.ineqs.rows(); ++f) {
      auto adj = cross_facet(cfg, tc, f, cache, dp);
      if (!adj) continue;
      auto it = index_of.find(adj->hash());
      int j;
      if (it == index_of.end()) {
        TypeCone ntc = type_cone_inequalities(cfg, G, *adj);
        if (ntc.cone.dim() != m) continue;
        j = static_cast<int>(cc.chambers.size());
        cc.chambers.push_back(std::move(ntc));
        index_of[adj->hash()] = j;
        todo.push(j);
      } else {
        j = it->second;
      }
      flips.insert({std::min(cur, j), std::max(cur, j)});
    }
  }
  cc.flips.assign(flips.begin(), flips.end());
  return cc;
}

std::vector<AbstractFan> arrangement_chambers(const VectorConfiguration& cfg,
                                              const GaleDiagram& G,
                                              const std::vector<Circuit>& circuits) {
  const int m = G.m();
  if (m > 3) throw TooLarge("arrangement slicing limited to n - d <= 3");
  DomainPair dp = irredundancy_domain(cfg, G, circuits);
  SubconeCache cache;
  cache.G = &G;
  // Dedupe cocircuit hyperplane normals up to sign.
  std::vector<Vector> normals;
  for (const auto& c : circuits) {
    Vector a = c.mu.normalized();
    bool dup = false;
    for (const auto& b : normals)
      if ((a - b).norm() <= 1e2 * epsilon() || (a + b).norm() <= 1e2 * epsilon()) dup = true;
    if (!dup) normals.push_back(a);
  }
  std::vector<PolyCone> cells = {dp.clir};
  for (const auto& a : normals) {
    std::vector<PolyCone> next;
    Matrix arow = a.transpose();
    for (const auto& cell : cells) {
      Matrix ip(cell.ineqs.rows() + 1, m), in(cell.ineqs.rows() + 1, m);
      ip.topRows(cell.ineqs.rows()) = cell.ineqs;
      ip.bottomRows(1) = arow;
      in.topRows(cell.ineqs.rows()) = cell.ineqs;
      in.bottomRows(1) = -arow;
      PolyCone plus = PolyCone::from_inequalities(ip, cell.eqs);
      PolyCone minus = PolyCone::from_inequalities(in, cell.eqs);
      bool p_full = plus.dim() == m, n_full = minus.dim() == m;
      if (p_full && n_full) {
        next.push_back(std::move(plus));
        next.push_back(std::move(minus));
      } else {
        next.push_back(cell);
      }
    }
    cells = std::move(next);
  }
  std::vector<AbstractFan> fans;
  for (const auto& cell : cells) {
    Vector p = cell.relint_point();
    if (interior_membership(p, dp) != Membership::IntIr) continue;
    fans.push_back(chamber_of(p, cfg, cache, dp));
  }
  return fans;
}

WallCrossResult wall_cross(const VectorConfiguration& cfg, const GaleDiagram& G,
                           const std::vector<Circuit>& circuits, const TypeCone& tc,
                           int facet_index) {
  if (facet_index < 0 || facet_index >= tc.cone.ineqs.rows()) throw NotAFacet();
  DomainPair dp = irredundancy_domain(cfg, G, circuits);
  SubconeCache cache;
  cache.G = &G;
  Vector nrm = tc.cone.ineqs.row(facet_index).transpose();
  std::vector<int> tight;
  for (int r = 0; r < tc.cone.rays.rows(); ++r)
    if (std::abs(nrm.dot(tc.cone.rays.row(r).transpose())) <= epsilon() * 10)
      tight.push_back(r);
  Vector z = Vector::Zero(tc.cone.ambient);
  for (int r : tight) z += tc.cone.rays.row(r).transpose();
  z.normalize();
  WallCrossResult res;
  Membership where = interior_membership(z, dp);
  if (where == Membership::IntIr) {
    auto adj = cross_facet(cfg, tc, facet_index, cache, dp);
    if (!adj) throw NotAFacet();
    res.flip = true;
    res.to = *adj;
    auto wall_set = [&](const AbstractFan& f) {
      std::set<std::vector<int>> s;
      for (const auto& w : fan_walls(cfg, f)) s.insert(w.sigma);
      return s;
    };
    auto w1 = wall_set(tc.fan), w2 = wall_set(*adj);
    for (const auto& s : w2)
      if (!w1.count(s)) res.gained.push_back(s);
    for (const auto& s : w1)
      if (!w2.count(s)) res.lost.push_back(s);
    return res;
  }
  // Boundary of clir: report the supporting circuit.
  for (int f = 0; f < dp.clir.ineqs.rows(); ++f) {
    if (std::abs(dp.clir.ineqs.row(f).dot(z)) <= epsilon() * 10) {
      auto it = dp.facet_circuits.find(f);
      if (it != dp.facet_circuits.end()) {
        res.flip = false;
        res.circuit = it->second;
        return res;
      }
    }
  }
  throw NotAFacet();
}

}  // namespace shapecone
