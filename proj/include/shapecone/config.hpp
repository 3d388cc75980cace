#ifndef SHAPECONE_CONFIG_HPP
#define SHAPECONE_CONFIG_HPP

#include "shapecone/numeric.hpp"

#include <string>
#include <vector>

namespace shapecone {

struct RankDeficient : std::runtime_error {
  RankDeficient() : std::runtime_error("configuration does not span R^d") {}
};
struct BadConfiguration : std::runtime_error {
  explicit BadConfiguration(const std::string& what) : std::runtime_error(what) {}
};
struct TooLarge : std::runtime_error {
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};
struct ZeroDualVector : std::runtime_error {
  ZeroDualVector() : std::runtime_error("some dual vector vanishes (deleting it drops the rank)") {}
};

// Default desk-scale caps; operations refuse beyond them.
struct Caps {
  int max_n = 16;
  int max_d = 4;
  int max_codim = 9;    // n - d
  int max_circuit_n = 20;
};
Caps& caps();

// Facet-normal data: n row vectors spanning R^d, no zero rows, no row a
// positive multiple of another.
struct VectorConfiguration {
  Matrix V;                      // n x d
  bool unit_normalized = false;
  std::optional<RatMatrix> exactV;  // present iff built from rational data

  int n() const { return static_cast<int>(V.rows()); }
  int d() const { return static_cast<int>(V.cols()); }
  bool exact() const { return exactV.has_value(); }

  static VectorConfiguration make(const Matrix& V);
  static VectorConfiguration make(const RatMatrix& V);
};

struct GaleDiagram {
  Matrix Vbar;            // n x (n-d), rows are the dual vectors
  Matrix projection;      // (n-d) x n, equal to Vbar^T
  std::vector<int> section;  // B: d indices of a basis of V; h_B pinned to 0
  std::optional<RatMatrix> exactVbar;

  int n() const { return static_cast<int>(Vbar.rows()); }
  int m() const { return static_cast<int>(Vbar.cols()); }  // n - d

  Vector project(const Vector& h) const { return projection * h; }
  // The section lift: the unique h with h_B = 0 and project(h) = y.
  Vector lift(const Vector& y) const;
};

enum class CircuitKind { Positive, Hyperbolic, Mixed };

struct Circuit {
  std::vector<int> support;  // sorted index set C
  Vector lambda;             // length n, zero off support, sum lambda_i v_i = 0
  CircuitKind kind = CircuitKind::Mixed;
  int p = -1;                // the distinguished index for hyperbolic circuits
  Vector mu;                 // length n-d, lambda = Vbar * mu
};

struct AffineGalePoint {
  Vector point;  // in the affine hyperplane A
  bool black = false;
  int source = 0;
};

GaleDiagram gale_dual(const VectorConfiguration& cfg);
bool gale_involution_check(const VectorConfiguration& cfg);
std::vector<Circuit> enumerate_circuits(const VectorConfiguration& cfg, const GaleDiagram& G);
bool is_positively_spanning(const VectorConfiguration& cfg);
std::vector<AffineGalePoint> affine_gale(const GaleDiagram& G);

}  // namespace shapecone

#endif
