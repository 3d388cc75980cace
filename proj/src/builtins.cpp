#include "shapecone/builtins.hpp"

#include <cmath>
#include <random>

namespace shapecone {
namespace builtins {

VectorConfiguration parallelepiped() {
  RatMatrix V(6, 3);
  V.setZero();
  V(0, 0) = 1; V(1, 1) = 1; V(2, 2) = 1;
  V(3, 0) = -1; V(4, 1) = -1; V(5, 2) = -1;
  return VectorConfiguration::make(V);
}

VectorConfiguration ngon(const std::vector<double>& alpha) {
  const int n = static_cast<int>(alpha.size());
  Matrix V(n, 2);
  double theta = 0;
  for (int i = 0; i < n; ++i) {
    V(i, 0) = std::cos(theta);
    V(i, 1) = std::sin(theta);
    theta += alpha[i];
  }
  return VectorConfiguration::make(V);
}

VectorConfiguration regular_ngon(int n) {
  return ngon(std::vector<double>(n, 2.0 * M_PI / n));
}

VectorConfiguration prism(const std::vector<double>& alpha) {
  const int n = static_cast<int>(alpha.size());
  Matrix V(n + 2, 3);
  V.setZero();
  double theta = 0;
  for (int i = 0; i < n; ++i) {
    V(i, 0) = std::cos(theta);
    V(i, 1) = std::sin(theta);
    theta += alpha[i];
  }
  V(n, 2) = 1;
  V(n + 1, 2) = -1;
  return VectorConfiguration::make(V);
}

VectorConfiguration bipyramid(double lambda) {
  double mu = std::sqrt(1.0 - lambda * lambda);
  Matrix V(6, 3);
  for (int i = 0; i < 3; ++i) {
    double t = 2.0 * M_PI * i / 3.0;
    V(i, 0) = lambda * std::cos(t);
    V(i, 1) = lambda * std::sin(t);
    V(i, 2) = mu;
    V(i + 3, 0) = lambda * std::cos(t);
    V(i + 3, 1) = lambda * std::sin(t);
    V(i + 3, 2) = -mu;
  }
  return VectorConfiguration::make(V);
}

VectorConfiguration dodecahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Matrix V(12, 3);
  int r = 0;
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0}) {
      V.row(r++) << 0.0, s1, s2 * phi;
      V.row(r++) << s1, s2 * phi, 0.0;
      V.row(r++) << s2 * phi, 0.0, s1;
    }
  for (int i = 0; i < 12; ++i) V.row(i).normalize();
  return VectorConfiguration::make(V);
}

VectorConfiguration perturbed_bipyramid(unsigned seed, double magnitude, double lambda) {
  VectorConfiguration base = bipyramid(lambda);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Matrix V = base.V;
  for (int i = 0; i < V.rows(); ++i) {
    Vector delta(3);
    for (int j = 0; j < 3; ++j) delta(j) = U(rng);
    V.row(i) += magnitude * delta.transpose();
    V.row(i).normalize();
  }
  return VectorConfiguration::make(V);
}

VectorConfiguration by_name(const std::string& name, unsigned seed, double magnitude) {
  if (name == "parallelepiped") return parallelepiped();
  if (name == "bipyramid") return bipyramid();
  if (name == "dodecahedron") return dodecahedron();
  if (name == "pentagon") return regular_ngon(5);
  if (name == "hexagon") return regular_ngon(6);
  if (name == "prism") return prism(std::vector<double>(5, 2.0 * M_PI / 5));
  if (name == "perturbed-bipyramid") return perturbed_bipyramid(seed, magnitude);
  if (name.rfind("ngon", 0) == 0) {
    int n = std::stoi(name.substr(4));
    return regular_ngon(n);
  }
  if (name.rfind("prism", 0) == 0 && name.size() > 5) {
    int n = std::stoi(name.substr(5));
    return prism(std::vector<double>(n, 2.0 * M_PI / n));
  }
  throw BadConfiguration("unknown builtin: " + name);
}

}  // namespace builtins
}  // namespace shapecone
