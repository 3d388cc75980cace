#ifndef SHAPECONE_BUILTINS_HPP
#define SHAPECONE_BUILTINS_HPP

#include "shapecone/config.hpp"

namespace shapecone {
namespace builtins {

// V = (e1, e2, e3, -e1, -e2, -e3); exact mode.
VectorConfiguration parallelepiped();
// Unit edge normals of a polygon with exterior angles alpha (sum 2 pi).
VectorConfiguration ngon(const std::vector<double>& alpha);
VectorConfiguration regular_ngon(int n);
// Polygon normals lifted to z = 0 plus the two horizontal caps.
VectorConfiguration prism(const std::vector<double>& alpha);
// Rows lambda u_i + mu e3 (i = 1..3) and lambda u_i - mu e3 with
// u_i the cube roots of unity in the plane and mu = sqrt(1 - lambda^2).
VectorConfiguration bipyramid(double lambda = 0.8);
VectorConfiguration dodecahedron();
VectorConfiguration perturbed_bipyramid(unsigned seed, double magnitude,
                                        double lambda = 0.8);

VectorConfiguration by_name(const std::string& name, unsigned seed = 1,
                            double magnitude = 0.05);

}  // namespace builtins
}  // namespace shapecone

#endif
