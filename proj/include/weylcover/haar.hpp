#pragma once

#include "weylcover/matrix.hpp"
#include "weylcover/rng.hpp"

namespace weylcover {

enum class CompactGroup { orthogonal, so2_rotation, unitary, torus };

// Draw from the invariant probability measure: QR of a Ginibre matrix with
// the triangular factor's diagonal normalized positive (Gram-Schmidt yields
// that normalization directly), a uniform rotation angle for SO(2), uniform
// phases for the torus.
DenseMatrix haar_sample(CompactGroup group, int n, RngStream& rng);

DenseMatrix rotation2(double angle);
// 3x3 rotation about the z-axis.
DenseMatrix rotation_z(double angle);

}  // namespace weylcover
