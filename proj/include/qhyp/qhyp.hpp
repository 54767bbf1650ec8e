#pragma once

#include "qhyp/collars.hpp"
#include "qhyp/io.hpp"
#include "qhyp/random.hpp"

// Umbrella header: quaternion arithmetic, the Hermitian module H^{n,1},
// J-unitary matrices and their eigen-data, cross-ratios, the discreteness
// tests and the conjugation iteration, canonical collars, and the
// length-spectrum machinery.
