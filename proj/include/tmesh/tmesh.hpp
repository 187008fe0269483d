// Umbrella header.
#pragma once

#include "dimension.hpp"
#include "error.hpp"
#include "hierarchy.hpp"
#include "io.hpp"
#include "mesh.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "segments.hpp"
#include "smoothness.hpp"
#include "sparse_matrix.hpp"
