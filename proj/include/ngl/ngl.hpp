#pragma once

#include "ngl/cocycle.hpp"
#include "ngl/core.hpp"
#include "ngl/cusp.hpp"
#include "ngl/gluing.hpp"
#include "ngl/intmat.hpp"
#include "ngl/lattice.hpp"
#include "ngl/perm4.hpp"
#include "ngl/ptolemy.hpp"
#include "ngl/solver.hpp"
#include "ngl/triangulation.hpp"
