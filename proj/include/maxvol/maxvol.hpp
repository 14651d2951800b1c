#pragma once

// Umbrella header.

#include "maxvol/cnf.hpp"
#include "maxvol/combinatorics.hpp"
#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"
#include "maxvol/gadget.hpp"
#include "maxvol/instance.hpp"
#include "maxvol/io.hpp"
#include "maxvol/label_cover.hpp"
#include "maxvol/linalg.hpp"
#include "maxvol/random.hpp"
#include "maxvol/sampling.hpp"
#include "maxvol/solvers.hpp"
#include "maxvol/soundness.hpp"
#include "maxvol/toy_instances.hpp"
#include "maxvol/verifier.hpp"
#include "maxvol/volume.hpp"
