#pragma once

// Umbrella header for the geope core library.

#include "geope/csv.hpp"
#include "geope/derivatives.hpp"
#include "geope/experiment.hpp"
#include "geope/geodesic_optimizer.hpp"
#include "geope/geometry.hpp"
#include "geope/grape.hpp"
#include "geope/hyperopt.hpp"
#include "geope/linalg.hpp"
#include "geope/model.hpp"
#include "geope/parallel.hpp"
#include "geope/pauli.hpp"
#include "geope/rng.hpp"
#include "geope/trace.hpp"
#include "geope/types.hpp"
